#pragma once

// The protection transform. On the checkerboard's 1-cells each sample is
// replaced by the complement y = sqrt(2 t^2 - x^2), so that an original
// sample x and its rewritten neighbour combine (root mean square) to the
// target t when the eye can no longer separate them.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "surfguard/error.hpp"
#include "surfguard/grid.hpp"
#include "surfguard/image.hpp"
#include "surfguard/parallel.hpp"
#include "surfguard/target.hpp"

namespace surfguard {

enum class Preset { full, strong, moderate, weak, custom };

struct PresetEntry {
  Preset preset;
  std::string_view name;
  double sigma;
  int contrast;
};

inline constexpr std::array<PresetEntry, 4> kPresets{{
    {Preset::full, "full", 24.0, 80},
    {Preset::strong, "strong", 20.0, 100},
    {Preset::moderate, "moderate", 16.0, 115},
    {Preset::weak, "weak", 8.0, 127},
}};

inline std::string_view to_string(Preset p) noexcept {
  for (const auto& e : kPresets) {
    if (e.preset == p) return e.name;
  }
  return "custom";
}

inline std::string preset_names() {
  std::string names;
  for (const auto& e : kPresets) {
    if (!names.empty()) names += ", ";
    names += e.name;
  }
  return names;
}

struct ProtectParams {
  TargetSpec target;
  int grid = 1;
  Preset preset = Preset::custom;

  void validate() const {
    target.validate();
    if (grid < 1) throw DomainError("grid must be >= 1, got " + std::to_string(grid));
    if (preset != Preset::custom) {
      for (const auto& e : kPresets) {
        if (e.preset == preset &&
            (target.mode != TargetMode::blur || target.sigma != e.sigma ||
             target.contrast_preset != e.contrast)) {
          throw DomainError("preset '" + std::string(e.name) +
                            "' does not match its sigma/contrast values");
        }
      }
    }
  }
};

// Default grid size 1, blur mode, values from the preset table.
inline ProtectParams preset_params(std::string_view name) {
  for (const auto& e : kPresets) {
    if (e.name == name) {
      ProtectParams p;
      p.target.mode = TargetMode::blur;
      p.target.sigma = e.sigma;
      p.target.contrast_preset = e.contrast;
      p.grid = 1;
      p.preset = e.preset;
      return p;
    }
  }
  throw DomainError("unknown preset '" + std::string(name) + "' (valid: " + preset_names() + ")");
}

inline ProtectParams default_params() { return preset_params("weak"); }

namespace detail {

// complement[x * 256 + t] for every (original, target) sample pair.
inline const std::vector<std::uint8_t>& complement_table() {
  static const std::vector<std::uint8_t> table = [] {
    std::vector<std::uint8_t> t(256 * 256);
    for (int x = 0; x < 256; ++x) {
      for (int tv = 0; tv < 256; ++tv) {
        const double radicand = 2.0 * tv * tv - static_cast<double>(x) * x;
        t[static_cast<std::size_t>(x) * 256 + static_cast<std::size_t>(tv)] =
            clamp_round(std::sqrt(std::max(0.0, radicand)));
      }
    }
    return t;
  }();
  return table;
}

}  // namespace detail

// Single-sample form of the transform, for 1-cells.
inline std::uint8_t complement_sample(std::uint8_t original, std::uint8_t target) noexcept {
  return detail::complement_table()[static_cast<std::size_t>(original) * 256 + target];
}

// 0-cells keep the original; 1-cells get the complement of original against
// target. A negative radicand (target too dark to balance the original) is
// clamped to 0 before the root; results above 255 are clipped.
inline ImageBuffer protect(const ImageBuffer& img, const GridMask& grid, const ImageBuffer& targ,
                           Exec exec = {}) {
  require_same_size(img, targ, "protect");
  if (grid.width() != img.width() || grid.height() != img.height()) {
    throw DomainError("protect: grid " + std::to_string(grid.width()) + "x" +
                      std::to_string(grid.height()) + " does not match image " +
                      std::to_string(img.width()) + "x" + std::to_string(img.height()));
  }
  const std::uint8_t* table = detail::complement_table().data();
  ImageBuffer out(img.width(), img.height());
  const int width = img.width();

  parallel_for(img.height(), exec, [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      const std::uint8_t* src = img.row(y).data();
      const std::uint8_t* tgt = targ.row(y).data();
      const std::uint8_t* bits = grid.row(y).data();
      std::uint8_t* dst = out.row(y).data();
      for (int x = 0; x < width; ++x) {
        const std::size_t i = static_cast<std::size_t>(x) * kChannels;
        if (bits[x]) {
          for (std::size_t c = 0; c < kChannels; ++c) {
            dst[i + c] = table[static_cast<std::size_t>(src[i + c]) * 256 + tgt[i + c]];
          }
        } else {
          dst[i] = src[i];
          dst[i + 1] = src[i + 1];
          dst[i + 2] = src[i + 2];
        }
      }
    }
  });
  return out;
}

struct ProtectOutput {
  ImageBuffer protected_image;
  ImageBuffer target;  // degraded and contrast-adjusted
};

// Degrade, optionally reduce contrast on both original and target, build
// the checkerboard, then apply the complement transform.
inline ProtectOutput protect_pipeline(const ImageBuffer& img, const ProtectParams& params, Exec exec = {}) {
  params.validate();
  ImageBuffer target = degrade(img, params.target, exec);
  const bool contrast = params.target.contrast_preset != kContrastIdentity;
  std::optional<ImageBuffer> adjusted;
  if (contrast) {
    target = adjust_contrast(target, params.target.contrast_preset, exec);
    adjusted = adjust_contrast(img, params.target.contrast_preset, exec);
  }
  const GridMask mask = generate_grid(img.width(), img.height(), params.grid);
  ImageBuffer out = protect(contrast ? *adjusted : img, mask, target, exec);
  return {std::move(out), std::move(target)};
}

inline ImageBuffer protect_with_params(const ImageBuffer& img, const ProtectParams& params, Exec exec = {}) {
  return protect_pipeline(img, params, exec).protected_image;
}

}  // namespace surfguard
