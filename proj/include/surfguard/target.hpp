#pragma once

// Builds the degraded image a distant observer should end up perceiving:
// Gaussian blur (text, UIs) or block pixelation (photos, video), plus an
// optional contrast reduction toward mid-gray.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "surfguard/error.hpp"
#include "surfguard/image.hpp"
#include "surfguard/parallel.hpp"

namespace surfguard {

enum class TargetMode { blur, pixelate };

inline const char* to_string(TargetMode m) noexcept {
  return m == TargetMode::blur ? "blur" : "pixelate";
}

inline constexpr int kContrastIdentity = 127;

struct TargetSpec {
  TargetMode mode = TargetMode::blur;
  double sigma = 8.0;  // blur mode
  int blocks = 16;     // pixelate mode, count along the shorter side
  int contrast_preset = kContrastIdentity;

  void validate() const {
    if (mode == TargetMode::blur && !(sigma > 0.0 && std::isfinite(sigma))) {
      throw DomainError("sigma must be > 0, got " + std::to_string(sigma));
    }
    if (mode == TargetMode::pixelate && blocks < 1) {
      throw DomainError("blocks must be >= 1, got " + std::to_string(blocks));
    }
    if (contrast_preset < 0 || contrast_preset > kContrastIdentity) {
      throw DomainError("contrast must be in [0,127], got " + std::to_string(contrast_preset));
    }
  }
};

// Mirror index into [0, n) without repeating the edge sample
// (... c b | a b c | b a ...), periodic for offsets wider than the image.
inline int reflect101(int i, int n) noexcept {
  if (n == 1) return 0;
  const int period = 2 * n - 2;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

inline int gaussian_radius(double sigma) noexcept {
  return static_cast<int>(std::ceil(3.0 * sigma));
}

// Normalized 1-D Gaussian, returned as the half kernel [w0, w1, ..., wr].
inline std::vector<double> gaussian_half_kernel(double sigma) {
  const int r = gaussian_radius(sigma);
  std::vector<double> half(static_cast<std::size_t>(r) + 1);
  double sum = 0.0;
  for (int t = 0; t <= r; ++t) {
    half[static_cast<std::size_t>(t)] = std::exp(-(double(t) * t) / (2.0 * sigma * sigma));
    sum += t == 0 ? half[0] : 2.0 * half[static_cast<std::size_t>(t)];
  }
  for (double& w : half) w /= sum;
  return half;
}

// Separable Gaussian blur per channel, kernel radius ceil(3 sigma),
// reflect-101 borders. Each output row is computed independently (vertical
// pass into a float row, then horizontal pass), so results do not depend on
// the thread count.
inline ImageBuffer gaussian_blur(const ImageBuffer& img, double sigma, Exec exec = {}) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("gaussian_blur: sigma must be > 0, got " + std::to_string(sigma));
  }
  const int width = img.width();
  const int height = img.height();
  const int r = gaussian_radius(sigma);
  const auto half_d = gaussian_half_kernel(sigma);
  std::vector<float> half(half_d.begin(), half_d.end());

  const std::size_t stride = img.row_stride();
  const std::size_t pad = static_cast<std::size_t>(r) * kChannels;
  constexpr std::size_t kStrip = 1536;  // samples per strip
  ImageBuffer out(width, height);

  parallel_for(height, exec, [&](int y0, int y1) {
    std::vector<float> padded(stride + 2 * pad);
    std::vector<float> acc(stride);
    float* __restrict col = padded.data() + pad;
    float* __restrict sum = acc.data();
    const float* __restrict w = half.data();

    for (int y = y0; y < y1; ++y) {
      // Vertical pass. Both passes run in strips so the working set stays in
      // cache on wide images.
      for (std::size_t s0 = 0; s0 < stride; s0 += kStrip) {
        const std::size_t s1 = std::min(stride, s0 + kStrip);
        {
          const std::uint8_t* __restrict c = img.row(y).data();
          const float w0 = w[0];
          for (std::size_t i = s0; i < s1; ++i) col[i] = w0 * static_cast<float>(c[i]);
        }
        for (int t = 1; t <= r; ++t) {
          const std::uint8_t* __restrict a = img.row(reflect101(y - t, height)).data();
          const std::uint8_t* __restrict b = img.row(reflect101(y + t, height)).data();
          const float wt = w[t];
          for (std::size_t i = s0; i < s1; ++i) {
            col[i] += wt * static_cast<float>(static_cast<int>(a[i]) + static_cast<int>(b[i]));
          }
        }
      }
      // Mirror the borders of the column sums for the horizontal pass.
      for (int p = 1; p <= r; ++p) {
        const std::size_t left = static_cast<std::size_t>(reflect101(-p, width)) * kChannels;
        const std::size_t right = static_cast<std::size_t>(reflect101(width - 1 + p, width)) * kChannels;
        for (int c = 0; c < kChannels; ++c) {
          col[-static_cast<std::ptrdiff_t>(p) * kChannels + c] = col[left + static_cast<std::size_t>(c)];
          col[(static_cast<std::size_t>(width) - 1 + static_cast<std::size_t>(p)) * kChannels +
              static_cast<std::size_t>(c)] = col[right + static_cast<std::size_t>(c)];
        }
      }
      // Horizontal pass; a pixel step is kChannels floats in the row.
      for (std::size_t s0 = 0; s0 < stride; s0 += kStrip) {
        const std::size_t s1 = std::min(stride, s0 + kStrip);
        {
          const float w0 = w[0];
          for (std::size_t i = s0; i < s1; ++i) sum[i] = w0 * col[i];
        }
        for (int t = 1; t <= r; ++t) {
          const float* __restrict a = col - static_cast<std::ptrdiff_t>(t) * kChannels;
          const float* __restrict b = col + static_cast<std::ptrdiff_t>(t) * kChannels;
          const float wt = w[t];
          for (std::size_t i = s0; i < s1; ++i) sum[i] += wt * (a[i] + b[i]);
        }
      }
      std::uint8_t* __restrict dst = out.row(y).data();
      for (std::size_t i = 0; i < stride; ++i) dst[i] = clamp_round(sum[i]);
    }
  });
  return out;
}

namespace detail {

// Boundaries splitting n samples into `parts` nearly equal runs.
inline std::vector<int> block_edges(int n, int parts) {
  std::vector<int> edges(static_cast<std::size_t>(parts) + 1);
  for (int k = 0; k <= parts; ++k) {
    edges[static_cast<std::size_t>(k)] =
        static_cast<int>(static_cast<long long>(k) * n / parts);
  }
  return edges;
}

}  // namespace detail

struct BlockLayout {
  std::vector<int> x_edges;
  std::vector<int> y_edges;
  int blocks_x() const noexcept { return static_cast<int>(x_edges.size()) - 1; }
  int blocks_y() const noexcept { return static_cast<int>(y_edges.size()) - 1; }
};

// `blocks` runs along the shorter side; the longer side gets the count that
// keeps blocks closest to square.
inline BlockLayout pixelate_layout(int width, int height, int blocks) {
  const int short_side = std::min(width, height);
  const int long_side = std::max(width, height);
  if (blocks < 1 || blocks > short_side) {
    throw DomainError("pixelate: blocks must be in [1, " + std::to_string(short_side) +
                      "], got " + std::to_string(blocks));
  }
  const long long scaled = static_cast<long long>(long_side) * blocks;
  int long_blocks = static_cast<int>((2 * scaled + short_side) / (2LL * short_side));
  long_blocks = std::clamp(long_blocks, 1, long_side);
  const bool wide = width >= height;
  BlockLayout layout;
  layout.x_edges = detail::block_edges(width, wide ? long_blocks : blocks);
  layout.y_edges = detail::block_edges(height, wide ? blocks : long_blocks);
  return layout;
}

// Replaces each block with its per-channel mean, rounded half-up.
inline ImageBuffer pixelate(const ImageBuffer& img, int blocks, Exec exec = {}) {
  const BlockLayout layout = pixelate_layout(img.width(), img.height(), blocks);
  ImageBuffer out(img.width(), img.height());

  parallel_for(layout.blocks_y(), exec, [&](int by0, int by1) {
    std::vector<std::uint64_t> sums(static_cast<std::size_t>(layout.blocks_x()) * kChannels);
    for (int by = by0; by < by1; ++by) {
      const int y0 = layout.y_edges[static_cast<std::size_t>(by)];
      const int y1 = layout.y_edges[static_cast<std::size_t>(by) + 1];
      std::fill(sums.begin(), sums.end(), 0);
      for (int y = y0; y < y1; ++y) {
        const auto row = img.row(y);
        for (int bx = 0; bx < layout.blocks_x(); ++bx) {
          const int x0 = layout.x_edges[static_cast<std::size_t>(bx)];
          const int x1 = layout.x_edges[static_cast<std::size_t>(bx) + 1];
          std::uint64_t* s = sums.data() + static_cast<std::size_t>(bx) * kChannels;
          for (int x = x0; x < x1; ++x) {
            const std::size_t i = static_cast<std::size_t>(x) * kChannels;
            s[0] += row[i];
            s[1] += row[i + 1];
            s[2] += row[i + 2];
          }
        }
      }
      for (int bx = 0; bx < layout.blocks_x(); ++bx) {
        const int x0 = layout.x_edges[static_cast<std::size_t>(bx)];
        const int x1 = layout.x_edges[static_cast<std::size_t>(bx) + 1];
        const std::uint64_t n = static_cast<std::uint64_t>(x1 - x0) * static_cast<std::uint64_t>(y1 - y0);
        std::array<std::uint8_t, kChannels> mean{};
        for (int c = 0; c < kChannels; ++c) {
          // floor(sum / n + 1/2) in integers
          mean[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(
              (2 * sums[static_cast<std::size_t>(bx) * kChannels + static_cast<std::size_t>(c)] + n) / (2 * n));
        }
        for (int y = y0; y < y1; ++y) {
          for (int x = x0; x < x1; ++x) out.set_pixel(x, y, mean[0], mean[1], mean[2]);
        }
      }
    }
  });
  return out;
}

struct ContrastCoefficients {
  double gain = 1.0;    // multiplies the sample
  double offset = 0.0;  // added after the gain
};

// Linear contrast map around 127. The preset is shifted so 127 is the
// identity (c = 0) and lower presets shrink the range toward 127.
inline ContrastCoefficients contrast_coefficients(int preset) {
  if (preset < 0 || preset > kContrastIdentity) {
    throw DomainError("contrast preset must be in [0,127], got " + std::to_string(preset));
  }
  const double c = static_cast<double>(preset - kContrastIdentity);
  const double gain = 131.0 * (c + 127.0) / (127.0 * (131.0 - c));
  return {gain, 127.0 * (1.0 - gain)};
}

inline std::array<std::uint8_t, 256> contrast_lut(int preset) {
  const ContrastCoefficients k = contrast_coefficients(preset);
  std::array<std::uint8_t, 256> lut{};
  for (int v = 0; v < 256; ++v) {
    lut[static_cast<std::size_t>(v)] = clamp_round(static_cast<double>(v) * k.gain + k.offset);
  }
  return lut;
}

inline ImageBuffer adjust_contrast(const ImageBuffer& img, int preset, Exec exec = {}) {
  const auto lut = contrast_lut(preset);
  ImageBuffer out(img.width(), img.height());
  parallel_for(img.height(), exec, [&](int y0, int y1) {
    for (int y = y0; y < y1; ++y) {
      const auto src = img.row(y);
      auto dst = out.row(y);
      for (std::size_t i = 0; i < src.size(); ++i) dst[i] = lut[src[i]];
    }
  });
  return out;
}

// Blur or pixelate per TargetSpec; contrast is applied separately.
inline ImageBuffer degrade(const ImageBuffer& img, const TargetSpec& spec, Exec exec = {}) {
  spec.validate();
  return spec.mode == TargetMode::blur ? gaussian_blur(img, spec.sigma, exec)
                                       : pixelate(img, spec.blocks, exec);
}

}  // namespace surfguard
