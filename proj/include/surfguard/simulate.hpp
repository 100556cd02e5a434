#pragma once

// Emulates a distant observer by shrinking the image with area averaging:
// neighbouring pixels that the eye cannot resolve merge into their mean.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "surfguard/error.hpp"
#include "surfguard/geometry.hpp"
#include "surfguard/image.hpp"
#include "surfguard/parallel.hpp"

namespace surfguard {

namespace detail {

struct AreaTap {
  int first = 0;                // first source index
  std::vector<double> weights;  // coverage of each source sample, in source pixels
};

// Source coverage for each of `out_n` destination samples spanning `in_n`.
inline std::vector<AreaTap> area_taps(int in_n, int out_n) {
  const double scale = static_cast<double>(in_n) / out_n;
  std::vector<AreaTap> taps(static_cast<std::size_t>(out_n));
  for (int o = 0; o < out_n; ++o) {
    const double a = o * scale;
    const double b = (o + 1 == out_n) ? static_cast<double>(in_n) : (o + 1) * scale;
    const int first = static_cast<int>(std::floor(a));
    const int last = std::min(in_n - 1, static_cast<int>(std::ceil(b)) - 1);
    AreaTap& tap = taps[static_cast<std::size_t>(o)];
    tap.first = first;
    for (int i = first; i <= last; ++i) {
      const double cover = std::min<double>(i + 1, b) - std::max<double>(i, a);
      tap.weights.push_back(cover > 0.0 ? cover : 0.0);
    }
  }
  return taps;
}

}  // namespace detail

inline int downscaled_extent(int n, double factor) {
  return static_cast<int>(std::floor(n / factor + 0.5));
}

// Box (area) resampling to round(w / factor) x round(h / factor); each output
// sample is the coverage-weighted mean of its source footprint.
inline ImageBuffer downscale_view(const ImageBuffer& img, double factor, Exec exec = {}) {
  if (!(factor > 1.0) || !std::isfinite(factor)) {
    throw DomainError("downscale factor must be > 1, got " + std::to_string(factor));
  }
  const int out_w = downscaled_extent(img.width(), factor);
  const int out_h = downscaled_extent(img.height(), factor);
  if (out_w < 1 || out_h < 1) {
    throw DomainError("downscale by " + std::to_string(factor) + " leaves an empty image (" +
                      std::to_string(img.width()) + "x" + std::to_string(img.height()) + ")");
  }
  const auto xtaps = detail::area_taps(img.width(), out_w);
  const auto ytaps = detail::area_taps(img.height(), out_h);
  ImageBuffer out(out_w, out_h);

  parallel_for(out_h, exec, [&](int oy0, int oy1) {
    std::vector<double> acc(static_cast<std::size_t>(out_w) * kChannels);
    for (int oy = oy0; oy < oy1; ++oy) {
      std::fill(acc.begin(), acc.end(), 0.0);
      const auto& ty = ytaps[static_cast<std::size_t>(oy)];
      double wy_total = 0.0;
      for (std::size_t j = 0; j < ty.weights.size(); ++j) {
        const double wy = ty.weights[j];
        wy_total += wy;
        const auto row = img.row(ty.first + static_cast<int>(j));
        for (int ox = 0; ox < out_w; ++ox) {
          const auto& tx = xtaps[static_cast<std::size_t>(ox)];
          double s[kChannels] = {0.0, 0.0, 0.0};
          for (std::size_t i = 0; i < tx.weights.size(); ++i) {
            const std::size_t src = (static_cast<std::size_t>(tx.first) + i) * kChannels;
            const double wx = tx.weights[i];
            s[0] += wx * row[src];
            s[1] += wx * row[src + 1];
            s[2] += wx * row[src + 2];
          }
          double* a = acc.data() + static_cast<std::size_t>(ox) * kChannels;
          a[0] += wy * s[0];
          a[1] += wy * s[1];
          a[2] += wy * s[2];
        }
      }
      auto dst = out.row(oy);
      for (int ox = 0; ox < out_w; ++ox) {
        double wx_total = 0.0;
        for (double w : xtaps[static_cast<std::size_t>(ox)].weights) wx_total += w;
        const double area = wx_total * wy_total;
        for (int c = 0; c < kChannels; ++c) {
          const std::size_t i = static_cast<std::size_t>(ox) * kChannels + static_cast<std::size_t>(c);
          dst[i] = clamp_round(acc[i] / area);
        }
      }
    }
  });
  return out;
}

// What an observer at surfer_d sees of content designed for a user at
// user_d, given the display size.
inline ImageBuffer simulate_surfer(const ImageBuffer& img, double user_d, double surfer_d,
                                   const DisplaySpec& display, Exec exec = {}) {
  return downscale_view(img, downscale_factor(user_d, surfer_d, display), exec);
}

}  // namespace surfguard
