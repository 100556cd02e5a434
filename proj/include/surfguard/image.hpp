#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "surfguard/error.hpp"

namespace surfguard {

inline constexpr int kChannels = 3;

// Row-major interleaved RGB raster with 8-bit samples.
//
// Samples are uint8_t so the [0, 255] invariant holds by construction; every
// kernel that works in real arithmetic goes through clamp_round() on the way
// back in.
class ImageBuffer {
 public:
  ImageBuffer() = default;

  ImageBuffer(int width, int height, std::uint8_t fill = 0)
      : width_(checked_dim(width, "width")),
        height_(checked_dim(height, "height")),
        data_(sample_count(width, height), fill) {}

  ImageBuffer(int width, int height, std::vector<std::uint8_t> data)
      : width_(checked_dim(width, "width")),
        height_(checked_dim(height, "height")),
        data_(std::move(data)) {
    if (data_.size() != sample_count(width_, height_)) {
      throw DomainError("image data length " + std::to_string(data_.size()) +
                        " does not match " + std::to_string(width_) + "x" +
                        std::to_string(height_) + "x3");
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }
  std::size_t row_stride() const noexcept {
    return static_cast<std::size_t>(width_) * kChannels;
  }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  std::span<const std::uint8_t> row(int y) const noexcept {
    return {data_.data() + static_cast<std::size_t>(y) * row_stride(), row_stride()};
  }
  std::span<std::uint8_t> row(int y) noexcept {
    return {data_.data() + static_cast<std::size_t>(y) * row_stride(), row_stride()};
  }

  std::uint8_t at(int x, int y, int c) const noexcept {
    return data_[index(x, y, c)];
  }
  std::uint8_t& at(int x, int y, int c) noexcept { return data_[index(x, y, c)]; }

  void set_pixel(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
    const std::size_t i = index(x, y, 0);
    data_[i] = r;
    data_[i + 1] = g;
    data_[i + 2] = b;
  }

  bool same_size(const ImageBuffer& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

  static std::size_t sample_count(int width, int height) noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * kChannels;
  }

 private:
  static int checked_dim(int v, const char* name) {
    if (v < 1) {
      throw DomainError(std::string("image ") + name + " must be >= 1, got " +
                        std::to_string(v));
    }
    return v;
  }

  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * kChannels + static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// Real-valued pixel used in intermediate arithmetic. Never stored in an
// ImageBuffer without clamp_round().
struct PixelF {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

// Round half-up, then clamp into the sample range.
inline std::uint8_t clamp_round(double v) noexcept {
  const double r = std::floor(v + 0.5);
  if (!(r > 0.0)) return 0;  // also catches NaN
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

inline std::uint8_t clamp_round(float v) noexcept {
  const float r = std::floor(v + 0.5f);
  if (!(r > 0.0f)) return 0;
  if (r >= 255.0f) return 255;
  return static_cast<std::uint8_t>(r);
}

inline void require_same_size(const ImageBuffer& a, const ImageBuffer& b, const char* what) {
  if (!a.same_size(b)) {
    throw DomainError(std::string(what) + ": dimension mismatch " +
                      std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                      " vs " + std::to_string(b.width()) + "x" +
                      std::to_string(b.height()));
  }
}

}  // namespace surfguard
