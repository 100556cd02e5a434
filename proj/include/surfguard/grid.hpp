#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "surfguard/error.hpp"

namespace surfguard {

// Binary checkerboard of square cells. bit(x, y) = (x/g + y/g) mod 2, so the
// top-left cell is 0. Cells cut by the right/bottom edge keep the bit of
// their block coordinates.
class GridMask {
 public:
  GridMask(int width, int height, int cell_size) : width_(width), height_(height), cell_(cell_size) {
    if (width < 1 || height < 1) throw DomainError("grid dimensions must be >= 1");
    if (cell_size < 1) {
      throw DomainError("grid cell size must be >= 1, got " + std::to_string(cell_size));
    }
    // Every row is one of two patterns: even or odd block row.
    const auto w = static_cast<std::size_t>(width);
    std::vector<std::uint8_t> even(w), odd(w);
    for (std::size_t x = 0; x < w; ++x) {
      even[x] = static_cast<std::uint8_t>((x / static_cast<std::size_t>(cell_size)) & 1);
      odd[x] = static_cast<std::uint8_t>(even[x] ^ 1);
    }
    bits_.resize(w * static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) {
      const auto& src = (y / cell_size) % 2 == 0 ? even : odd;
      std::copy(src.begin(), src.end(), bits_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(y) * w));
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int cell_size() const noexcept { return cell_; }

  std::uint8_t bit(int x, int y) const noexcept {
    return bits_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                 static_cast<std::size_t>(x)];
  }

  std::span<const std::uint8_t> row(int y) const noexcept {
    return {bits_.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(width_),
            static_cast<std::size_t>(width_)};
  }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

 private:
  int width_;
  int height_;
  int cell_;
  std::vector<std::uint8_t> bits_;
};

inline GridMask generate_grid(int width, int height, int cell_size) {
  return GridMask(width, height, cell_size);
}

}  // namespace surfguard
