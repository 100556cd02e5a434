#pragma once

// Viewing-geometry math: how large a screen or a grid cell appears to an
// observer, and how much smaller it appears to someone further away.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "surfguard/error.hpp"

namespace surfguard {

inline constexpr double kEyeResolvingPowerDeg = 0.0167;

struct ViewingGeometry {
  double distance_in = 10.0;  // viewer to screen, inches
  double ppi = 460.0;         // display pixel density
  double font_term = 1.0;     // dimensionless font scale, 1.0 = reference font
  double resolving_power_deg = kEyeResolvingPowerDeg;

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be > 0, got " + std::to_string(v));
      }
    };
    positive(distance_in, "distance");
    positive(ppi, "ppi");
    positive(font_term, "font-term");
    positive(resolving_power_deg, "alpha");
  }
};

struct DisplaySpec {
  double diagonal_in = 5.78;
  int width_px = 1170;
  int height_px = 2532;

  void validate() const {
    if (!(diagonal_in > 0.0) || !std::isfinite(diagonal_in)) {
      throw DomainError("display diagonal must be > 0");
    }
    if (width_px < 1 || height_px < 1) {
      throw DomainError("display pixel dimensions must be >= 1");
    }
  }
};

inline double degrees(double radians) noexcept { return radians * 180.0 / std::numbers::pi; }
inline double radians(double degrees) noexcept { return degrees * std::numbers::pi / 180.0; }

// Apparent angular size in degrees of an object seen at a distance.
inline double angular_diameter(double object_size_in, double distance_in) {
  if (!(object_size_in > 0.0) || !(distance_in > 0.0)) {
    throw DomainError("angular_diameter: size and distance must be > 0");
  }
  return degrees(2.0 * std::atan(object_size_in / (2.0 * distance_in)));
}

struct GridSize {
  double real_px = 0.0;
  int pixels = 1;  // max(1, round(real_px))
};

// Largest checkerboard cell (in pixels) whose angular size at the intended
// viewer's distance stays below the eye's resolving power, scaled by the font
// term.
inline GridSize optimal_grid_size(const ViewingGeometry& geom) {
  geom.validate();
  const double g = geom.ppi * 2.0 * geom.distance_in *
                   std::tan(radians(geom.resolving_power_deg) / 2.0) * geom.font_term;
  return {g, std::max(1, static_cast<int>(std::floor(g + 0.5)))};
}

// Linear shrink factor between what the user and a more distant observer
// see, rounded to two decimals.
inline double downscale_factor(double user_distance_in, double surfer_distance_in,
                               const DisplaySpec& display) {
  display.validate();
  if (!(user_distance_in > 0.0) || !(surfer_distance_in > user_distance_in)) {
    throw DomainError("downscale_factor: need surfer distance > user distance > 0 (got user=" +
                      std::to_string(user_distance_in) +
                      ", surfer=" + std::to_string(surfer_distance_in) + ")");
  }
  const double near = angular_diameter(display.diagonal_in, user_distance_in);
  const double far = angular_diameter(display.diagonal_in, surfer_distance_in);
  return std::round(near / far * 100.0) / 100.0;
}

}  // namespace surfguard
