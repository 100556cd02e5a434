#pragma once

// Resolution of user-supplied protection settings (CLI flags or the JSON
// body of POST /protect) into ProtectParams.
//
// JSON schema:
//   {"preset": "full|strong|moderate|weak",      (optional)
//    "mode": "blur|pixelate", "sigma": 12.0, "blocks": 16,
//    "contrast": 0..127, "grid": 1}
// A preset fixes mode, sigma and contrast; only "grid" may accompany it.
// With neither a preset nor any field, the weak preset applies.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "surfguard/error.hpp"
#include "surfguard/geometry.hpp"
#include "surfguard/shield.hpp"

namespace surfguard::app {

// Invalid user input, tagged with the offending field/flag name.
class ParamError : public DomainError {
 public:
  ParamError(std::string field, const std::string& what) : DomainError(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct ParamInput {
  std::optional<std::string> preset;
  std::optional<std::string> mode;
  std::optional<double> sigma;
  std::optional<int> blocks;
  std::optional<int> contrast;
  std::optional<int> grid;

  ProtectParams resolve() const {
    ProtectParams p;
    if (preset) {
      const char* conflict = mode ? "mode" : sigma ? "sigma" : blocks ? "blocks" : contrast ? "contrast" : nullptr;
      if (conflict != nullptr) {
        throw ParamError(conflict, std::string("'") + conflict + "' cannot be combined with preset '" +
                                       *preset + "'");
      }
      try {
        p = preset_params(*preset);
      } catch (const DomainError& e) {
        throw ParamError("preset", e.what());
      }
    } else if (!mode && !sigma && !blocks && !contrast) {
      p = default_params();
    } else {
      p.preset = Preset::custom;
      p.target.contrast_preset = contrast.value_or(kContrastIdentity);
      if (mode && *mode == "blur") {
        p.target.mode = TargetMode::blur;
      } else if (mode && *mode == "pixelate") {
        p.target.mode = TargetMode::pixelate;
      } else if (mode) {
        throw ParamError("mode", "mode must be 'blur' or 'pixelate', got '" + *mode + "'");
      } else {
        p.target.mode = blocks && !sigma ? TargetMode::pixelate : TargetMode::blur;
      }
      if (p.target.mode == TargetMode::blur && blocks) {
        throw ParamError("blocks", "'blocks' only applies to pixelate mode");
      }
      if (p.target.mode == TargetMode::pixelate && sigma) {
        throw ParamError("sigma", "'sigma' only applies to blur mode");
      }
      if (sigma) p.target.sigma = *sigma;
      if (blocks) p.target.blocks = *blocks;
    }
    if (grid) p.grid = *grid;

    if (!(p.target.sigma > 0.0) || !std::isfinite(p.target.sigma)) {
      throw ParamError("sigma", "sigma must be > 0");
    }
    if (p.target.blocks < 1) throw ParamError("blocks", "blocks must be >= 1");
    if (p.target.contrast_preset < 0 || p.target.contrast_preset > kContrastIdentity) {
      throw ParamError("contrast", "contrast must be in [0,127]");
    }
    if (p.grid < 1) throw ParamError("grid", "grid must be >= 1");
    p.validate();
    return p;
  }
};

inline ParamInput param_input_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParamError("params", "params must be a JSON object");
  ParamInput in;
  for (const auto& [key, value] : doc.items()) {
    if (key == "preset" || key == "mode") {
      if (!value.is_string()) throw ParamError(key, "'" + key + "' must be a string");
      (key == "preset" ? in.preset : in.mode) = value.get<std::string>();
    } else if (key == "sigma") {
      if (!value.is_number()) throw ParamError(key, "'sigma' must be a number");
      in.sigma = value.get<double>();
    } else if (key == "blocks" || key == "contrast" || key == "grid") {
      if (!value.is_number_integer()) throw ParamError(key, "'" + key + "' must be an integer");
      const auto v = value.get<long long>();
      if (v < -1'000'000 || v > 1'000'000) throw ParamError(key, "'" + key + "' out of range");
      (key == "blocks" ? in.blocks : key == "contrast" ? in.contrast : in.grid) = static_cast<int>(v);
    } else {
      throw ParamError(key, "unknown parameter '" + key + "'");
    }
  }
  return in;
}

inline ProtectParams params_from_json(const nlohmann::json& doc) {
  return param_input_from_json(doc).resolve();
}

// Canonical JSON form; a preset is emitted by name plus its grid.
inline nlohmann::json params_to_json(const ProtectParams& p) {
  if (p.preset != Preset::custom) {
    return {{"preset", std::string(to_string(p.preset))}, {"grid", p.grid}};
  }
  nlohmann::json j{{"mode", to_string(p.target.mode)}, {"contrast", p.target.contrast_preset}, {"grid", p.grid}};
  if (p.target.mode == TargetMode::blur) {
    j["sigma"] = p.target.sigma;
  } else {
    j["blocks"] = p.target.blocks;
  }
  return j;
}

// Simulate accepts either an explicit factor or the viewing geometry, not both.
struct SimulateInput {
  std::optional<double> factor;
  std::optional<double> user_d;
  std::optional<double> surfer_d;
  std::optional<double> diagonal;

  double resolve() const {
    const bool any_geometry = user_d || surfer_d || diagonal;
    if (factor && any_geometry) {
      throw ParamError("factor", "give either factor or user_d/surfer_d/diagonal, not both");
    }
    if (factor) {
      if (!(*factor > 1.0) || !std::isfinite(*factor)) throw ParamError("factor", "factor must be > 1");
      return *factor;
    }
    if (!user_d) throw ParamError("user_d", "need factor, or user_d and surfer_d");
    if (!surfer_d) throw ParamError("surfer_d", "need factor, or user_d and surfer_d");
    DisplaySpec display;
    if (diagonal) display.diagonal_in = *diagonal;
    if (!(display.diagonal_in > 0.0)) throw ParamError("diagonal", "diagonal must be > 0");
    if (!(*user_d > 0.0)) throw ParamError("user_d", "user_d must be > 0");
    if (!(*surfer_d > *user_d)) throw ParamError("surfer_d", "surfer_d must exceed user_d");
    return downscale_factor(*user_d, *surfer_d, display);
  }
};

inline std::string describe(const ProtectParams& p) {
  std::ostringstream s;
  s << "preset=" << to_string(p.preset) << " mode=" << to_string(p.target.mode);
  if (p.target.mode == TargetMode::blur) {
    s << " sigma=" << p.target.sigma;
  } else {
    s << " blocks=" << p.target.blocks;
  }
  s << " contrast=" << p.target.contrast_preset << " grid=" << p.grid;
  return s.str();
}

inline nlohmann::json presets_json() {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& e : kPresets) {
    j[std::string(e.name)] = {{"mode", "blur"}, {"sigma", e.sigma}, {"contrast", e.contrast}, {"grid", 1}};
  }
  return j;
}

}  // namespace surfguard::app
