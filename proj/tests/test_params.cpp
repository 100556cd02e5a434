#include <gtest/gtest.h>

#include "surfguard/app/params.hpp"

using namespace surfguard;
using namespace surfguard::app;
using nlohmann::json;

namespace {

std::string field_of(const json& doc) {
  try {
    params_from_json(doc);
  } catch (const ParamError& e) {
    return e.field();
  }
  return "<none>";
}

}  // namespace

TEST(Params, EmptyMeansWeakPreset) {
  const ProtectParams p = params_from_json(json::object());
  EXPECT_EQ(p.preset, Preset::weak);
  EXPECT_DOUBLE_EQ(p.target.sigma, 8.0);
  EXPECT_EQ(p.target.contrast_preset, 127);
  EXPECT_EQ(p.grid, 1);
}

TEST(Params, PresetWithGrid) {
  const ProtectParams p = params_from_json({{"preset", "full"}, {"grid", 3}});
  EXPECT_EQ(p.preset, Preset::full);
  EXPECT_DOUBLE_EQ(p.target.sigma, 24.0);
  EXPECT_EQ(p.target.contrast_preset, 80);
  EXPECT_EQ(p.grid, 3);
}

TEST(Params, PresetConflicts) {
  EXPECT_EQ(field_of({{"preset", "full"}, {"sigma", 4.0}}), "sigma");
  EXPECT_EQ(field_of({{"preset", "full"}, {"contrast", 90}}), "contrast");
  EXPECT_EQ(field_of({{"preset", "full"}, {"mode", "blur"}}), "mode");
  EXPECT_EQ(field_of({{"preset", "medium"}}), "preset");
}

TEST(Params, CustomModes) {
  const ProtectParams blur = params_from_json({{"sigma", 12.5}});
  EXPECT_EQ(blur.preset, Preset::custom);
  EXPECT_EQ(blur.target.mode, TargetMode::blur);
  EXPECT_DOUBLE_EQ(blur.target.sigma, 12.5);
  EXPECT_EQ(blur.target.contrast_preset, 127);

  const ProtectParams pix = params_from_json({{"blocks", 20}, {"contrast", 100}});
  EXPECT_EQ(pix.target.mode, TargetMode::pixelate);
  EXPECT_EQ(pix.target.blocks, 20);
  EXPECT_EQ(pix.target.contrast_preset, 100);

  EXPECT_EQ(params_from_json({{"mode", "pixelate"}}).target.mode, TargetMode::pixelate);
}

TEST(Params, InvalidValuesNameTheField) {
  EXPECT_EQ(field_of({{"sigma", 0}}), "sigma");
  EXPECT_EQ(field_of({{"sigma", -3.0}}), "sigma");
  EXPECT_EQ(field_of({{"sigma", "big"}}), "sigma");
  EXPECT_EQ(field_of({{"blocks", 0}}), "blocks");
  EXPECT_EQ(field_of({{"blocks", 2.5}}), "blocks");
  EXPECT_EQ(field_of({{"contrast", 128}}), "contrast");
  EXPECT_EQ(field_of({{"contrast", -1}}), "contrast");
  EXPECT_EQ(field_of({{"grid", 0}}), "grid");
  EXPECT_EQ(field_of({{"mode", "smear"}}), "mode");
  EXPECT_EQ(field_of({{"mode", "blur"}, {"blocks", 4}}), "blocks");
  EXPECT_EQ(field_of({{"mode", "pixelate"}, {"sigma", 4}}), "sigma");
  EXPECT_EQ(field_of({{"colour", 1}}), "colour");
  EXPECT_EQ(field_of(json::array()), "params");
}

TEST(Params, JsonRoundTrip) {
  const json docs[] = {
      json::object(),
      {{"preset", "strong"}, {"grid", 2}},
      {{"sigma", 5.25}, {"contrast", 70}, {"grid", 4}},
      {{"blocks", 9}},
  };
  for (const auto& d : docs) {
    const ProtectParams p = params_from_json(d);
    const ProtectParams q = params_from_json(params_to_json(p));
    EXPECT_EQ(q.preset, p.preset);
    EXPECT_EQ(q.target.mode, p.target.mode);
    EXPECT_EQ(q.grid, p.grid);
    EXPECT_EQ(q.target.contrast_preset, p.target.contrast_preset);
    if (p.target.mode == TargetMode::blur) {
      EXPECT_DOUBLE_EQ(q.target.sigma, p.target.sigma);
    } else {
      EXPECT_EQ(q.target.blocks, p.target.blocks);
    }
  }
}

TEST(Params, PresetsJson) {
  const json j = presets_json();
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j["full"]["sigma"], 24.0);
  EXPECT_EQ(j["full"]["contrast"], 80);
  EXPECT_EQ(j["strong"]["sigma"], 20.0);
  EXPECT_EQ(j["strong"]["contrast"], 100);
  EXPECT_EQ(j["moderate"]["sigma"], 16.0);
  EXPECT_EQ(j["moderate"]["contrast"], 115);
  EXPECT_EQ(j["weak"]["sigma"], 8.0);
  EXPECT_EQ(j["weak"]["contrast"], 127);
}

TEST(Params, Describe) {
  EXPECT_EQ(describe(preset_params("moderate")), "preset=moderate mode=blur sigma=16 contrast=115 grid=1");
  EXPECT_EQ(describe(params_from_json({{"blocks", 8}})), "preset=custom mode=pixelate blocks=8 contrast=127 grid=1");
}

TEST(SimulateInputTest, FactorOrGeometry) {
  EXPECT_DOUBLE_EQ((SimulateInput{2.5, {}, {}, {}}.resolve()), 2.5);
  EXPECT_NEAR((SimulateInput{{}, 10.0, 41.0, {}}.resolve()), 4.0, 0.01);
  EXPECT_NEAR((SimulateInput{{}, 10.0, 20.0, 5.78}.resolve()), 1.96, 0.01);

  auto field = [](SimulateInput in) {
    try {
      in.resolve();
    } catch (const ParamError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(field({4.0, 10.0, {}, {}}), "factor");
  EXPECT_EQ(field({1.0, {}, {}, {}}), "factor");
  EXPECT_EQ(field({}), "user_d");
  EXPECT_EQ(field({{}, 10.0, {}, {}}), "surfer_d");
  EXPECT_EQ(field({{}, 10.0, 5.0, {}}), "surfer_d");
  EXPECT_EQ(field({{}, -1.0, 5.0, {}}), "user_d");
  EXPECT_EQ(field({{}, 10.0, 41.0, 0.0}), "diagonal");
}
