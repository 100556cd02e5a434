#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfguard/encoding.hpp"
#include "surfguard/error.hpp"
#include "surfguard/image.hpp"
#include "surfguard/io.hpp"

namespace surfguard {

// ---------------------------------------------------------------------------
// SSIM
// ---------------------------------------------------------------------------

struct SsimParams {
  int window = 7;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;

  double c1() const noexcept { return (k1 * dynamic_range) * (k1 * dynamic_range); }
  double c2() const noexcept { return (k2 * dynamic_range) * (k2 * dynamic_range); }

  void validate() const {
    if (window < 3 || window % 2 == 0) {
      throw DomainError("SSIM window must be odd and >= 3, got " + std::to_string(window));
    }
    if (!(k1 > 0.0) || !(k2 > 0.0) || !(dynamic_range > 0.0)) {
      throw DomainError("SSIM constants must be > 0");
    }
  }
};

struct LumaPlane {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;

  std::uint8_t at(int x, int y) const noexcept {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
};

// Rec. 601 luma, rounded half-up: (299 R + 587 G + 114 B + 500) / 1000.
inline LumaPlane to_luma(const ImageBuffer& img) {
  LumaPlane plane{img.width(), img.height(), std::vector<std::uint8_t>(img.pixel_count())};
  const auto data = img.data();
  for (std::size_t p = 0; p < plane.values.size(); ++p) {
    const std::uint32_t r = data[p * 3], g = data[p * 3 + 1], b = data[p * 3 + 2];
    plane.values[p] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
  }
  return plane;
}

namespace detail {

// Summed-area table with a zero row/column in front.
class IntegralImage {
 public:
  template <typename Fn>
  IntegralImage(int width, int height, Fn&& value)
      : stride_(static_cast<std::size_t>(width) + 1),
        sums_(stride_ * (static_cast<std::size_t>(height) + 1), 0) {
    for (int y = 0; y < height; ++y) {
      std::int64_t row = 0;
      for (int x = 0; x < width; ++x) {
        row += value(x, y);
        sums_[idx(x + 1, y + 1)] = sums_[idx(x + 1, y)] + row;
      }
    }
  }

  // Sum over [x, x + n) x [y, y + n).
  std::int64_t box(int x, int y, int n) const noexcept {
    return sums_[idx(x + n, y + n)] - sums_[idx(x, y + n)] - sums_[idx(x + n, y)] + sums_[idx(x, y)];
  }

 private:
  std::size_t idx(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * stride_ + static_cast<std::size_t>(x);
  }
  std::size_t stride_;
  std::vector<std::int64_t> sums_;
};

}  // namespace detail

// Mean SSIM over every fully contained window (uniform weights, population
// statistics).
inline double ssim(const LumaPlane& a, const LumaPlane& b, const SsimParams& params = {}) {
  params.validate();
  if (a.width != b.width || a.height != b.height) {
    throw DomainError("ssim: dimension mismatch " + std::to_string(a.width) + "x" +
                      std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                      std::to_string(b.height));
  }
  const int n = params.window;
  if (a.width < n || a.height < n) {
    throw DomainError("ssim: image " + std::to_string(a.width) + "x" + std::to_string(a.height) +
                      " smaller than window " + std::to_string(n));
  }

  const detail::IntegralImage sa(a.width, a.height, [&](int x, int y) { return std::int64_t{a.at(x, y)}; });
  const detail::IntegralImage sb(a.width, a.height, [&](int x, int y) { return std::int64_t{b.at(x, y)}; });
  const detail::IntegralImage saa(a.width, a.height, [&](int x, int y) {
    const std::int64_t v = a.at(x, y);
    return v * v;
  });
  const detail::IntegralImage sbb(a.width, a.height, [&](int x, int y) {
    const std::int64_t v = b.at(x, y);
    return v * v;
  });
  const detail::IntegralImage sab(a.width, a.height, [&](int x, int y) {
    return std::int64_t{a.at(x, y)} * std::int64_t{b.at(x, y)};
  });

  // Every term is scaled by count^2 and kept integral, so identical inputs
  // give numerator == denominator bit for bit (no FMA-contraction drift).
  const std::int64_t count = static_cast<std::int64_t>(n) * n;
  const double scale = static_cast<double>(count) * static_cast<double>(count);
  const double c1 = params.c1() * scale;
  const double c2 = params.c2() * scale;
  double total = 0.0;
  const int wx = a.width - n + 1;
  const int wy = a.height - n + 1;
  for (int y = 0; y < wy; ++y) {
    for (int x = 0; x < wx; ++x) {
      const std::int64_t sx = sa.box(x, y, n);
      const std::int64_t sy = sb.box(x, y, n);
      const std::int64_t mean_num = 2 * sx * sy;
      const std::int64_t mean_den = sx * sx + sy * sy;
      const std::int64_t cov_num = 2 * (count * sab.box(x, y, n) - sx * sy);
      const std::int64_t var_den = (count * saa.box(x, y, n) - sx * sx) + (count * sbb.box(x, y, n) - sy * sy);
      total += ((static_cast<double>(mean_num) + c1) * (static_cast<double>(cov_num) + c2)) /
               ((static_cast<double>(mean_den) + c1) * (static_cast<double>(var_den) + c2));
    }
  }
  return total / (static_cast<double>(wx) * static_cast<double>(wy));
}

inline double ssim(const ImageBuffer& a, const ImageBuffer& b, const SsimParams& params = {}) {
  require_same_size(a, b, "ssim");
  return ssim(to_luma(a), to_luma(b), params);
}

// ---------------------------------------------------------------------------
// Recognition and label retention
// ---------------------------------------------------------------------------

struct Label {
  std::string text;
  double confidence = 0.0;
};

enum class RecognitionSource { mock, live };

struct RecognitionResult {
  std::vector<Label> labels;
  RecognitionSource source = RecognitionSource::mock;
  bool miss = false;  // mock only: image not present in the fixture
};

class RecognitionClient {
 public:
  virtual ~RecognitionClient() = default;
  virtual RecognitionResult recognize(const ImageBuffer& img) = 0;
};

inline std::vector<Label> parse_label_list(const nlohmann::json& arr, const std::string& where) {
  if (!arr.is_array()) throw FormatError("JSON", where + ": expected an array of labels");
  std::vector<Label> labels;
  for (const auto& item : arr) {
    if (!item.is_object() || !item.contains("label") || !item["label"].is_string()) {
      throw FormatError("JSON", where + ": each entry needs a string 'label'");
    }
    Label l{item["label"].get<std::string>(), item.value("confidence", 1.0)};
    if (!(l.confidence >= 0.0 && l.confidence <= 1.0)) {
      throw FormatError("JSON", where + ": confidence for '" + l.text + "' outside [0,1]");
    }
    labels.push_back(std::move(l));
  }
  return labels;
}

// Offline client: looks images up by content_hash() in a fixture of
// { "<sha256 hex>": [ {"label": "cat", "confidence": 0.98}, ... ], ... }.
class MockRecognitionClient final : public RecognitionClient {
 public:
  MockRecognitionClient() = default;
  explicit MockRecognitionClient(std::map<std::string, std::vector<Label>> table)
      : table_(std::move(table)) {}

  static MockRecognitionClient from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw FormatError("JSON", "recognition fixture must be a JSON object");
    std::map<std::string, std::vector<Label>> table;
    for (const auto& [hash, labels] : doc.items()) {
      table.emplace(hash, parse_label_list(labels, "fixture entry " + hash));
    }
    return MockRecognitionClient(std::move(table));
  }

  static MockRecognitionClient from_file(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    nlohmann::json doc = nlohmann::json::parse(bytes.begin(), bytes.end(), nullptr, false);
    if (doc.is_discarded()) throw FormatError("JSON", path.string() + ": invalid JSON");
    return from_json(doc);
  }

  void add(const std::string& hash, std::vector<Label> labels) { table_[hash] = std::move(labels); }

  RecognitionResult recognize(const ImageBuffer& img) override {
    RecognitionResult result;
    result.source = RecognitionSource::mock;
    const auto it = table_.find(content_hash(img));
    if (it == table_.end()) {
      result.miss = true;
    } else {
      result.labels = it->second;
    }
    return result;
  }

 private:
  std::map<std::string, std::vector<Label>> table_;
};

inline RecognitionResult recognize(const ImageBuffer& img, RecognitionClient& client) {
  return client.recognize(img);
}

struct RetentionReport {
  double retained_fraction = 0.0;
  int original_count = 0;
  int retained_count = 0;
};

namespace detail {
inline std::set<std::string> folded_labels(const RecognitionResult& r) {
  std::set<std::string> out;
  for (const auto& l : r.labels) {
    std::string s = l.text;
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    out.insert(std::move(s));
  }
  return out;
}
}  // namespace detail

// Share of the original's labels (case-insensitive, distinct) that are still
// reported for the protected image.
inline RetentionReport retention(const RecognitionResult& original, const RecognitionResult& protected_view) {
  const auto orig = detail::folded_labels(original);
  const auto prot = detail::folded_labels(protected_view);
  RetentionReport report;
  report.original_count = static_cast<int>(orig.size());
  for (const auto& l : orig) {
    if (prot.count(l) != 0) ++report.retained_count;
  }
  report.retained_fraction = report.original_count == 0
                                 ? 0.0
                                 : static_cast<double>(report.retained_count) / report.original_count;
  return report;
}

}  // namespace surfguard
