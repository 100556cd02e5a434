#pragma once

// Parameter sweep over an image directory: protect, shrink to the observer's
// view, and score with SSIM (and optionally label retention).

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "surfguard/error.hpp"
#include "surfguard/io.hpp"
#include "surfguard/metrics.hpp"
#include "surfguard/parallel.hpp"
#include "surfguard/shield.hpp"
#include "surfguard/simulate.hpp"

namespace surfguard::app {

struct EvalMatrix {
  std::vector<double> sigmas{8, 16, 24, 32};
  std::vector<int> blocks;  // pixelate runs; empty = none
  std::vector<int> grids{1};
  std::vector<int> contrasts{kContrastIdentity};
  std::vector<double> factors{4.0};

  // Every (mode, strength, grid, contrast) combination; factors are swept
  // per combination.
  std::vector<ProtectParams> combinations() const {
    std::vector<ProtectParams> out;
    auto add = [&](TargetSpec base) {
      for (int g : grids) {
        for (int c : contrasts) {
          ProtectParams p;
          p.target = base;
          p.target.contrast_preset = c;
          p.grid = g;
          p.validate();
          out.push_back(p);
        }
      }
    };
    for (double s : sigmas) add(TargetSpec{TargetMode::blur, s, 16, kContrastIdentity});
    for (int b : blocks) add(TargetSpec{TargetMode::pixelate, 8.0, b, kContrastIdentity});
    return out;
  }

  std::size_t rows_per_image() const { return combinations().size() * factors.size(); }

  void validate() const {
    if (sigmas.empty() && blocks.empty()) throw DomainError("evaluate needs at least one sigma or blocks value");
    if (grids.empty() || contrasts.empty() || factors.empty()) {
      throw DomainError("evaluate needs at least one grid, contrast and factor");
    }
    for (double f : factors) {
      if (!(f > 1.0)) throw DomainError("factor must be > 1, got " + std::to_string(f));
    }
    (void)combinations();
  }
};

struct EvalRow {
  std::string image;
  ProtectParams params;
  double factor = 0.0;
  double ssim_vs_target = 0.0;
  double ssim_vs_original = 0.0;
  std::optional<RetentionReport> retention;
};

inline std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".png" || ext == ".ppm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

// One image through every combination. Rows come out in combination-major,
// factor-minor order.
inline std::vector<EvalRow> evaluate_image(const ImageBuffer& original, const std::string& name,
                                           const EvalMatrix& matrix, RecognitionClient* client,
                                           Exec exec = {}) {
  std::vector<EvalRow> rows;
  std::map<double, RecognitionResult> original_labels;
  if (client != nullptr) {
    for (double f : matrix.factors) original_labels[f] = client->recognize(downscale_view(original, f, exec));
  }
  for (const ProtectParams& params : matrix.combinations()) {
    const ProtectOutput result = protect_pipeline(original, params, exec);
    const double vs_original = ssim(result.protected_image, original);
    for (double f : matrix.factors) {
      EvalRow row;
      row.image = name;
      row.params = params;
      row.factor = f;
      const ImageBuffer seen = downscale_view(result.protected_image, f, exec);
      row.ssim_vs_target = ssim(seen, downscale_view(result.target, f, exec));
      row.ssim_vs_original = vs_original;
      if (client != nullptr) row.retention = retention(original_labels[f], client->recognize(seen));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline std::vector<EvalRow> evaluate_directory(const std::filesystem::path& dir, const EvalMatrix& matrix,
                                               RecognitionClient* client, Exec exec = {}) {
  matrix.validate();
  const auto files = list_images(dir);
  if (files.empty()) throw IoError("no .png/.ppm images in " + dir.string());
  std::vector<EvalRow> rows;
  for (const auto& f : files) {
    auto part = evaluate_image(load_image(f), f.filename().string(), matrix, client, exec);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return rows;
}

inline constexpr const char* kEvalCsvHeader =
    "image,mode,sigma_or_blocks,grid,contrast,factor,ssim_vs_target,ssim_vs_original,retention";

inline void write_eval_csv(const std::vector<EvalRow>& rows, std::ostream& out) {
  out << kEvalCsvHeader << '\n';
  for (const auto& r : rows) {
    std::ostringstream line;
    line << r.image << ',' << to_string(r.params.target.mode) << ',';
    if (r.params.target.mode == TargetMode::blur) {
      line << r.params.target.sigma;
    } else {
      line << r.params.target.blocks;
    }
    line << ',' << r.params.grid << ',' << r.params.target.contrast_preset << ',' << r.factor << ','
         << std::fixed << std::setprecision(6) << r.ssim_vs_target << ',' << r.ssim_vs_original << ',';
    if (r.retention) line << std::setprecision(4) << r.retention->retained_fraction;
    out << line.str() << '\n';
  }
}

// Mean scores per (mode, strength, grid, contrast, factor) across images.
inline void write_eval_summary(const std::vector<EvalRow>& rows, std::ostream& out) {
  struct Acc {
    double target = 0.0, original = 0.0, retained = 0.0;
    int n = 0, n_ret = 0;
  };
  std::map<std::string, Acc> groups;
  std::vector<std::string> order;
  for (const auto& r : rows) {
    std::ostringstream key;
    key << to_string(r.params.target.mode) << ' '
        << (r.params.target.mode == TargetMode::blur ? "sigma=" : "blocks=");
    if (r.params.target.mode == TargetMode::blur) {
      key << r.params.target.sigma;
    } else {
      key << r.params.target.blocks;
    }
    key << " grid=" << r.params.grid << " contrast=" << r.params.target.contrast_preset << " factor=" << r.factor;
    auto [it, inserted] = groups.try_emplace(key.str());
    if (inserted) order.push_back(key.str());
    it->second.target += r.ssim_vs_target;
    it->second.original += r.ssim_vs_original;
    ++it->second.n;
    if (r.retention) {
      it->second.retained += r.retention->retained_fraction;
      ++it->second.n_ret;
    }
  }
  out << std::fixed << std::setprecision(4);
  for (const auto& k : order) {
    const Acc& a = groups[k];
    out << k << ": ssim_vs_target=" << a.target / a.n << " ssim_vs_original=" << a.original / a.n;
    if (a.n_ret > 0) out << " retention=" << a.retained / a.n_ret;
    out << " (n=" << a.n << ")\n";
  }
}

}  // namespace surfguard::app
