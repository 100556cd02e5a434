#pragma once

// Frame-latency benchmark for the full protection path over a table of
// resolutions, on seeded synthetic frames (no dataset required).

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <iomanip>
#include <new>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "surfguard/error.hpp"
#include "surfguard/image.hpp"
#include "surfguard/parallel.hpp"
#include "surfguard/shield.hpp"

namespace surfguard {

struct Resolution {
  int width = 0;
  int height = 0;

  std::size_t pixels() const noexcept {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  std::string label() const { return std::to_string(width) + "x" + std::to_string(height); }
  friend bool operator==(const Resolution&, const Resolution&) = default;
};

// Video, square and phone-screen sizes.
inline std::vector<Resolution> standard_resolutions() {
  return {{256, 144},  {426, 240},  {640, 360},   {854, 480},   {960, 540},
          {1024, 576}, {1280, 720}, {1366, 768},  {1600, 900},  {1920, 1080},
          {2560, 1440}, {512, 512}, {1080, 2400}, {1170, 2532}, {1440, 3088}};
}

struct BenchConfig {
  std::vector<Resolution> resolutions = standard_resolutions();
  int frames = 100;
  ProtectParams params = default_params();
  int threads = 0;  // 0 = hardware concurrency
  std::uint64_t seed = 0x5eed'f00dULL;

  void validate() const {
    if (frames < 1) throw DomainError("bench frames must be >= 1");
    if (resolutions.empty()) throw DomainError("bench needs at least one resolution");
    for (const auto& r : resolutions) {
      if (r.width < 1 || r.height < 1) throw DomainError("bad bench resolution " + r.label());
    }
    params.validate();
  }
};

struct BenchRow {
  Resolution resolution;
  int frames = 0;
  int threads = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double p95_ms = 0.0;
  double fps = 0.0;
  long long peak_rss_bytes = -1;  // -1 when unavailable
  double cpu_pct = -1.0;          // process CPU time / wall time; -1 when unavailable
  std::optional<std::string> error;

  bool ok() const noexcept { return !error.has_value(); }
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

// Frame `index` for a resolution: smooth gradients plus seeded noise. The
// same (seed, index, size) always yields the same bytes.
inline ImageBuffer synthetic_frame(Resolution res, std::uint64_t seed, int index) {
  ImageBuffer img(res.width, res.height);
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1)) ^
                      (static_cast<std::uint64_t>(res.width) << 32 | static_cast<std::uint64_t>(res.height)));
  auto data = img.data();
  std::size_t i = 0;
  std::uint64_t bits = 0;
  int left = 0;
  for (int y = 0; y < res.height; ++y) {
    for (int x = 0; x < res.width; ++x) {
      for (int c = 0; c < kChannels; ++c, ++i) {
        if (left == 0) {
          bits = rng();
          left = 8;
        }
        const int noise = static_cast<int>(bits & 0x3f) - 32;
        bits >>= 8;
        --left;
        const int base = ((x * 255) / res.width + (y * 255) / res.height * (c + 1) + index * 7) % 256;
        data[i] = static_cast<std::uint8_t>(std::clamp(base + noise, 0, 255));
      }
    }
  }
  return img;
}

namespace detail {

inline double process_cpu_seconds() {
  timespec ts{};
  if (clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &ts) != 0) return -1.0;
  return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

inline long long peak_rss_bytes() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return -1;
  return static_cast<long long>(usage.ru_maxrss) * 1024;  // Linux reports KiB
}

}  // namespace detail

struct LatencyStats {
  double mean = 0.0;
  double median = 0.0;
  double p95 = 0.0;
};

// Median averages the two middle samples for even counts; p95 is nearest-rank.
inline LatencyStats latency_stats(std::vector<double> samples) {
  if (samples.empty()) throw DomainError("latency_stats: no samples");
  std::sort(samples.begin(), samples.end());
  LatencyStats s;
  double total = 0.0;
  for (double v : samples) total += v;
  s.mean = total / static_cast<double>(samples.size());
  const std::size_t n = samples.size();
  s.median = n % 2 == 1 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  s.p95 = samples[std::max<std::size_t>(rank, 1) - 1];
  return s;
}

inline BenchRow bench_resolution(Resolution res, const BenchConfig& cfg) {
  BenchRow row;
  row.resolution = res;
  row.frames = cfg.frames;
  const Exec exec{cfg.threads};
  row.threads = exec.resolved();
  try {
    std::vector<double> ms;
    ms.reserve(static_cast<std::size_t>(cfg.frames));
    double cpu_total = 0.0;
    double wall_total = 0.0;
    bool cpu_ok = true;
    for (int f = 0; f < cfg.frames; ++f) {
      const ImageBuffer frame = synthetic_frame(res, cfg.seed, f);
      const double cpu0 = detail::process_cpu_seconds();
      const auto t0 = std::chrono::steady_clock::now();
      const ImageBuffer out = protect_with_params(frame, cfg.params, exec);
      const auto t1 = std::chrono::steady_clock::now();
      const double cpu1 = detail::process_cpu_seconds();
      const double elapsed = std::chrono::duration<double, std::milli>(t1 - t0).count();
      ms.push_back(elapsed);
      wall_total += elapsed / 1000.0;
      if (cpu0 < 0.0 || cpu1 < 0.0) cpu_ok = false;
      cpu_total += cpu1 - cpu0;
      if (out.data().empty()) throw Error("empty output");
    }
    const LatencyStats s = latency_stats(std::move(ms));
    row.mean_ms = s.mean;
    row.median_ms = s.median;
    row.p95_ms = s.p95;
    row.fps = 1000.0 / s.mean;
    row.cpu_pct = cpu_ok && wall_total > 0.0 ? 100.0 * cpu_total / wall_total : -1.0;
    row.peak_rss_bytes = detail::peak_rss_bytes();
  } catch (const std::bad_alloc&) {
    row.error = "out of memory";
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

inline BenchReport run_bench(const BenchConfig& cfg) {
  cfg.validate();
  BenchReport report;
  for (const auto& res : cfg.resolutions) report.rows.push_back(bench_resolution(res, cfg));
  return report;
}

inline constexpr const char* kBenchCsvHeader =
    "resolution,frames,threads,mean_ms,median_ms,p95_ms,fps,peak_rss_bytes,cpu_pct";

inline void write_bench_csv(const BenchReport& report, std::ostream& out) {
  out << kBenchCsvHeader << '\n';
  out << std::fixed;
  for (const auto& r : report.rows) {
    out << r.resolution.label() << ',' << r.frames << ',' << r.threads << ',';
    if (!r.ok()) {
      out << ",,,,,\n";  // numeric fields left empty for failed rows
      continue;
    }
    out << std::setprecision(4) << r.mean_ms << ',' << r.median_ms << ',' << r.p95_ms << ','
        << std::setprecision(2) << r.fps << ',';
    if (r.peak_rss_bytes >= 0) out << r.peak_rss_bytes;
    out << ',';
    if (r.cpu_pct >= 0.0) out << std::setprecision(1) << r.cpu_pct;
    out << '\n';
  }
}

// Largest measured resolution that keeps up with the given refresh rate.
inline std::optional<Resolution> recommend_resolution(const BenchReport& report, double refresh_hz = 60.0) {
  std::optional<Resolution> best;
  for (const auto& r : report.rows) {
    if (!r.ok() || r.fps < refresh_hz) continue;
    if (!best || r.resolution.pixels() > best->pixels()) best = r.resolution;
  }
  return best;
}

inline void write_bench_table(const BenchReport& report, std::ostream& out) {
  out << std::left << std::setw(12) << "resolution" << std::right << std::setw(8) << "frames"
      << std::setw(9) << "threads" << std::setw(11) << "mean ms" << std::setw(11) << "median ms"
      << std::setw(11) << "p95 ms" << std::setw(10) << "fps" << std::setw(12) << "rss MiB"
      << std::setw(8) << "cpu%" << '\n';
  out << std::fixed;
  for (const auto& r : report.rows) {
    out << std::left << std::setw(12) << r.resolution.label() << std::right << std::setw(8)
        << r.frames << std::setw(9) << r.threads;
    if (!r.ok()) {
      out << "  FAILED: " << *r.error << '\n';
      continue;
    }
    out << std::setprecision(3) << std::setw(11) << r.mean_ms << std::setw(11) << r.median_ms
        << std::setw(11) << r.p95_ms << std::setprecision(2) << std::setw(10) << r.fps
        << std::setprecision(1) << std::setw(12)
        << (r.peak_rss_bytes >= 0 ? static_cast<double>(r.peak_rss_bytes) / (1024.0 * 1024.0) : -1.0)
        << std::setw(8) << r.cpu_pct << '\n';
  }
  if (const auto rec = recommend_resolution(report)) {
    out << "largest resolution sustaining 60 FPS: " << rec->label() << '\n';
  } else {
    out << "no measured resolution sustains 60 FPS\n";
  }
}

}  // namespace surfguard
