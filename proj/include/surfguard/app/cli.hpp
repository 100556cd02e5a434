#pragma once

// `surfguard` command line. run() returns the process exit code:
// 0 success, 1 I/O or format failure, 2 invalid flags.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "surfguard/surfguard.hpp"
#include "surfguard/app/evaluate.hpp"
#include "surfguard/app/params.hpp"
#include "surfguard/app/serve.hpp"
#include "surfguard/app/video.hpp"

namespace surfguard::app {

namespace detail {

// Protection flags shared by protect, protect-video and bench.
struct ParamFlags {
  std::string preset, mode, params_file;
  double sigma = 0.0;
  int blocks = 0, contrast = 0, grid = 0;
  CLI::Option *o_preset{}, *o_mode{}, *o_sigma{}, *o_blocks{}, *o_contrast{}, *o_grid{}, *o_file{};

  void add(CLI::App& cmd) {
    o_preset = cmd.add_option("--preset", preset, "full | strong | moderate | weak (default weak)");
    o_mode = cmd.add_option("--mode", mode, "blur | pixelate");
    o_sigma = cmd.add_option("--sigma", sigma, "blur sigma in pixels");
    o_blocks = cmd.add_option("--blocks", blocks, "pixelate blocks along the shorter side");
    o_contrast = cmd.add_option("--contrast", contrast, "contrast preset 0..127 (127 = unchanged)");
    o_grid = cmd.add_option("--grid", grid, "checkerboard cell size in pixels");
    o_file = cmd.add_option("--params", params_file, "JSON settings file (same schema as POST /protect)");
    for (auto* o : {o_preset, o_mode, o_sigma, o_blocks, o_contrast, o_grid}) o_file->excludes(o);
  }

  ProtectParams resolve() const {
    if (o_file->count() > 0) {
      const auto bytes = read_file_bytes(params_file);
      auto doc = nlohmann::json::parse(bytes.begin(), bytes.end(), nullptr, false);
      if (doc.is_discarded()) throw ParamError("params", params_file + ": invalid JSON");
      return params_from_json(doc);
    }
    ParamInput in;
    if (o_preset->count() > 0) in.preset = preset;
    if (o_mode->count() > 0) in.mode = mode;
    if (o_sigma->count() > 0) in.sigma = sigma;
    if (o_blocks->count() > 0) in.blocks = blocks;
    if (o_contrast->count() > 0) in.contrast = contrast;
    if (o_grid->count() > 0) in.grid = grid;
    return in.resolve();
  }
};

// Raised for flag values that only fail once combined or interpreted.
class UsageError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline void check_output_path(const std::filesystem::path& out) {
  try {
    (void)format_for_path(out);
  } catch (const FormatError& e) {
    throw UsageError(e.what());
  }
}

inline std::vector<Resolution> parse_resolutions(const std::vector<std::string>& specs) {
  std::vector<Resolution> out;
  for (const auto& s : specs) {
    int w = 0, h = 0;
    char x = 0, extra = 0;
    if (std::sscanf(s.c_str(), "%d%c%d%c", &w, &x, &h, &extra) != 3 || (x != 'x' && x != 'X') || w < 1 || h < 1) {
      throw UsageError("bad resolution '" + s + "' (expected WxH)");
    }
    out.push_back({w, h});
  }
  return out;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"surfguard: screen content filter against shoulder surfing"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "surfguard 1.0.0");
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  // protect
  auto* c_protect = app.add_subcommand("protect", "protect one image");
  std::string p_in, p_out;
  c_protect->add_option("input", p_in, "input image (.png/.ppm)")->required();
  c_protect->add_option("output", p_out, "output image (.png/.ppm)")->required();
  detail::ParamFlags p_flags;
  p_flags.add(*c_protect);

  // protect-video
  auto* c_video = app.add_subcommand("protect-video", "protect a raw RGB24 stream or a PNG frame directory");
  std::string v_in = "-", v_out = "-";
  int v_width = 0, v_height = 0, v_queue = 8;
  c_video->add_option("--input", v_in, "raw stream file, '-' for stdin, or PNG directory");
  c_video->add_option("--output", v_out, "raw stream file, '-' for stdout, or output directory");
  c_video->add_option("--width", v_width, "frame width (raw streams)");
  c_video->add_option("--height", v_height, "frame height (raw streams)");
  c_video->add_option("--queue", v_queue, "frames held in memory at once")->check(CLI::PositiveNumber);
  detail::ParamFlags v_flags;
  v_flags.add(*c_video);

  // simulate
  auto* c_sim = app.add_subcommand("simulate", "render what a distant observer sees");
  std::string s_in, s_out;
  double s_factor = 0, s_user = 0, s_surfer = 0, s_diag = 0;
  c_sim->add_option("input", s_in)->required();
  c_sim->add_option("output", s_out)->required();
  auto* o_factor = c_sim->add_option("--factor", s_factor, "linear downscale factor (> 1)");
  auto* o_user = c_sim->add_option("--user-d", s_user, "intended viewer distance, inches");
  auto* o_surfer = c_sim->add_option("--surfer-d", s_surfer, "observer distance, inches");
  auto* o_diag = c_sim->add_option("--diagonal", s_diag, "display diagonal, inches (default 5.78)");

  // evaluate
  auto* c_eval = app.add_subcommand("evaluate", "sweep settings over an image directory");
  std::string e_dir, e_report, e_fixture;
  EvalMatrix matrix;
  std::vector<double> e_sigmas = matrix.sigmas;
  std::vector<int> e_blocks, e_grids = matrix.grids, e_contrasts = matrix.contrasts;
  std::vector<double> e_factors = matrix.factors;
  bool e_live = false, e_summary = false;
  c_eval->add_option("dataset", e_dir, "directory of .png/.ppm images")->required();
  c_eval->add_option("--report", e_report, "CSV output path (default stdout)");
  c_eval->add_option("--sigmas", e_sigmas, "blur sigmas")->delimiter(',');
  c_eval->add_option("--blocks", e_blocks, "pixelate block counts")->delimiter(',');
  c_eval->add_option("--grids", e_grids, "grid cell sizes")->delimiter(',');
  c_eval->add_option("--contrasts", e_contrasts, "contrast presets")->delimiter(',');
  c_eval->add_option("--factors", e_factors, "downscale factors")->delimiter(',');
  c_eval->add_option("--fixture", e_fixture, "recognition fixture JSON (enables retention)");
  c_eval->add_flag("--summary", e_summary, "print per-setting means to stdout");
#ifdef SURFGUARD_WITH_LIVE_RECOGNITION
  c_eval->add_flag("--live", e_live, std::string("use the live annotate API (key in ") + kVisionApiKeyEnv + ")");
#endif

  // grid-size
  auto* c_grid = app.add_subcommand("grid-size", "largest grid cell the intended viewer cannot resolve");
  ViewingGeometry geom;
  c_grid->add_option("--ppi", geom.ppi, "display pixels per inch")->capture_default_str();
  c_grid->add_option("--distance", geom.distance_in, "viewer distance, inches")->capture_default_str();
  c_grid->add_option("--alpha", geom.resolving_power_deg, "resolving power, degrees")->capture_default_str();
  c_grid->add_option("--font-term", geom.font_term, "font scale term")->capture_default_str();

  // serve
  auto* c_serve = app.add_subcommand("serve", "HTTP service for the tuner UI");
  ServeOptions serve_opt;
  std::string static_dir;
  c_serve->add_option("--port", serve_opt.port)->capture_default_str();
  c_serve->add_option("--host", serve_opt.host)->capture_default_str();
  c_serve->add_option("--max-side", serve_opt.max_side, "largest accepted width/height")->capture_default_str();
  c_serve->add_option("--static-dir", static_dir, "serve UI assets from this directory");

  // bench
  auto* c_bench = app.add_subcommand("bench", "latency / FPS over synthetic frames");
  BenchConfig bench;
  std::vector<std::string> b_res;
  std::string b_csv;
  c_bench->add_option("--frames", bench.frames)->capture_default_str();
  c_bench->add_option("--resolutions", b_res, "WxH list (default: standard table)")->delimiter(',');
  c_bench->add_option("--csv", b_csv, "CSV output path");
  c_bench->add_option("--seed", bench.seed)->capture_default_str();
  detail::ParamFlags b_flags;
  b_flags.add(*c_bench);

  // hash
  auto* c_hash = app.add_subcommand("hash", "print the content hash used by recognition fixtures");
  std::vector<std::string> h_in;
  c_hash->add_option("images", h_in)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Exec exec{threads};
  try {
    if (*c_protect) {
      const ProtectParams params = p_flags.resolve();
      detail::check_output_path(p_out);
      err << "params: " << describe(params) << '\n';
      save_image(protect_with_params(load_image(p_in), params, exec), p_out);
    } else if (*c_video) {
      VideoOptions vo{v_flags.resolve(), threads, v_queue};
      err << "params: " << describe(vo.params) << '\n';
      long long n = 0;
      if (v_in != "-" && std::filesystem::is_directory(v_in)) {
        if (v_out == "-") throw detail::UsageError("--output directory required for PNG frame input");
        n = protect_png_directory(v_in, v_out, vo);
      } else {
        if (v_width < 1 || v_height < 1) throw detail::UsageError("raw streams need --width and --height");
        std::ifstream fin;
        std::ofstream fout;
        std::istream* is = &std::cin;
        std::ostream* os = &std::cout;
        if (v_in != "-") {
          fin.open(v_in, std::ios::binary);
          if (!fin) throw IoError("cannot open " + v_in);
          is = &fin;
        }
        if (v_out != "-") {
          fout.open(v_out, std::ios::binary | std::ios::trunc);
          if (!fout) throw IoError("cannot open for writing: " + v_out);
          os = &fout;
        }
        n = protect_raw_stream(*is, *os, v_width, v_height, vo);
      }
      err << "frames: " << n << '\n';
    } else if (*c_sim) {
      SimulateInput in;
      if (o_factor->count() > 0) in.factor = s_factor;
      if (o_user->count() > 0) in.user_d = s_user;
      if (o_surfer->count() > 0) in.surfer_d = s_surfer;
      if (o_diag->count() > 0) in.diagonal = s_diag;
      const double factor = in.resolve();
      detail::check_output_path(s_out);
      err << "factor: " << std::fixed << std::setprecision(2) << factor << '\n';
      save_image(downscale_view(load_image(s_in), factor, exec), s_out);
    } else if (*c_eval) {
      matrix.sigmas = e_sigmas;
      matrix.blocks = e_blocks;
      matrix.grids = e_grids;
      matrix.contrasts = e_contrasts;
      matrix.factors = e_factors;
      matrix.validate();
      std::unique_ptr<RecognitionClient> client;
      if (e_live) {
#ifdef SURFGUARD_WITH_LIVE_RECOGNITION
        client = std::make_unique<VisionHttpClient>(VisionHttpClient::from_environment());
#endif
      } else if (!e_fixture.empty()) {
        client = std::make_unique<MockRecognitionClient>(MockRecognitionClient::from_file(e_fixture));
      }
      const auto rows = evaluate_directory(e_dir, matrix, client.get(), exec);
      if (e_report.empty()) {
        write_eval_csv(rows, out);
      } else {
        std::ofstream f(e_report, std::ios::trunc);
        if (!f) throw IoError("cannot open for writing: " + e_report);
        write_eval_csv(rows, f);
        if (!f) throw IoError("write failed: " + e_report);
        err << "wrote " << rows.size() << " rows to " << e_report << '\n';
      }
      if (e_summary) write_eval_summary(rows, out);
    } else if (*c_grid) {
      const GridSize g = optimal_grid_size(geom);
      out << std::fixed << std::setprecision(2) << "g_real=" << g.real_px << '\n' << "g_int=" << g.pixels << '\n';
    } else if (*c_serve) {
      if (!static_dir.empty()) serve_opt.static_dir = static_dir;
      serve_opt.threads = threads;
      Service service(serve_opt);
      const int port = service.bind();
      err << "listening on http://" << serve_opt.host << ':' << port << std::endl;
      service.run();
    } else if (*c_bench) {
      bench.params = b_flags.resolve();
      bench.threads = threads;
      if (!b_res.empty()) bench.resolutions = detail::parse_resolutions(b_res);
      bench.validate();
      err << "params: " << describe(bench.params) << '\n';
      const BenchReport report = run_bench(bench);
      write_bench_table(report, out);
      if (!b_csv.empty()) {
        std::ofstream f(b_csv, std::ios::trunc);
        if (!f) throw IoError("cannot open for writing: " + b_csv);
        write_bench_csv(report, f);
      }
    } else if (*c_hash) {
      for (const auto& path : h_in) out << content_hash(load_image(path)) << "  " << path << '\n';
    }
  } catch (const ParamError& e) {
    err << "error: --" << e.field() << ": " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace surfguard::app
