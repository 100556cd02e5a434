#pragma once

// HTTP service behind the interactive tuner.
//
//   POST /protect   multipart: file "image" (PNG/PPM), text "params" (JSON)
//                   JSON body: {"image": "<base64>", "params": {...}}
//                   raw image body: params as ?params=<JSON>
//                   -> 200 image/png
//   POST /simulate  same image forms plus "factor", or "user_d", "surfer_d"
//                   and "diagonal" -> 200 image/png
//   GET  /presets   -> {"full": {"mode": "blur", "sigma": 24, ...}, ...}
//   GET  /health    -> {"status": "ok"}
//
// Errors are JSON {"error": "...", "field": "..."}: 400 for bad parameters or
// images, 413 for images over the size limit. Output PNGs are encoded exactly
// as `surfguard protect` / `surfguard simulate` write them.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <new>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfguard/encoding.hpp"
#include "surfguard/error.hpp"
#include "surfguard/geometry.hpp"
#include "surfguard/io.hpp"
#include "surfguard/shield.hpp"
#include "surfguard/simulate.hpp"
#include "surfguard/vision_client.hpp"
#include "surfguard/app/params.hpp"

#include "httplib.h"

namespace surfguard::app {

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 = any free port
  int max_side = 4096;
  int threads = 0;  // per request
  std::optional<std::filesystem::path> static_dir;
};

class HttpError : public Error {
 public:
  HttpError(int status, std::string field, const std::string& what)
      : Error(what), status_(status), field_(std::move(field)) {}
  int status() const noexcept { return status_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int status_;
  std::string field_;
};

namespace detail {

inline ImageBuffer decode_checked(const std::string& bytes, int max_side) {
  if (bytes.empty()) throw HttpError(400, "image", "missing image");
  const std::span<const std::uint8_t> view(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size());
  try {
    const ImageDimensions dims = peek_dimensions(view);
    if (dims.width > max_side || dims.height > max_side) {
      throw HttpError(413, "image",
                      "image " + std::to_string(dims.width) + "x" + std::to_string(dims.height) +
                          " exceeds limit " + std::to_string(max_side) + "x" + std::to_string(max_side));
    }
    return decode_image(view);
  } catch (const FormatError& e) {
    throw HttpError(400, "image", e.what());
  }
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& field) {
  auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParamError(field, "'" + field + "' is not valid JSON");
  return doc;
}

inline double parse_number(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParamError(field, "'" + field + "' must be a number");
  }
}

// Image bytes plus the remaining request fields, whichever form was used.
struct RequestFields {
  std::string image;
  std::optional<nlohmann::json> params;
  std::map<std::string, std::string> text;  // simulate number fields
};

inline RequestFields read_fields(const httplib::Request& req) {
  RequestFields out;
  static const char* kNumbers[] = {"factor", "user_d", "surfer_d", "diagonal"};
  if (req.is_multipart_form_data()) {
    if (!req.has_file("image")) throw HttpError(400, "image", "missing multipart field 'image'");
    out.image = req.get_file_value("image").content;
    if (req.has_file("params")) out.params = parse_json_text(req.get_file_value("params").content, "params");
    for (const char* k : kNumbers) {
      if (req.has_file(k)) out.text[k] = req.get_file_value(k).content;
    }
  } else if (req.get_header_value("Content-Type").rfind("application/json", 0) == 0) {
    const auto doc = parse_json_text(req.body, "body");
    if (!doc.is_object()) throw ParamError("body", "body must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
      if (key == "image") {
        if (!value.is_string()) throw HttpError(400, "image", "'image' must be a base64 string");
        try {
          const auto bytes = base64_decode(value.get<std::string>());
          out.image.assign(bytes.begin(), bytes.end());
        } catch (const DomainError& e) {
          throw HttpError(400, "image", e.what());
        }
      } else if (key == "params") {
        out.params = value;
      } else if (key == "factor" || key == "user_d" || key == "surfer_d" || key == "diagonal") {
        if (!value.is_number()) throw ParamError(key, "'" + key + "' must be a number");
        out.text[key] = value.dump();
      } else {
        throw ParamError(key, "unknown field '" + key + "'");
      }
    }
  } else {
    out.image = req.body;
    if (req.has_param("params")) out.params = parse_json_text(req.get_param_value("params"), "params");
    for (const char* k : kNumbers) {
      if (req.has_param(k)) out.text[k] = req.get_param_value(k);
    }
  }
  return out;
}

inline void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename Fn>
void guarded(httplib::Response& res, Fn fn) {
  try {
    fn();
  } catch (const HttpError& e) {
    send_json(res, e.status(), {{"error", e.what()}, {"field", e.field()}});
  } catch (const ParamError& e) {
    send_json(res, 400, {{"error", e.what()}, {"field", e.field()}});
  } catch (const DomainError& e) {
    send_json(res, 400, {{"error", e.what()}, {"field", ""}});
  } catch (const std::bad_alloc&) {
    send_json(res, 413, {{"error", "image too large to process"}, {"field", "image"}});
  } catch (const std::exception& e) {
    send_json(res, 500, {{"error", e.what()}, {"field", ""}});
  }
}

}  // namespace detail

inline std::vector<std::uint8_t> serve_protect(const detail::RequestFields& f, const ServeOptions& opt) {
  const ProtectParams params = f.params ? params_from_json(*f.params) : default_params();
  const ImageBuffer img = detail::decode_checked(f.image, opt.max_side);
  return encode_png(protect_with_params(img, params, Exec{opt.threads}));
}

inline std::vector<std::uint8_t> serve_simulate(const detail::RequestFields& f, const ServeOptions& opt) {
  SimulateInput in;
  for (const auto& [k, v] : f.text) {
    const double x = detail::parse_number(v, k);
    (k == "factor" ? in.factor : k == "user_d" ? in.user_d : k == "surfer_d" ? in.surfer_d : in.diagonal) = x;
  }
  const double factor = in.resolve();
  const ImageBuffer img = detail::decode_checked(f.image, opt.max_side);
  try {
    return encode_png(downscale_view(img, factor, Exec{opt.threads}));
  } catch (const DomainError& e) {
    throw ParamError("factor", e.what());
  }
}

inline void install_routes(httplib::Server& server, const ServeOptions& opt) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  // Base64 inflates by 4/3; leave room for a max-size image in any form.
  server.set_payload_max_length(static_cast<std::size_t>(opt.max_side) * opt.max_side * kChannels * 2 + (1 << 20));

  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    detail::send_json(res, 200, {{"status", "ok"}});
  });
  server.Get("/presets", [](const httplib::Request&, httplib::Response& res) {
    detail::send_json(res, 200, presets_json());
  });
  server.Post("/protect", [opt](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(res, [&] {
      const auto png = serve_protect(detail::read_fields(req), opt);
      res.set_content(std::string(png.begin(), png.end()), "image/png");
    });
  });
  server.Post("/simulate", [opt](const httplib::Request& req, httplib::Response& res) {
    detail::guarded(res, [&] {
      const auto png = serve_simulate(detail::read_fields(req), opt);
      res.set_content(std::string(png.begin(), png.end()), "image/png");
    });
  });
  if (opt.static_dir) {
    if (!server.set_mount_point("/", opt.static_dir->string())) {
      throw IoError("static directory not found: " + opt.static_dir->string());
    }
  }
}

// Owns the server; bind() then run() (blocking) and stop() from elsewhere.
class Service {
 public:
  explicit Service(ServeOptions opt) : opt_(std::move(opt)) {
    if (opt_.max_side < 1) throw DomainError("max image side must be >= 1");
    if (opt_.port < 0 || opt_.port > 65535) throw DomainError("port must be in [0,65535]");
    install_routes(server_, opt_);
  }

  // Returns the bound port.
  int bind() {
    if (opt_.port == 0) {
      port_ = server_.bind_to_any_port(opt_.host);
    } else {
      port_ = server_.bind_to_port(opt_.host, opt_.port) ? opt_.port : -1;
    }
    if (port_ < 0) throw IoError("cannot bind " + opt_.host + ":" + std::to_string(opt_.port));
    return port_;
  }

  void run() {
    if (!server_.listen_after_bind()) throw IoError("server stopped with an error");
  }

  void stop() { server_.stop(); }
  void wait_until_ready() const { server_.wait_until_ready(); }
  int port() const noexcept { return port_; }

 private:
  ServeOptions opt_;
  httplib::Server server_;
  int port_ = -1;
};

}  // namespace surfguard::app
