#pragma once

// Live label-detection client for a JSON-over-HTTPS "images:annotate" style
// endpoint.
//
// Request (POST <base>/v1/images:annotate?key=<API key>):
//   {"requests": [{"image": {"content": "<base64 PNG>"},
//                  "features": [{"type": "LABEL_DETECTION", "maxResults": N}]}]}
// Response:
//   {"responses": [{"labelAnnotations": [{"description": "Cat", "score": 0.98}, ...]}]}
//   or {"responses": [{"error": {"message": "..."}}]}
//
// The API key comes from the SURFGUARD_VISION_API_KEY environment variable.
// Request building and response parsing are always available; the HTTPS
// transport needs the build option SURFGUARD_LIVE_RECOGNITION (OpenSSL).

#include <cstdlib>
#include <string>

#include <nlohmann/json.hpp>

#include "surfguard/encoding.hpp"
#include "surfguard/error.hpp"
#include "surfguard/io.hpp"
#include "surfguard/metrics.hpp"

#ifdef SURFGUARD_WITH_LIVE_RECOGNITION
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"
#endif

namespace surfguard {

inline constexpr const char* kVisionApiKeyEnv = "SURFGUARD_VISION_API_KEY";

inline nlohmann::json vision_annotate_request(const ImageBuffer& img, int max_results = 20) {
  const auto png = encode_png(img);
  return {{"requests",
           nlohmann::json::array({{{"image", {{"content", base64_encode(png)}}},
                                   {"features", nlohmann::json::array({{{"type", "LABEL_DETECTION"},
                                                                        {"maxResults", max_results}}})}}})}};
}

inline RecognitionResult parse_vision_annotate_response(const nlohmann::json& doc) {
  RecognitionResult result;
  result.source = RecognitionSource::live;
  if (!doc.is_object() || !doc.contains("responses") || !doc["responses"].is_array() ||
      doc["responses"].empty()) {
    throw FormatError("JSON", "annotate response has no 'responses' entry");
  }
  const auto& first = doc["responses"][0];
  if (first.contains("error")) {
    throw TransportError("annotate error: " + first["error"].value("message", std::string("unknown")));
  }
  if (!first.contains("labelAnnotations")) return result;
  for (const auto& a : first["labelAnnotations"]) {
    Label l{a.value("description", std::string()), a.value("score", 0.0)};
    if (l.text.empty()) continue;
    if (!(l.confidence >= 0.0 && l.confidence <= 1.0)) {
      throw FormatError("JSON", "annotate score outside [0,1] for '" + l.text + "'");
    }
    result.labels.push_back(std::move(l));
  }
  return result;
}

#ifdef SURFGUARD_WITH_LIVE_RECOGNITION

// Blocking client; each call opens its own connection, so independent
// requests may run concurrently.
class VisionHttpClient final : public RecognitionClient {
 public:
  explicit VisionHttpClient(std::string api_key,
                            std::string base_url = "https://vision.googleapis.com",
                            int max_results = 20)
      : api_key_(std::move(api_key)), base_url_(std::move(base_url)), max_results_(max_results) {
    if (api_key_.empty()) throw DomainError("vision client: empty API key");
  }

  static VisionHttpClient from_environment() {
    const char* key = std::getenv(kVisionApiKeyEnv);
    if (key == nullptr || *key == '\0') {
      throw DomainError(std::string("environment variable ") + kVisionApiKeyEnv + " is not set");
    }
    return VisionHttpClient(key);
  }

  RecognitionResult recognize(const ImageBuffer& img) override {
    httplib::Client client(base_url_);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    const std::string body = vision_annotate_request(img, max_results_).dump();
    auto res = client.Post("/v1/images:annotate?key=" + api_key_, body, "application/json");
    if (!res) {
      throw TransportError("annotate request failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw TransportError("annotate request returned HTTP " + std::to_string(res->status));
    }
    auto doc = nlohmann::json::parse(res->body, nullptr, false);
    if (doc.is_discarded()) throw FormatError("JSON", "annotate response is not JSON");
    return parse_vision_annotate_response(doc);
  }

 private:
  std::string api_key_;
  std::string base_url_;
  int max_results_;
};

#endif  // SURFGUARD_WITH_LIVE_RECOGNITION

}  // namespace surfguard
