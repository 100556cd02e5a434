#pragma once

// Frame-by-frame protection for video. Codecs stay outside: frames arrive as
// raw RGB24 (e.g. `ffmpeg -f rawvideo -pix_fmt rgb24 -`) or as a directory of
// numbered PNGs, and leave in the same container.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "surfguard/error.hpp"
#include "surfguard/image.hpp"
#include "surfguard/io.hpp"
#include "surfguard/parallel.hpp"
#include "surfguard/shield.hpp"

namespace surfguard::app {

class TruncatedFrameError : public IoError {
 public:
  TruncatedFrameError(long long index, std::size_t got, std::size_t want)
      : IoError("truncated frame " + std::to_string(index) + ": got " + std::to_string(got) +
                " of " + std::to_string(want) + " bytes"),
        index_(index) {}
  long long frame_index() const noexcept { return index_; }

 private:
  long long index_;
};

struct VideoOptions {
  ProtectParams params = default_params();
  int threads = 0;
  int queue_frames = 8;  // frames held in memory at once
};

namespace detail {

// Frames of one batch are protected concurrently (one worker each) and
// returned in input order.
inline std::vector<ImageBuffer> protect_batch(const std::vector<ImageBuffer>& frames,
                                              const VideoOptions& opt) {
  std::vector<ImageBuffer> out(frames.size());
  const int n = static_cast<int>(frames.size());
  const Exec outer{std::min(Exec{opt.threads}.resolved(), std::max(n, 1))};
  const Exec inner{outer.resolved() > 1 ? 1 : opt.threads};
  parallel_for(n, outer, [&](int b, int e) {
    for (int i = b; i < e; ++i) {
      out[static_cast<std::size_t>(i)] = protect_with_params(frames[static_cast<std::size_t>(i)], opt.params, inner);
    }
  });
  return out;
}

}  // namespace detail

// Returns the number of frames written.
inline long long protect_raw_stream(std::istream& in, std::ostream& out, int width, int height,
                                    const VideoOptions& opt) {
  if (width < 1 || height < 1) throw DomainError("raw video needs --width and --height >= 1");
  opt.params.validate();
  const std::size_t frame_bytes = ImageBuffer::sample_count(width, height);
  const std::size_t queue = static_cast<std::size_t>(std::max(1, opt.queue_frames));
  long long index = 0;
  bool eof = false;
  while (!eof) {
    std::vector<ImageBuffer> batch;
    while (batch.size() < queue) {
      std::vector<std::uint8_t> bytes(frame_bytes);
      in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(frame_bytes));
      const auto got = static_cast<std::size_t>(in.gcount());
      if (got == 0) {
        eof = true;
        break;
      }
      if (got < frame_bytes) {
        // Flush what was complete before reporting the bad frame.
        for (const auto& f : detail::protect_batch(batch, opt)) {
          out.write(reinterpret_cast<const char*>(f.data().data()), static_cast<std::streamsize>(frame_bytes));
        }
        out.flush();
        throw TruncatedFrameError(index + static_cast<long long>(batch.size()), got, frame_bytes);
      }
      batch.emplace_back(width, height, std::move(bytes));
    }
    for (const auto& f : detail::protect_batch(batch, opt)) {
      out.write(reinterpret_cast<const char*>(f.data().data()), static_cast<std::streamsize>(frame_bytes));
    }
    if (!out) throw IoError("write to output stream failed");
    index += static_cast<long long>(batch.size());
  }
  out.flush();
  return index;
}

// Every *.png in in_dir (sorted by name) goes to out_dir under the same name.
inline long long protect_png_directory(const std::filesystem::path& in_dir,
                                       const std::filesystem::path& out_dir, const VideoOptions& opt) {
  namespace fs = std::filesystem;
  opt.params.validate();
  if (!fs::is_directory(in_dir)) throw IoError("not a directory: " + in_dir.string());
  std::vector<fs::path> names;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".png") names.push_back(entry.path().filename());
  }
  std::sort(names.begin(), names.end());
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir)) throw IoError("cannot create output directory " + out_dir.string());

  const std::size_t queue = static_cast<std::size_t>(std::max(1, opt.queue_frames));
  for (std::size_t start = 0; start < names.size(); start += queue) {
    const std::size_t end = std::min(names.size(), start + queue);
    std::vector<ImageBuffer> batch;
    for (std::size_t i = start; i < end; ++i) batch.push_back(load_image(in_dir / names[i]));
    const auto done = detail::protect_batch(batch, opt);
    for (std::size_t i = start; i < end; ++i) save_image(done[i - start], out_dir / names[i]);
  }
  return static_cast<long long>(names.size());
}

}  // namespace surfguard::app
