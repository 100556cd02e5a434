#pragma once

// PNG and binary PPM (P6) reading/writing. PNG goes through libpng's
// simplified API; P6 is handled here.

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surfguard/error.hpp"
#include "surfguard/image.hpp"

namespace surfguard {

enum class ImageFormat { png, ppm };

namespace detail {

inline bool starts_with(std::span<const std::uint8_t> bytes, std::string_view magic) {
  if (bytes.size() < magic.size()) return false;
  return std::equal(magic.begin(), magic.end(), bytes.begin(),
                    [](char m, std::uint8_t b) { return static_cast<std::uint8_t>(m) == b; });
}

inline std::string sniff_format_name(std::span<const std::uint8_t> bytes) {
  if (starts_with(bytes, "\x89PNG\r\n\x1a\n")) return "PNG";
  if (starts_with(bytes, "P6")) return "PPM";
  if (starts_with(bytes, "\xff\xd8\xff")) return "JPEG";
  if (starts_with(bytes, "GIF8")) return "GIF";
  if (starts_with(bytes, "BM")) return "BMP";
  if (starts_with(bytes, "II*") || starts_with(bytes, "MM\0*")) return "TIFF";
  if (bytes.size() >= 12 && starts_with(bytes, "RIFF") &&
      std::memcmp(bytes.data() + 8, "WEBP", 4) == 0) {
    return "WebP";
  }
  if (starts_with(bytes, "P3")) return "PPM (ASCII P3)";
  if (starts_with(bytes, "P5")) return "PGM";
  return "unknown";
}

inline ImageBuffer decode_png(std::span<const std::uint8_t> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw FormatError("PNG", std::string("PNG decode failed: ") + image.message);
  }

  const bool has_color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  const bool has_alpha = (image.format & PNG_FORMAT_FLAG_ALPHA) != 0;
  // Read in the stored layout and expand ourselves; asking libpng for RGB
  // from an alpha image would composite instead of dropping alpha.
  if (has_color) {
    image.format = has_alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
  } else {
    image.format = has_alpha ? PNG_FORMAT_GA : PNG_FORMAT_GRAY;
  }
  const int in_channels = static_cast<int>(PNG_IMAGE_SAMPLE_CHANNELS(image.format));

  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, raw.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw FormatError("PNG", "PNG decode failed: " + msg);
  }

  ImageBuffer out(width, height);
  auto dst = out.data();
  const std::size_t pixels = out.pixel_count();
  for (std::size_t p = 0; p < pixels; ++p) {
    const std::uint8_t* s = raw.data() + p * static_cast<std::size_t>(in_channels);
    std::uint8_t* d = dst.data() + p * kChannels;
    if (has_color) {
      d[0] = s[0];
      d[1] = s[1];
      d[2] = s[2];
    } else {
      d[0] = d[1] = d[2] = s[0];
    }
  }
  return out;
}

// Header token reader for PNM: whitespace and '#' comments between tokens.
class PnmHeader {
 public:
  explicit PnmHeader(std::span<const std::uint8_t> bytes) : bytes_(bytes), pos_(2) {}

  long next_int() {
    skip_space_and_comments();
    long v = 0;
    int digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1'000'000'000L) throw FormatError("PPM", "PPM header value too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw FormatError("PPM", "malformed PPM header");
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw FormatError("PPM", "malformed PPM header");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_;
};

inline ImageBuffer decode_ppm(std::span<const std::uint8_t> bytes) {
  PnmHeader header(bytes);
  const long width = header.next_int();
  const long height = header.next_int();
  const long maxval = header.next_int();
  if (maxval != 255) {
    throw FormatError("PPM", "PPM maxval " + std::to_string(maxval) + " unsupported (need 255)");
  }
  if (width < 1 || height < 1 || width > 1'000'000 || height > 1'000'000) {
    throw FormatError("PPM", "PPM dimensions out of range");
  }
  const std::size_t offset = header.raster_offset();
  const std::size_t need = ImageBuffer::sample_count(static_cast<int>(width), static_cast<int>(height));
  if (bytes.size() < offset + need) {
    throw FormatError("PPM", "PPM raster truncated: need " + std::to_string(need) +
                                 " bytes, have " + std::to_string(bytes.size() - offset));
  }
  std::vector<std::uint8_t> data(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                 bytes.begin() + static_cast<std::ptrdiff_t>(offset + need));
  return ImageBuffer(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

}  // namespace detail

inline ImageBuffer decode_image(std::span<const std::uint8_t> bytes) {
  const std::string name = detail::sniff_format_name(bytes);
  if (name == "PNG") return detail::decode_png(bytes);
  if (name == "PPM") return detail::decode_ppm(bytes);
  throw FormatError(name, "unsupported image format: " + name);
}

struct ImageDimensions {
  int width = 0;
  int height = 0;
};

// Reads only the header; lets callers reject oversized images before
// allocating the raster.
inline ImageDimensions peek_dimensions(std::span<const std::uint8_t> bytes) {
  const std::string name = detail::sniff_format_name(bytes);
  if (name == "PNG") {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
      throw FormatError("PNG", std::string("PNG decode failed: ") + image.message);
    }
    const ImageDimensions dims{static_cast<int>(image.width), static_cast<int>(image.height)};
    png_image_free(&image);
    return dims;
  }
  if (name == "PPM") {
    detail::PnmHeader header(bytes);
    const long w = header.next_int();
    const long h = header.next_int();
    if (w < 1 || h < 1 || w > 1'000'000 || h > 1'000'000) {
      throw FormatError("PPM", "PPM dimensions out of range");
    }
    return {static_cast<int>(w), static_cast<int>(h)};
  }
  throw FormatError(name, "unsupported image format: " + name);
}

inline std::vector<std::uint8_t> encode_png(const ImageBuffer& img) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGB;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, img.data().data(), 0, nullptr)) {
    throw FormatError("PNG", std::string("PNG encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, img.data().data(), 0, nullptr)) {
    throw FormatError("PNG", std::string("PNG encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

inline std::vector<std::uint8_t> encode_ppm(const ImageBuffer& img) {
  const std::string header = "P6\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.data().begin(), img.data().end());
  return out;
}

inline ImageFormat format_for_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".png") return ImageFormat::png;
  if (ext == ".ppm") return ImageFormat::ppm;
  throw FormatError(ext.empty() ? "unknown" : ext,
                    "unsupported output format '" + ext + "' for " + path.string() +
                        " (use .png or .ppm)");
}

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

inline void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

inline ImageBuffer load_image(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return decode_image(bytes);
  } catch (const FormatError& e) {
    throw FormatError(e.format(), path.string() + ": " + e.what());
  }
}

inline void save_image(const ImageBuffer& img, const std::filesystem::path& path) {
  const ImageFormat fmt = format_for_path(path);
  write_file_bytes(path, fmt == ImageFormat::png ? encode_png(img) : encode_ppm(img));
}

}  // namespace surfguard
