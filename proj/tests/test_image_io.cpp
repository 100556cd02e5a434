#include <gtest/gtest.h>

#include <png.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "surfguard/encoding.hpp"
#include "surfguard/io.hpp"
#include "test_util.hpp"

using namespace surfguard;
using namespace std::string_literals;
using surfguard::testing::random_image;
using surfguard::testing::TempDir;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

std::vector<std::uint8_t> png_with_format(int w, int h, png_uint_32 format, const std::vector<std::uint8_t>& raw) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = format;
  png_alloc_size_t size = 0;
  EXPECT_TRUE(png_image_write_to_memory(&image, nullptr, &size, 0, raw.data(), 0, nullptr));
  std::vector<std::uint8_t> out(size);
  EXPECT_TRUE(png_image_write_to_memory(&image, out.data(), &size, 0, raw.data(), 0, nullptr));
  out.resize(size);
  return out;
}

}  // namespace

TEST(ImageBuffer, RejectsBadDimensions) {
  EXPECT_THROW(ImageBuffer(0, 5), DomainError);
  EXPECT_THROW(ImageBuffer(5, -1), DomainError);
  EXPECT_THROW(ImageBuffer(2, 2, std::vector<std::uint8_t>(11)), DomainError);
  EXPECT_NO_THROW(ImageBuffer(2, 2, std::vector<std::uint8_t>(12)));
}

TEST(ImageBuffer, InterleavedLayout) {
  ImageBuffer img(3, 2);
  img.set_pixel(2, 1, 10, 20, 30);
  EXPECT_EQ(img.data()[(1 * 3 + 2) * 3 + 0], 10);
  EXPECT_EQ(img.at(2, 1, 1), 20);
  EXPECT_EQ(img.row(1)[2 * 3 + 2], 30);
  EXPECT_EQ(img.row_stride(), 9u);
}

TEST(ClampRound, HalfUpAndClamp) {
  EXPECT_EQ(clamp_round(0.49), 0);
  EXPECT_EQ(clamp_round(0.5), 1);
  EXPECT_EQ(clamp_round(127.5), 128);
  EXPECT_EQ(clamp_round(254.5), 255);
  EXPECT_EQ(clamp_round(1e9), 255);
  EXPECT_EQ(clamp_round(-0.2), 0);
  EXPECT_EQ(clamp_round(-40.0), 0);
  EXPECT_EQ(clamp_round(std::numeric_limits<double>::quiet_NaN()), 0);
  EXPECT_EQ(clamp_round(2.5f), 3);
}

TEST(Png, RoundTripIsLossless) {
  const ImageBuffer img = random_image(37, 19, 11);
  EXPECT_EQ(decode_image(encode_png(img)), img);
}

TEST(Png, AlphaIsDroppedNotComposited) {
  const std::vector<std::uint8_t> rgba{200, 100, 50, 0, 1, 2, 3, 128};
  const ImageBuffer img = decode_image(png_with_format(2, 1, PNG_FORMAT_RGBA, rgba));
  EXPECT_EQ(img, ImageBuffer(2, 1, std::vector<std::uint8_t>{200, 100, 50, 1, 2, 3}));
}

TEST(Png, GrayIsReplicated) {
  const ImageBuffer gray = decode_image(png_with_format(2, 1, PNG_FORMAT_GRAY, {7, 250}));
  EXPECT_EQ(gray, ImageBuffer(2, 1, std::vector<std::uint8_t>{7, 7, 7, 250, 250, 250}));
  const ImageBuffer ga = decode_image(png_with_format(1, 1, PNG_FORMAT_GA, {90, 0}));
  EXPECT_EQ(ga, ImageBuffer(1, 1, std::vector<std::uint8_t>{90, 90, 90}));
}

TEST(Ppm, EncodeHeaderAndRoundTrip) {
  const ImageBuffer img = random_image(4, 3, 5);
  const auto bytes = encode_ppm(img);
  const std::string header = "P6\n4 3\n255\n";
  ASSERT_EQ(bytes.size(), header.size() + 36);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + static_cast<long>(header.size())), header);
  EXPECT_EQ(decode_image(bytes), img);
}

TEST(Ppm, HeaderCommentsAndWhitespace) {
  auto bytes = bytes_of("P6 # made by hand\n 2\t1\n# max\n255 ");
  for (std::uint8_t v : {1, 2, 3, 4, 5, 6}) bytes.push_back(v);
  EXPECT_EQ(decode_image(bytes), ImageBuffer(2, 1, std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6}));
}

TEST(Ppm, RejectsUnsupportedAndTruncated) {
  EXPECT_THROW(decode_image(bytes_of("P6\n1 1\n65535\n\0\0\0\0\0\0")), FormatError);
  EXPECT_THROW(decode_image(bytes_of("P6\n2 2\n255\n\1\2\3")), FormatError);
  EXPECT_THROW(decode_image(bytes_of("P6\nx 2\n255\n")), FormatError);
}

TEST(Decode, NamesUnsupportedFormats) {
  const std::pair<std::string, std::string> cases[] = {
      {"\xff\xd8\xff\xe0 jfif", "JPEG"}, {"GIF89a....", "GIF"},        {"BM......", "BMP"},
      {"RIFF\0\0\0\0WEBPVP8 "s, "WebP"},  {"P3\n1 1\n255\n0 0 0", "PPM (ASCII P3)"},
      {"hello world", "unknown"},
  };
  for (const auto& [magic, name] : cases) {
    try {
      decode_image(std::vector<std::uint8_t>(magic.begin(), magic.end()));
      ADD_FAILURE() << name << " decoded";
    } catch (const FormatError& e) {
      EXPECT_EQ(e.format(), name);
      EXPECT_NE(std::string(e.what()).find(name), std::string::npos);
    }
  }
}

TEST(Decode, PeekDimensionsReadsHeaderOnly) {
  const ImageBuffer img = random_image(31, 7, 2);
  auto png = encode_png(img);
  const ImageDimensions d = peek_dimensions(png);
  EXPECT_EQ(d.width, 31);
  EXPECT_EQ(d.height, 7);
  const auto ppm = bytes_of("P6\n5000 4000\n255\n");  // no raster at all
  const ImageDimensions p = peek_dimensions(ppm);
  EXPECT_EQ(p.width, 5000);
  EXPECT_EQ(p.height, 4000);
}

TEST(Files, LoadSaveAndErrors) {
  TempDir dir("io");
  const ImageBuffer img = random_image(9, 8, 3);
  save_image(img, dir / "a.png");
  save_image(img, dir / "a.PPM");
  EXPECT_EQ(load_image(dir / "a.png"), img);
  EXPECT_EQ(load_image(dir / "a.PPM"), img);
  EXPECT_THROW(save_image(img, dir / "a.jpg"), FormatError);

  const auto missing = dir / "missing.png";
  try {
    load_image(missing);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(missing.string()), std::string::npos);
  }
  write_file_bytes(dir / "bad.png", bytes_of("GIF89a"));
  try {
    load_image(dir / "bad.png");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.format(), "GIF");
    EXPECT_NE(std::string(e.what()).find("bad.png"), std::string::npos);
  }
}

TEST(Encoding, ContentHashKnownVector) {
  const ImageBuffer img(2, 1, std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6});
  EXPECT_EQ(content_hash(img), "7819e9ad0fc64529a16d644e6593057123d1e3f2e3ffc355886c6a75719cca5a");
  // Same samples, different shape, different key.
  EXPECT_NE(content_hash(ImageBuffer(1, 2, std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6})), content_hash(img));
}

TEST(Encoding, Base64) {
  const std::vector<std::uint8_t> raw{0, 1, 2, 250, 251};
  EXPECT_EQ(base64_encode(raw), "AAEC+vs=");
  EXPECT_EQ(base64_decode("AAEC+vs="), raw);
  EXPECT_EQ(base64_decode("AAEC\n+vs="), raw);
  EXPECT_TRUE(base64_decode("").empty());
  for (std::size_t n = 0; n < 7; ++n) {
    std::vector<std::uint8_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::uint8_t>(i * 37 + 1);
    EXPECT_EQ(base64_decode(base64_encode(v)), v) << n;
  }
  EXPECT_THROW(base64_decode("abc"), DomainError);
  EXPECT_THROW(base64_decode("ab!@"), DomainError);
}
