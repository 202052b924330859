#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "sivt/common.hpp"

namespace sivt {

// 8-bit interleaved raster, c in {1, 3}.
struct ImageU8 {
  int h = 0, w = 0, c = 0;
  std::vector<std::uint8_t> data;

  ImageU8() = default;
  ImageU8(int h_, int w_, int c_, std::uint8_t fill = 0)
      : h(h_), w(w_), c(c_), data(static_cast<std::size_t>(h_) * w_ * c_, fill) {}

  std::uint8_t& at(int y, int x, int ch) {
    return data[(static_cast<std::size_t>(y) * w + x) * c + ch];
  }
  std::uint8_t at(int y, int x, int ch) const {
    return data[(static_cast<std::size_t>(y) * w + x) * c + ch];
  }
};

// Binary PPM (P6, maxval 255). Anything else raises DecodeError; a missing
// or unreadable file raises IoError.
ImageU8 read_image_rgb(const std::filesystem::path& path);
void write_image_rgb(const std::filesystem::path& path, const ImageU8& img);

// Binary PGM (P5, maxval 255), used for ground-truth masks.
ImageU8 read_image_gray(const std::filesystem::path& path);
void write_image_gray(const std::filesystem::path& path, const ImageU8& img);

// 16-bit binary PGM (P5, maxval 65535, big-endian samples per the format).
void write_gray16(const std::filesystem::path& path, const std::vector<std::uint16_t>& data,
                  int h, int w);
std::vector<std::uint16_t> read_gray16(const std::filesystem::path& path, int& h, int& w);

}  // namespace sivt
