#include "sivt/image_io.hpp"

#include <fstream>
#include <string>

namespace sivt {

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (!std::isspace(ch)) {
      tok.push_back(static_cast<char>(ch));
      while ((ch = in.peek()) != EOF && !std::isspace(ch)) {
        tok.push_back(static_cast<char>(in.get()));
      }
      return tok;
    }
  }
  return tok;
}

struct PnmHeader {
  std::string magic;
  int w = 0, h = 0, maxval = 0;
};

PnmHeader read_header(std::ifstream& in, const std::filesystem::path& path) {
  PnmHeader hd;
  hd.magic = next_token(in);
  try {
    hd.w = std::stoi(next_token(in));
    hd.h = std::stoi(next_token(in));
    hd.maxval = std::stoi(next_token(in));
  } catch (const std::exception&) {
    throw DecodeError("malformed image header: " + path.string());
  }
  if (hd.w <= 0 || hd.h <= 0) throw DecodeError("empty image: " + path.string());
  in.get();  // single whitespace byte before raster
  return hd;
}

std::ifstream open_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  return in;
}

std::ofstream open_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());
  return out;
}

ImageU8 read_pnm8(const std::filesystem::path& path, const std::string& magic, int channels) {
  std::ifstream in = open_read(path);
  const PnmHeader hd = read_header(in, path);
  if (hd.magic != magic)
    throw DecodeError("unsupported image format '" + hd.magic + "' (want " + magic +
                      "): " + path.string());
  if (hd.maxval != 255)
    throw DecodeError("unsupported maxval " + std::to_string(hd.maxval) + ": " + path.string());
  ImageU8 img(hd.h, hd.w, channels);
  in.read(reinterpret_cast<char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.data.size()))
    throw DecodeError("truncated image data: " + path.string());
  return img;
}

void write_pnm8(const std::filesystem::path& path, const ImageU8& img, const std::string& magic,
                int channels) {
  if (img.c != channels) throw ShapeError("image channel count does not match format");
  std::ofstream out = open_write(path);
  out << magic << "\n" << img.w << " " << img.h << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data.data()),
            static_cast<std::streamsize>(img.data.size()));
  if (!out) throw IoError("short write: " + path.string());
}

}  // namespace

ImageU8 read_image_rgb(const std::filesystem::path& path) { return read_pnm8(path, "P6", 3); }

void write_image_rgb(const std::filesystem::path& path, const ImageU8& img) {
  write_pnm8(path, img, "P6", 3);
}

ImageU8 read_image_gray(const std::filesystem::path& path) { return read_pnm8(path, "P5", 1); }

void write_image_gray(const std::filesystem::path& path, const ImageU8& img) {
  write_pnm8(path, img, "P5", 1);
}

void write_gray16(const std::filesystem::path& path, const std::vector<std::uint16_t>& data,
                  int h, int w) {
  if (static_cast<std::size_t>(h) * w != data.size())
    throw ShapeError("gray16 buffer size does not match dimensions");
  std::ofstream out = open_write(path);
  out << "P5\n" << w << " " << h << "\n65535\n";
  std::vector<std::uint8_t> bytes(data.size() * 2);
  for (std::size_t i = 0; i < data.size(); ++i) {
    bytes[2 * i] = static_cast<std::uint8_t>(data[i] >> 8);
    bytes[2 * i + 1] = static_cast<std::uint8_t>(data[i] & 0xff);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write: " + path.string());
}

std::vector<std::uint16_t> read_gray16(const std::filesystem::path& path, int& h, int& w) {
  std::ifstream in = open_read(path);
  const PnmHeader hd = read_header(in, path);
  if (hd.magic != "P5" || hd.maxval != 65535)
    throw DecodeError("not a 16-bit PGM: " + path.string());
  h = hd.h;
  w = hd.w;
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(hd.h) * hd.w * 2);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size()))
    throw DecodeError("truncated image data: " + path.string());
  std::vector<std::uint16_t> data(bytes.size() / 2);
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = static_cast<std::uint16_t>((bytes[2 * i] << 8) | bytes[2 * i + 1]);
  }
  return data;
}

}  // namespace sivt
