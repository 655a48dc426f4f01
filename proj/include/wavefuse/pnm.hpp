#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <string>
#include <variant>

#include "wavefuse/image.hpp"

namespace wavefuse {

/// Binary PNM header. Only P5 (graymap) and P6 (pixmap) at maxval 255 are
/// accepted.
struct PnmHeader {
  std::string magic;  // "P5" or "P6"
  int width = 0;
  int height = 0;
  int maxval = 255;
};

namespace detail {

struct PnmCursor {
  const std::string& bytes;
  std::size_t pos = 0;

  bool eof() const { return pos >= bytes.size(); }
  unsigned char peek() const { return static_cast<unsigned char>(bytes[pos]); }

  // Header tokens are separated by whitespace; '#' starts a comment that
  // runs to end of line.
  void skip_space_and_comments() {
    while (!eof()) {
      if (std::isspace(peek())) {
        ++pos;
      } else if (peek() == '#') {
        while (!eof() && peek() != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  int read_uint() {
    skip_space_and_comments();
    if (eof() || !std::isdigit(peek())) {
      fail(ErrorCode::Truncated, "malformed or truncated header");
    }
    long value = 0;
    while (!eof() && std::isdigit(peek())) {
      value = value * 10 + (peek() - '0');
      if (value > 1 << 30) fail(ErrorCode::Truncated, "header value out of range");
      ++pos;
    }
    return static_cast<int>(value);
  }
};

}  // namespace detail

/// Decode binary P5/P6 bytes. P5 yields an Image, P6 a ColorImage; samples
/// are mapped to scalars 0-255.
inline std::variant<Image, ColorImage> read_pnm(const std::string& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    fail(ErrorCode::Magic, "not a binary PGM/PPM signature");
  }
  const bool color = bytes[1] == '6';

  detail::PnmCursor cur{bytes, 2};
  const int width = cur.read_uint();
  const int height = cur.read_uint();
  const int maxval = cur.read_uint();
  if (maxval != 255) {
    fail(ErrorCode::Maxval, "maxval " + std::to_string(maxval) + ", only 255 supported");
  }
  if (width <= 0 || height <= 0) {
    fail(ErrorCode::Dim, "non-positive image dimensions");
  }
  // Exactly one whitespace byte separates the header from the raster.
  if (cur.eof() || !std::isspace(cur.peek())) {
    fail(ErrorCode::Truncated, "missing raster separator");
  }
  ++cur.pos;

  const std::size_t channels = color ? 3 : 1;
  const std::size_t need =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * channels;
  if (bytes.size() - cur.pos < need) {
    fail(ErrorCode::Truncated, "payload shorter than header promises");
  }

  const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data()) + cur.pos;
  if (!color) {
    Image img(height, width);
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) img(r, c) = static_cast<double>(*p++);
    }
    return img;
  }
  ColorImage img{Matrix(height, width), Matrix(height, width), Matrix(height, width)};
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      img.r(r, c) = static_cast<double>(*p++);
      img.g(r, c) = static_cast<double>(*p++);
      img.b(r, c) = static_cast<double>(*p++);
    }
  }
  return img;
}

/// Canonical P5 encoding: "P5\n<w> <h>\n255\n" followed by row-major samples,
/// rounded half up and clamped to [0, 255].
inline std::string write_pnm(const Image& img) {
  std::string out = "P5\n" + std::to_string(img.cols()) + " " +
                    std::to_string(img.rows()) + "\n255\n";
  out.reserve(out.size() + img.size());
  for (int r = 0; r < img.rows(); ++r) {
    for (int c = 0; c < img.cols(); ++c) {
      out.push_back(static_cast<char>(quantize255(img(r, c))));
    }
  }
  return out;
}

inline std::string write_pnm(const ColorImage& img) {
  if (!img.valid()) fail(ErrorCode::ShapeMismatch, "color planes differ in size");
  std::string out = "P6\n" + std::to_string(img.cols()) + " " +
                    std::to_string(img.rows()) + "\n255\n";
  out.reserve(out.size() + img.r.size() * 3);
  for (int r = 0; r < img.rows(); ++r) {
    for (int c = 0; c < img.cols(); ++c) {
      out.push_back(static_cast<char>(quantize255(img.r(r, c))));
      out.push_back(static_cast<char>(quantize255(img.g(r, c))));
      out.push_back(static_cast<char>(quantize255(img.b(r, c))));
    }
  }
  return out;
}

inline std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return bytes;
}

inline void write_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing '" + path + "'");
}

inline std::variant<Image, ColorImage> read_pnm_file(const std::string& path) {
  return read_pnm(read_bytes(path));
}

}  // namespace wavefuse
