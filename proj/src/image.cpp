#include "sdc/image.hpp"

#include <cctype>
#include <fstream>
#include <string>

#include "sdc/error.hpp"

namespace sdc {

namespace {

std::size_t offset_of(std::istream& in) {
  in.clear();
  const auto pos = in.tellg();
  return pos < 0 ? 0 : static_cast<std::size_t>(pos);
}

// Skips whitespace and '#' comments, then reads one unsigned decimal token.
int read_header_int(std::istream& in) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == EOF || !std::isdigit(c)) {
    throw FormatError("PGM header: expected integer", offset_of(in));
  }
  long value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > 1'000'000) throw FormatError("PGM header: value too large", offset_of(in));
    c = in.get();
  }
  // Exactly one whitespace byte separates the last header field from the raster.
  if (c != EOF && !std::isspace(c)) {
    throw FormatError("PGM header: malformed integer", offset_of(in));
  }
  return static_cast<int>(value);
}

}  // namespace

PixelImage read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5') {
    throw FormatError("not a binary PGM (P5) file", 0);
  }
  const int width = read_header_int(in);
  const int height = read_header_int(in);
  const int maxval = read_header_int(in);
  if (width <= 0 || height <= 0) throw FormatError("PGM: zero dimension", offset_of(in));
  if (maxval < 1 || maxval > 255) throw FormatError("PGM: only 8-bit maxval supported", offset_of(in));

  PixelImage img(width, height);
  const auto start = offset_of(in);
  in.read(reinterpret_cast<char*>(img.samples.data()), static_cast<std::streamsize>(img.samples.size()));
  if (static_cast<std::size_t>(in.gcount()) != img.samples.size()) {
    throw FormatError("PGM: truncated raster", start + static_cast<std::size_t>(in.gcount()));
  }
  return img;
}

PixelImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_pgm(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what(), e.offset());
  }
}

void write_pgm(std::ostream& out, const PixelImage& img) {
  if (img.empty()) throw ParameterError("write_pgm: empty image");
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.samples.data()), static_cast<std::streamsize>(img.samples.size()));
}

void write_pgm(const std::filesystem::path& path, const PixelImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_pgm(out, img);
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace sdc
