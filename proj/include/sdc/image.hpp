#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <vector>

namespace sdc {

// 8-bit grayscale image, row-major.
struct PixelImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> samples;

  PixelImage() = default;
  PixelImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), samples(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

  bool empty() const noexcept { return width <= 0 || height <= 0; }

  std::uint8_t at(int x, int y) const { return samples[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return samples[static_cast<std::size_t>(y) * width + x]; }

  bool operator==(const PixelImage&) const = default;
};

// Binary PGM (P5), maxval <= 255.
PixelImage read_pgm(std::istream& in);
PixelImage read_pgm(const std::filesystem::path& path);
void write_pgm(std::ostream& out, const PixelImage& img);
void write_pgm(const std::filesystem::path& path, const PixelImage& img);

}  // namespace sdc
