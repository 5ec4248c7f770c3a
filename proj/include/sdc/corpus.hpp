#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sdc/image.hpp"

namespace sdc {

enum class TextureFamily { kSmoothedNoise, kGradientNoise, kBlobs };

std::string_view texture_name(TextureFamily f) noexcept;

// Image i uses family i % 3, so any three consecutive images cover all families.
TextureFamily texture_of(std::size_t index) noexcept;

PixelImage generate_cover(TextureFamily family, int width, int height, std::uint64_t seed);

std::vector<PixelImage> generate_corpus(std::size_t n, int width, int height, std::uint64_t seed);

// Writes cover_0000.pgm, cover_0001.pgm, ... and returns the paths.
std::vector<std::filesystem::path> write_corpus(const std::vector<PixelImage>& corpus,
                                                const std::filesystem::path& dir);

// All *.pgm files in `dir`, sorted by name.
std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& dir);

}  // namespace sdc
