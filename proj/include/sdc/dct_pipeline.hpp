#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sdc/image.hpp"

namespace sdc {

inline constexpr int kBlockSide = 8;
inline constexpr int kBlockSize = 64;

// 8x8 blocks in natural (row-major) order; index = row * 8 + col.
using RealBlock = std::array<double, kBlockSize>;
using IntBlock = std::array<int, kBlockSize>;

// JPEG Annex K luminance table, natural order.
inline constexpr std::array<int, kBlockSize> kStandardLuminanceTable = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99,
};

struct QuantTable {
  std::array<int, kBlockSize> entries{};
  int quality_factor = 50;

  bool operator==(const QuantTable&) const = default;
};

// Standard IJG quality scaling. QF=50 returns the base table unchanged.
QuantTable scale_quant_table(std::span<const int, kBlockSize> base, int quality_factor);

// Reads 64 whitespace-separated integers (natural order), each in [1,255].
std::array<int, kBlockSize> read_base_table(const std::filesystem::path& path);

// Orthonormal 2-D DCT-II of a level-shifted (-128) block.
RealBlock forward_block_dct(std::span<const std::uint8_t, kBlockSize> samples);

// Inverse of forward_block_dct, including the +128 level shift. Not clamped.
RealBlock inverse_block_dct(const RealBlock& coeffs);

RealBlock quantize(const RealBlock& dct, const QuantTable& table);

// Nearest integer, ties away from zero.
int round_half_away(double x);

struct RoundedBlock {
  IntBlock values{};
  RealBlock errors{};  // rounded - pre-round, each in [-0.5, 0.5]
};

RoundedBlock round_coeffs(const RealBlock& pre_round);

// Quantized coefficients of an image, tiled in raster block order.
//
// `pre_round` and `rounding_errors` exist only for planes produced by compress();
// planes read back from a container carry integers alone. The rounding errors
// describe the cover and are not updated when the integers are later modified.
struct CoeffPlane {
  int width = 0;   // original image dimensions, before edge padding
  int height = 0;
  int blocks_x = 0;
  int blocks_y = 0;
  QuantTable quant;
  std::vector<IntBlock> coeffs;
  std::vector<RealBlock> pre_round;
  std::vector<RealBlock> rounding_errors;

  std::size_t block_count() const noexcept { return coeffs.size(); }
  bool has_pre_round() const noexcept { return !pre_round.empty(); }
};

// Pads to a multiple of 8 by edge replication, transforms, quantizes and rounds.
CoeffPlane compress(const PixelImage& img, const QuantTable& table);
CoeffPlane compress(const PixelImage& img, int quality_factor);

// Dequantize, inverse DCT, +128, round and clamp to [0,255], crop to original dims.
PixelImage decompress(const CoeffPlane& plane);

}  // namespace sdc
