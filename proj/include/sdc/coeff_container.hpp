#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "sdc/dct_pipeline.hpp"

namespace sdc {

// zigzag position -> natural (row-major) index.
inline constexpr std::array<int, kBlockSize> kZigzagToNatural = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,   //
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,  //
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,  //
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63,
};

inline constexpr std::array<char, 4> kContainerMagic = {'S', 'D', 'C', '1'};
// magic + width + height + qf + 64 table bytes + block_count
inline constexpr std::size_t kContainerHeaderSize = 4 + 4 + 4 + 4 + 64 + 4;

std::vector<std::uint8_t> serialize_container(const CoeffPlane& plane);
CoeffPlane parse_container(std::span<const std::uint8_t> bytes);

void write_container(const CoeffPlane& plane, const std::filesystem::path& path);
CoeffPlane read_container(const std::filesystem::path& path);

struct StreamEntry {
  std::uint32_t block = 0;
  std::uint8_t zigzag = 0;  // 1..63
  int value = 0;
  // Compress-time data; NaN when the plane came from a container.
  double pre_round = 0.0;
  double rounding_error = 0.0;
};

// Ordered non-zero AC coefficients with back-references into their plane.
//
// Embedders change `value` in place. An F5 shrinkage leaves its entry in the
// stream with value 0 so that write_back clears the coefficient.
struct CoeffStream {
  std::vector<StreamEntry> entries;
  bool has_rounding_errors = false;

  std::size_t size() const noexcept { return entries.size(); }
};

// xorshift64* generator used for the keyed coefficient permutation.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed) : state_(seed != 0 ? seed : 0x9E3779B97F4A7C15ULL) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Canonical order is raster block order, then ascending zigzag position. With a
// key, all 63*blocks AC slots are shuffled first and the non-zero ones kept in
// shuffled order, so covers and stegos that differ only by new zeros share
// their relative order.
CoeffStream extract_stream(const CoeffPlane& plane, std::optional<std::uint64_t> key = std::nullopt);

// Copies each entry's value back to (block, zigzag). Other coefficients are untouched.
CoeffPlane write_back(const CoeffStream& stream, CoeffPlane plane);

}  // namespace sdc
