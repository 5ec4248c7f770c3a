#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/coeff_container.hpp"
#include "sdc/matrix_coding.hpp"

namespace sdc {

enum class Method { kF5, kMme, kMde };

Method parse_method(std::string_view name);
std::string_view method_name(Method m) noexcept;

inline constexpr int kLengthHeaderBits = 32;
// MDE carries the length header in fixed blocks of this many stream entries.
inline constexpr std::size_t kMdeHeaderBlockSize = 8;
inline constexpr std::size_t kMdeHeaderEntries = kLengthHeaderBits * kMdeHeaderBlockSize;

// 32-bit big-endian bit count followed by the payload.
Bits frame_message(std::span<const std::uint8_t> payload);

Bits bytes_to_bits(std::span<const std::uint8_t> bytes);  // MSB first
std::vector<std::uint8_t> bits_to_bytes(std::span<const std::uint8_t> bits);  // zero-padded

struct Modification {
  std::size_t stream_index = 0;
  int old_value = 0;
  int new_value = 0;
  double real_error = 0.0;  // |pre_round - new_value|, NaN without rounding data
};

struct EmbedReport {
  std::size_t modifications = 0;
  std::size_t shrinkages = 0;
  std::size_t coefficients_consumed = 0;
  std::vector<double> real_errors;  // one per modification when rounding data exists
  std::vector<Modification> changes;
};

struct EmbedResult {
  CoeffStream stream;
  EmbedReport report;
};

// Returns the neighbour of `value` (never 0) that the rounding error points toward.
// `rounding_error` is rounded - pre_round.
int eq8_modify(int value, double rounding_error);

EmbedResult f5_embed(CoeffStream stream, std::span<const std::uint8_t> payload, int bits_per_group);
Bits f5_extract(const CoeffStream& stream, int bits_per_group);

EmbedResult mme_embed(CoeffStream stream, std::span<const std::uint8_t> payload, int bits_per_group);
Bits mme_extract(const CoeffStream& stream, int bits_per_group);

struct BlockPartition {
  std::size_t alpha = 0;       // payload bits
  std::size_t n = 0;           // stream entries available
  std::size_t block_size = 0;  // floor(n / alpha)
  std::size_t leftover = 0;    // n mod alpha, left untouched

  std::size_t begin(std::size_t block) const noexcept { return block * block_size; }
  std::size_t end(std::size_t block) const noexcept { return (block + 1) * block_size; }
};

BlockPartition mde_partition(std::size_t n, std::size_t alpha);

// Parity of the block sum (non-negative residue).
int block_parity(std::span<const StreamEntry> block);

struct BlockChange {
  std::size_t index = 0;  // within the block
  int old_value = 0;
};

// Sets the block's parity to `bit` with at most one eq8 move, choosing the entry
// that lands closest to its pre-round value (lowest index on ties).
std::optional<BlockChange> mde_embed_block(std::span<StreamEntry> block, std::uint8_t bit);

EmbedResult mde_embed(CoeffStream stream, std::span<const std::uint8_t> payload);
Bits mde_extract(const CoeffStream& stream);

struct EmbedParams {
  Method method = Method::kMde;
  int bits_per_group = 3;  // F5 / MME only
};

EmbedResult embed(CoeffStream stream, std::span<const std::uint8_t> payload, const EmbedParams& params);
Bits extract(const CoeffStream& stream, const EmbedParams& params);

}  // namespace sdc
