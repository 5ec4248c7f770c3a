#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sdc {

using Bits = std::vector<std::uint8_t>;  // one bit per element, values 0/1

// v x (2^v - 1) parity-check matrix. Column j (1-based) is the v-bit binary of j
// with the most significant bit in row 0.
class HammingMatrix {
 public:
  static constexpr int kMaxBits = 8;

  explicit HammingMatrix(int bits_per_group);

  int bits() const noexcept { return v_; }
  int group_size() const noexcept { return u_; }

  std::uint8_t at(int row, int col) const noexcept {
    return static_cast<std::uint8_t>(((col + 1) >> (v_ - 1 - row)) & 1);
  }

  // Raw products H * c over the integers, before reduction.
  std::vector<long> product(std::span<const int> coeffs) const;

 private:
  int v_;
  int u_;
};

HammingMatrix build_h(int bits_per_group);

// Non-negative residue mod 2.
inline int parity(long x) noexcept { return static_cast<int>(((x % 2) + 2) % 2); }

// (H * c) mod 2.
Bits syndrome(const HammingMatrix& h, std::span<const int> coeffs);

// 1-based position whose column equals (bits - s) mod 2; 0 means no change needed.
int locate(std::span<const std::uint8_t> syndrome_bits, std::span<const std::uint8_t> message_bits);

Bits decode_bits(const HammingMatrix& h, std::span<const int> coeffs);

}  // namespace sdc
