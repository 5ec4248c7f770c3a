#include "sdc/matrix_coding.hpp"

#include <string>

#include "sdc/error.hpp"

namespace sdc {

HammingMatrix::HammingMatrix(int bits_per_group) : v_(bits_per_group), u_(0) {
  if (bits_per_group < 1 || bits_per_group > kMaxBits) {
    throw ParameterError("bits per group must be in [1," + std::to_string(kMaxBits) + "], got " +
                         std::to_string(bits_per_group));
  }
  u_ = (1 << v_) - 1;
}

std::vector<long> HammingMatrix::product(std::span<const int> coeffs) const {
  if (coeffs.size() != static_cast<std::size_t>(u_)) {
    throw ParameterError("group has " + std::to_string(coeffs.size()) + " coefficients, expected " +
                         std::to_string(u_));
  }
  std::vector<long> out(static_cast<std::size_t>(v_), 0);
  for (int row = 0; row < v_; ++row) {
    for (int col = 0; col < u_; ++col) {
      if (at(row, col)) out[row] += coeffs[col];
    }
  }
  return out;
}

HammingMatrix build_h(int bits_per_group) { return HammingMatrix(bits_per_group); }

Bits syndrome(const HammingMatrix& h, std::span<const int> coeffs) {
  const auto raw = h.product(coeffs);
  Bits bits(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) bits[i] = static_cast<std::uint8_t>(parity(raw[i]));
  return bits;
}

int locate(std::span<const std::uint8_t> syndrome_bits, std::span<const std::uint8_t> message_bits) {
  if (syndrome_bits.size() != message_bits.size()) {
    throw ParameterError("locate: syndrome and message lengths differ");
  }
  int position = 0;
  for (std::size_t i = 0; i < syndrome_bits.size(); ++i) {
    position = (position << 1) | ((message_bits[i] ^ syndrome_bits[i]) & 1);
  }
  return position;
}

Bits decode_bits(const HammingMatrix& h, std::span<const int> coeffs) { return syndrome(h, coeffs); }

}  // namespace sdc
