#include "sdc/embedders.hpp"

#include <cmath>
#include <limits>

#include "sdc/error.hpp"

namespace sdc {

Method parse_method(std::string_view name) {
  if (name == "f5") return Method::kF5;
  if (name == "mme") return Method::kMme;
  if (name == "mde") return Method::kMde;
  throw ParameterError("unknown method '" + std::string(name) + "' (expected f5, mme or mde)");
}

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::kF5:
      return "f5";
    case Method::kMme:
      return "mme";
    case Method::kMde:
      return "mde";
  }
  return "?";
}

Bits frame_message(std::span<const std::uint8_t> payload) {
  if (payload.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ParameterError("payload longer than 2^32 - 1 bits");
  }
  const auto len = static_cast<std::uint32_t>(payload.size());
  Bits framed;
  framed.reserve(kLengthHeaderBits + payload.size());
  for (int i = kLengthHeaderBits - 1; i >= 0; --i) framed.push_back(static_cast<std::uint8_t>((len >> i) & 1));
  for (auto b : payload) framed.push_back(b & 1);
  return framed;
}

Bits bytes_to_bits(std::span<const std::uint8_t> bytes) {
  Bits bits;
  bits.reserve(bytes.size() * 8);
  for (auto byte : bytes) {
    for (int i = 7; i >= 0; --i) bits.push_back(static_cast<std::uint8_t>((byte >> i) & 1));
  }
  return bits;
}

std::vector<std::uint8_t> bits_to_bytes(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] & 1) bytes[i / 8] |= static_cast<std::uint8_t>(0x80 >> (i % 8));
  }
  return bytes;
}

int eq8_modify(int value, double rounding_error) {
  if (value == 0) throw InternalError("eq8_modify called on a zero coefficient");
  if (rounding_error <= 0.0) return value == -1 ? -2 : value + 1;
  return value == 1 ? 2 : value - 1;
}

namespace {

void record(EmbedReport& report, const StreamEntry& entry, std::size_t index, int old_value, bool with_errors) {
  Modification m;
  m.stream_index = index;
  m.old_value = old_value;
  m.new_value = entry.value;
  m.real_error = with_errors ? std::abs(entry.pre_round - entry.value) : std::numeric_limits<double>::quiet_NaN();
  ++report.modifications;
  if (with_errors) report.real_errors.push_back(m.real_error);
  report.changes.push_back(m);
}

// Shared F5/MME driver: consecutive groups of live (non-zero) entries, one
// syndrome-coded chunk per group.
template <typename ModifyFn>
EmbedResult matrix_embed(CoeffStream stream, std::span<const std::uint8_t> payload, int bits_per_group,
                         ModifyFn modify) {
  const HammingMatrix header_h(1);
  const HammingMatrix payload_h(bits_per_group);
  const Bits framed = frame_message(payload);
  const std::size_t payload_groups = (payload.size() + bits_per_group - 1) / bits_per_group;

  EmbedResult result;
  auto& entries = stream.entries;
  std::size_t cursor = 0;
  std::vector<std::size_t> group;
  std::vector<int> values;

  auto embed_chunk = [&](const HammingMatrix& h, const Bits& chunk, std::size_t groups_left) {
    const auto u = static_cast<std::size_t>(h.group_size());
    while (true) {
      group.clear();
      for (std::size_t i = cursor; i < entries.size() && group.size() < u; ++i) {
        if (entries[i].value != 0) group.push_back(i);
      }
      if (group.size() < u) {
        throw CapacityError("not enough non-zero AC coefficients", cursor + groups_left * u, entries.size());
      }
      values.clear();
      for (auto i : group) values.push_back(entries[i].value);
      const int p = locate(syndrome(h, values), chunk);
      if (p == 0) break;
      const std::size_t target = group[static_cast<std::size_t>(p - 1)];
      const int old_value = entries[target].value;
      entries[target].value = modify(entries[target]);
      record(result.report, entries[target], target, old_value, stream.has_rounding_errors);
      if (entries[target].value != 0) break;
      ++result.report.shrinkages;  // refill the group from the next live entry
    }
    cursor = group.back() + 1;
  };

  Bits chunk(1);
  for (int i = 0; i < kLengthHeaderBits; ++i) {
    chunk[0] = framed[i];
    embed_chunk(header_h, chunk, (kLengthHeaderBits - i) + payload_groups * payload_h.group_size());
  }
  chunk.assign(static_cast<std::size_t>(bits_per_group), 0);
  for (std::size_t g = 0; g < payload_groups; ++g) {
    for (int b = 0; b < bits_per_group; ++b) {
      const std::size_t idx = g * bits_per_group + b;
      chunk[b] = idx < payload.size() ? (payload[idx] & 1) : 0;
    }
    embed_chunk(payload_h, chunk, (payload_groups - g));
  }
  result.report.coefficients_consumed = cursor;
  result.stream = std::move(stream);
  return result;
}

Bits matrix_extract(const CoeffStream& stream, int bits_per_group) {
  const HammingMatrix payload_h(bits_per_group);
  std::vector<int> live;
  live.reserve(stream.size());
  for (const auto& e : stream.entries) {
    if (e.value != 0) live.push_back(e.value);
  }
  if (live.size() < static_cast<std::size_t>(kLengthHeaderBits)) {
    throw CorruptStegoError("stream too short for the length header");
  }
  std::uint64_t len = 0;
  for (int i = 0; i < kLengthHeaderBits; ++i) len = (len << 1) | static_cast<std::uint64_t>(parity(live[i]));

  const auto u = static_cast<std::size_t>(payload_h.group_size());
  const std::uint64_t groups = (len + bits_per_group - 1) / bits_per_group;
  const std::size_t remaining = live.size() - kLengthHeaderBits;
  if (groups > remaining / u) {
    throw CorruptStegoError("header announces " + std::to_string(len) + " bits but only " +
                            std::to_string(remaining) + " coefficients remain");
  }
  Bits out;
  out.reserve(static_cast<std::size_t>(len));
  for (std::uint64_t g = 0; g < groups; ++g) {
    const std::span<const int> grp(live.data() + kLengthHeaderBits + g * u, u);
    for (auto bit : decode_bits(payload_h, grp)) {
      if (out.size() < len) out.push_back(bit);
    }
  }
  return out;
}

void require_rounding_errors(const CoeffStream& stream, const char* method) {
  if (!stream.has_rounding_errors) {
    throw UnsupportedInputError(std::string(method) +
                                " needs compress-time rounding errors; embed from a cover image, not a container");
  }
}

void embed_parity_block(CoeffStream& stream, std::size_t begin, std::size_t end, std::uint8_t bit,
                        EmbedReport& report) {
  auto& entries = stream.entries;
  const auto change = mde_embed_block(std::span<StreamEntry>(entries.data() + begin, end - begin), bit);
  if (change) record(report, entries[begin + change->index], begin + change->index, change->old_value, true);
}

}  // namespace

std::optional<BlockChange> mde_embed_block(std::span<StreamEntry> block, std::uint8_t bit) {
  if (block.empty()) throw InternalError("mde_embed_block: empty block");
  if (block_parity(block) == (bit & 1)) return std::nullopt;
  std::size_t best = 0;
  double best_error = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < block.size(); ++i) {
    const double err = std::abs(block[i].pre_round - eq8_modify(block[i].value, block[i].rounding_error));
    if (err < best_error) {
      best_error = err;
      best = i;
    }
  }
  BlockChange change{best, block[best].value};
  block[best].value = eq8_modify(block[best].value, block[best].rounding_error);
  return change;
}

EmbedResult f5_embed(CoeffStream stream, std::span<const std::uint8_t> payload, int bits_per_group) {
  return matrix_embed(std::move(stream), payload, bits_per_group,
                      [](const StreamEntry& e) { return e.value > 0 ? e.value - 1 : e.value + 1; });
}

Bits f5_extract(const CoeffStream& stream, int bits_per_group) { return matrix_extract(stream, bits_per_group); }

EmbedResult mme_embed(CoeffStream stream, std::span<const std::uint8_t> payload, int bits_per_group) {
  require_rounding_errors(stream, "MME");
  return matrix_embed(std::move(stream), payload, bits_per_group,
                      [](const StreamEntry& e) { return eq8_modify(e.value, e.rounding_error); });
}

Bits mme_extract(const CoeffStream& stream, int bits_per_group) { return matrix_extract(stream, bits_per_group); }

BlockPartition mde_partition(std::size_t n, std::size_t alpha) {
  if (alpha == 0) throw ParameterError("MDE partition needs at least one payload bit");
  BlockPartition p;
  p.alpha = alpha;
  p.n = n;
  p.block_size = n / alpha;
  p.leftover = n % alpha;
  if (p.block_size == 0) throw CapacityError("fewer coefficients than payload bits", alpha, n);
  return p;
}

int block_parity(std::span<const StreamEntry> block) {
  long sum = 0;
  for (const auto& e : block) sum += e.value;
  return parity(sum);
}

EmbedResult mde_embed(CoeffStream stream, std::span<const std::uint8_t> payload) {
  require_rounding_errors(stream, "MDE");
  const Bits framed = frame_message(payload);
  const std::size_t n = stream.size();
  const std::size_t required = kMdeHeaderEntries + payload.size();
  if (n < required) throw CapacityError("not enough non-zero AC coefficients for MDE", required, n);

  EmbedResult result;
  for (std::size_t i = 0; i < static_cast<std::size_t>(kLengthHeaderBits); ++i) {
    embed_parity_block(stream, i * kMdeHeaderBlockSize, (i + 1) * kMdeHeaderBlockSize, framed[i], result.report);
  }
  std::size_t consumed = kMdeHeaderEntries;
  if (!payload.empty()) {
    const auto part = mde_partition(n - kMdeHeaderEntries, payload.size());
    for (std::size_t b = 0; b < part.alpha; ++b) {
      embed_parity_block(stream, kMdeHeaderEntries + part.begin(b), kMdeHeaderEntries + part.end(b), payload[b],
                         result.report);
    }
    consumed += part.alpha * part.block_size;
  }
  result.report.coefficients_consumed = consumed;
  result.stream = std::move(stream);
  return result;
}

Bits mde_extract(const CoeffStream& stream) {
  const auto& entries = stream.entries;
  if (entries.size() < kMdeHeaderEntries) throw CorruptStegoError("stream too short for the MDE length header");
  std::uint64_t len = 0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(kLengthHeaderBits); ++i) {
    const std::span<const StreamEntry> block(entries.data() + i * kMdeHeaderBlockSize, kMdeHeaderBlockSize);
    len = (len << 1) | static_cast<std::uint64_t>(block_parity(block));
  }
  const std::size_t n = entries.size() - kMdeHeaderEntries;
  if (len == 0) return {};
  if (len > n) {
    throw CorruptStegoError("header announces " + std::to_string(len) + " bits but only " + std::to_string(n) +
                            " coefficients remain");
  }
  const auto part = mde_partition(n, static_cast<std::size_t>(len));
  Bits out(part.alpha);
  for (std::size_t b = 0; b < part.alpha; ++b) {
    const std::span<const StreamEntry> block(entries.data() + kMdeHeaderEntries + part.begin(b), part.block_size);
    out[b] = static_cast<std::uint8_t>(block_parity(block));
  }
  return out;
}

EmbedResult embed(CoeffStream stream, std::span<const std::uint8_t> payload, const EmbedParams& params) {
  switch (params.method) {
    case Method::kF5:
      return f5_embed(std::move(stream), payload, params.bits_per_group);
    case Method::kMme:
      return mme_embed(std::move(stream), payload, params.bits_per_group);
    case Method::kMde:
      return mde_embed(std::move(stream), payload);
  }
  throw InternalError("unknown method");
}

Bits extract(const CoeffStream& stream, const EmbedParams& params) {
  switch (params.method) {
    case Method::kF5:
      return f5_extract(stream, params.bits_per_group);
    case Method::kMme:
      return mme_extract(stream, params.bits_per_group);
    case Method::kMde:
      return mde_extract(stream);
  }
  throw InternalError("unknown method");
}

}  // namespace sdc
