#include "sdc/coeff_container.hpp"

#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>

#include "sdc/error.hpp"

namespace sdc {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }

  void need(std::size_t n, const char* what) const {
    if (bytes_.size() - pos_ < n) throw FormatError(std::string("truncated container: missing ") + what, pos_);
  }

  std::uint8_t u8(const char* what) {
    need(1, what);
    return bytes_[pos_++];
  }

  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }

  std::int16_t i16(const char* what) {
    need(2, what);
    const auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return static_cast<std::int16_t>(v);
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_container(const CoeffPlane& plane) {
  if (plane.width <= 0 || plane.height <= 0) throw ParameterError("container: empty plane");
  if (plane.block_count() != static_cast<std::size_t>(plane.blocks_x) * plane.blocks_y) {
    throw ParameterError("container: block count does not match block grid");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kContainerHeaderSize + plane.block_count() * kBlockSize * 2);
  out.insert(out.end(), kContainerMagic.begin(), kContainerMagic.end());
  put_u32(out, static_cast<std::uint32_t>(plane.width));
  put_u32(out, static_cast<std::uint32_t>(plane.height));
  put_u32(out, static_cast<std::uint32_t>(plane.quant.quality_factor));
  for (int e : plane.quant.entries) {
    if (e < 1 || e > 255) throw ParameterError("container: quantization entry out of byte range");
    out.push_back(static_cast<std::uint8_t>(e));
  }
  put_u32(out, static_cast<std::uint32_t>(plane.block_count()));
  for (std::size_t b = 0; b < plane.block_count(); ++b) {
    for (int zz = 0; zz < kBlockSize; ++zz) {
      const int v = plane.coeffs[b][kZigzagToNatural[zz]];
      if (v < std::numeric_limits<std::int16_t>::min() || v > std::numeric_limits<std::int16_t>::max()) {
        throw ParameterError("container: coefficient " + std::to_string(v) + " in block " + std::to_string(b) +
                             " does not fit in 16 bits");
      }
      const auto u = static_cast<std::uint16_t>(static_cast<std::int16_t>(v));
      out.push_back(static_cast<std::uint8_t>(u & 0xFF));
      out.push_back(static_cast<std::uint8_t>(u >> 8));
    }
  }
  return out;
}

CoeffPlane parse_container(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  for (char m : kContainerMagic) {
    if (r.u8("magic") != static_cast<std::uint8_t>(m)) throw FormatError("bad magic, expected SDC1", r.offset() - 1);
  }
  CoeffPlane plane;
  const std::uint32_t width = r.u32("width");
  const std::uint32_t height = r.u32("height");
  if (width == 0 || height == 0 || width > 1u << 20 || height > 1u << 20) {
    throw FormatError("implausible image dimensions", 4);
  }
  plane.width = static_cast<int>(width);
  plane.height = static_cast<int>(height);
  const std::uint32_t qf = r.u32("quality factor");
  if (qf < 1 || qf > 100) throw FormatError("quality factor out of range", r.offset() - 4);
  plane.quant.quality_factor = static_cast<int>(qf);
  for (int& e : plane.quant.entries) {
    e = r.u8("quantization table");
    if (e == 0) throw FormatError("zero quantization entry", r.offset() - 1);
  }
  plane.blocks_x = (plane.width + kBlockSide - 1) / kBlockSide;
  plane.blocks_y = (plane.height + kBlockSide - 1) / kBlockSide;
  const std::uint32_t block_count = r.u32("block count");
  if (block_count != static_cast<std::uint64_t>(plane.blocks_x) * plane.blocks_y) {
    throw FormatError("block count " + std::to_string(block_count) + " inconsistent with dimensions",
                      r.offset() - 4);
  }
  r.need(static_cast<std::size_t>(block_count) * kBlockSize * 2, "coefficients");
  plane.coeffs.resize(block_count);
  for (auto& block : plane.coeffs) {
    for (int zz = 0; zz < kBlockSize; ++zz) block[kZigzagToNatural[zz]] = r.i16("coefficients");
  }
  if (r.offset() != bytes.size()) throw FormatError("trailing bytes after coefficients", r.offset());
  return plane;
}

void write_container(const CoeffPlane& plane, const std::filesystem::path& path) {
  const auto bytes = serialize_container(plane);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

CoeffPlane read_container(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return parse_container(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what(), e.offset());
  }
}

std::uint64_t XorShift64Star::below(std::uint64_t bound) {
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

CoeffStream extract_stream(const CoeffPlane& plane, std::optional<std::uint64_t> key) {
  constexpr int kAcPerBlock = kBlockSize - 1;
  const std::size_t slots = plane.block_count() * kAcPerBlock;
  std::vector<std::uint32_t> order(slots);
  std::iota(order.begin(), order.end(), 0u);
  if (key) {
    XorShift64Star rng(*key);
    for (std::size_t i = slots; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  }

  CoeffStream stream;
  stream.has_rounding_errors = plane.has_pre_round();
  for (std::uint32_t slot : order) {
    const std::uint32_t block = slot / kAcPerBlock;
    const int zz = static_cast<int>(slot % kAcPerBlock) + 1;
    const int natural = kZigzagToNatural[zz];
    const int value = plane.coeffs[block][natural];
    if (value == 0) continue;
    StreamEntry e;
    e.block = block;
    e.zigzag = static_cast<std::uint8_t>(zz);
    e.value = value;
    if (stream.has_rounding_errors) {
      e.pre_round = plane.pre_round[block][natural];
      e.rounding_error = plane.rounding_errors[block][natural];
    } else {
      e.pre_round = std::numeric_limits<double>::quiet_NaN();
      e.rounding_error = std::numeric_limits<double>::quiet_NaN();
    }
    stream.entries.push_back(e);
  }
  return stream;
}

CoeffPlane write_back(const CoeffStream& stream, CoeffPlane plane) {
  for (const auto& e : stream.entries) {
    if (e.block >= plane.block_count() || e.zigzag == 0 || e.zigzag >= kBlockSize) {
      throw InternalError("write_back: dangling reference to block " + std::to_string(e.block) + " position " +
                          std::to_string(e.zigzag));
    }
    plane.coeffs[e.block][kZigzagToNatural[e.zigzag]] = e.value;
  }
  return plane;
}

}  // namespace sdc
