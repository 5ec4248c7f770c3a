#include "sdc/dct_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "sdc/error.hpp"

namespace sdc {

namespace {

// basis[k][n] = c(k) * cos((2n+1) k pi / 16), c(0) = sqrt(1/8), c(k>0) = 1/2.
struct DctBasis {
  double m[kBlockSide][kBlockSide];

  DctBasis() {
    for (int k = 0; k < kBlockSide; ++k) {
      const double scale = k == 0 ? std::sqrt(1.0 / kBlockSide) : std::sqrt(2.0 / kBlockSide);
      for (int n = 0; n < kBlockSide; ++n) {
        m[k][n] = scale * std::cos((2 * n + 1) * k * std::numbers::pi / (2.0 * kBlockSide));
      }
    }
  }
};

const DctBasis& basis() {
  static const DctBasis b;
  return b;
}

}  // namespace

QuantTable scale_quant_table(std::span<const int, kBlockSize> base, int quality_factor) {
  if (quality_factor < 1 || quality_factor > 100) {
    throw ParameterError("quality factor must be in [1,100], got " + std::to_string(quality_factor));
  }
  const long scale = quality_factor < 50 ? 5000 / quality_factor : 200 - 2L * quality_factor;
  QuantTable table;
  table.quality_factor = quality_factor;
  for (int i = 0; i < kBlockSize; ++i) {
    if (base[i] < 1 || base[i] > 255) {
      throw ParameterError("base quantization entry out of range [1,255]: " + std::to_string(base[i]));
    }
    const long scaled = (base[i] * scale + 50) / 100;
    table.entries[i] = static_cast<int>(std::clamp(scaled, 1L, 255L));
  }
  return table;
}

std::array<int, kBlockSize> read_base_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open quantization table " + path.string());
  std::array<int, kBlockSize> table{};
  for (int i = 0; i < kBlockSize; ++i) {
    if (!(in >> table[i])) {
      throw ParameterError(path.string() + ": expected 64 integers, got " + std::to_string(i));
    }
    if (table[i] < 1 || table[i] > 255) {
      throw ParameterError(path.string() + ": entry " + std::to_string(i) + " out of range [1,255]");
    }
  }
  return table;
}

RealBlock forward_block_dct(std::span<const std::uint8_t, kBlockSize> samples) {
  const auto& b = basis().m;
  // Rows first: tmp[y][v] = sum_x f(y,x) b[v][x]
  double tmp[kBlockSide][kBlockSide];
  for (int y = 0; y < kBlockSide; ++y) {
    for (int v = 0; v < kBlockSide; ++v) {
      double acc = 0.0;
      for (int x = 0; x < kBlockSide; ++x) {
        acc += (static_cast<double>(samples[y * kBlockSide + x]) - 128.0) * b[v][x];
      }
      tmp[y][v] = acc;
    }
  }
  RealBlock out{};
  for (int u = 0; u < kBlockSide; ++u) {
    for (int v = 0; v < kBlockSide; ++v) {
      double acc = 0.0;
      for (int y = 0; y < kBlockSide; ++y) acc += b[u][y] * tmp[y][v];
      out[u * kBlockSide + v] = acc;
    }
  }
  return out;
}

RealBlock inverse_block_dct(const RealBlock& coeffs) {
  const auto& b = basis().m;
  double tmp[kBlockSide][kBlockSide];  // tmp[y][v] = sum_u b[u][y] F(u,v)
  for (int y = 0; y < kBlockSide; ++y) {
    for (int v = 0; v < kBlockSide; ++v) {
      double acc = 0.0;
      for (int u = 0; u < kBlockSide; ++u) acc += b[u][y] * coeffs[u * kBlockSide + v];
      tmp[y][v] = acc;
    }
  }
  RealBlock out{};
  for (int y = 0; y < kBlockSide; ++y) {
    for (int x = 0; x < kBlockSide; ++x) {
      double acc = 0.0;
      for (int v = 0; v < kBlockSide; ++v) acc += tmp[y][v] * b[v][x];
      out[y * kBlockSide + x] = acc + 128.0;
    }
  }
  return out;
}

RealBlock quantize(const RealBlock& dct, const QuantTable& table) {
  RealBlock out{};
  for (int i = 0; i < kBlockSize; ++i) out[i] = dct[i] / table.entries[i];
  return out;
}

int round_half_away(double x) {
  return static_cast<int>(std::round(x));
}

RoundedBlock round_coeffs(const RealBlock& pre_round) {
  RoundedBlock r;
  for (int i = 0; i < kBlockSize; ++i) {
    r.values[i] = round_half_away(pre_round[i]);
    r.errors[i] = r.values[i] - pre_round[i];
  }
  return r;
}

CoeffPlane compress(const PixelImage& img, const QuantTable& table) {
  if (img.empty()) throw ParameterError("compress: empty image");
  if (img.samples.size() != static_cast<std::size_t>(img.width) * img.height) {
    throw ParameterError("compress: sample count does not match dimensions");
  }
  for (int e : table.entries) {
    if (e < 1) throw ParameterError("compress: quantization entry < 1");
  }

  CoeffPlane plane;
  plane.width = img.width;
  plane.height = img.height;
  plane.blocks_x = (img.width + kBlockSide - 1) / kBlockSide;
  plane.blocks_y = (img.height + kBlockSide - 1) / kBlockSide;
  plane.quant = table;
  const auto count = static_cast<std::size_t>(plane.blocks_x) * plane.blocks_y;
  plane.coeffs.resize(count);
  plane.pre_round.resize(count);
  plane.rounding_errors.resize(count);

  std::array<std::uint8_t, kBlockSize> samples{};
  for (int by = 0; by < plane.blocks_y; ++by) {
    for (int bx = 0; bx < plane.blocks_x; ++bx) {
      for (int y = 0; y < kBlockSide; ++y) {
        const int sy = std::min(by * kBlockSide + y, img.height - 1);
        for (int x = 0; x < kBlockSide; ++x) {
          const int sx = std::min(bx * kBlockSide + x, img.width - 1);
          samples[y * kBlockSide + x] = img.at(sx, sy);
        }
      }
      const std::size_t idx = static_cast<std::size_t>(by) * plane.blocks_x + bx;
      plane.pre_round[idx] = quantize(forward_block_dct(samples), table);
      auto rounded = round_coeffs(plane.pre_round[idx]);
      plane.coeffs[idx] = rounded.values;
      plane.rounding_errors[idx] = rounded.errors;
    }
  }
  return plane;
}

CoeffPlane compress(const PixelImage& img, int quality_factor) {
  return compress(img, scale_quant_table(kStandardLuminanceTable, quality_factor));
}

PixelImage decompress(const CoeffPlane& plane) {
  if (plane.block_count() != static_cast<std::size_t>(plane.blocks_x) * plane.blocks_y) {
    throw ParameterError("decompress: block count does not match block grid");
  }
  PixelImage img(plane.width, plane.height);
  for (int by = 0; by < plane.blocks_y; ++by) {
    for (int bx = 0; bx < plane.blocks_x; ++bx) {
      const auto& ints = plane.coeffs[static_cast<std::size_t>(by) * plane.blocks_x + bx];
      RealBlock dequant{};
      for (int i = 0; i < kBlockSize; ++i) dequant[i] = static_cast<double>(ints[i]) * plane.quant.entries[i];
      const RealBlock pixels = inverse_block_dct(dequant);
      for (int y = 0; y < kBlockSide; ++y) {
        const int iy = by * kBlockSide + y;
        if (iy >= plane.height) break;
        for (int x = 0; x < kBlockSide; ++x) {
          const int ix = bx * kBlockSide + x;
          if (ix >= plane.width) break;
          const double v = std::round(pixels[y * kBlockSide + x]);
          img.at(ix, iy) = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
        }
      }
    }
  }
  return img;
}

}  // namespace sdc
