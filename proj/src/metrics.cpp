#include "sdc/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

#include "sdc/error.hpp"

namespace sdc {

DistortionSummary distortion(const CoeffPlane& cover, const CoeffPlane& stego) {
  if (cover.block_count() != stego.block_count() || cover.width != stego.width || cover.height != stego.height) {
    throw ParameterError("distortion: cover and stego planes differ in shape");
  }
  if (!cover.has_pre_round()) throw ParameterError("distortion: cover plane lacks pre-round values");

  DistortionSummary s;
  long cover_zeros = 0;
  long stego_zeros = 0;
  for (std::size_t b = 0; b < cover.block_count(); ++b) {
    for (int i = 1; i < kBlockSize; ++i) {
      const int c = cover.coeffs[b][i];
      const int cs = stego.coeffs[b][i];
      cover_zeros += c == 0;
      stego_zeros += cs == 0;
      if (c == cs) continue;
      const double pre = cover.pre_round[b][i];
      s.total_int_l1 += static_cast<std::size_t>(std::abs(cs - c));
      s.total_real += std::abs(cs - pre) - std::abs(c - pre);
      ++s.modification_count;
    }
    if (cover.coeffs[b][0] != stego.coeffs[b][0]) {
      s.total_int_l1 += static_cast<std::size_t>(std::abs(stego.coeffs[b][0] - cover.coeffs[b][0]));
      s.total_real += std::abs(stego.coeffs[b][0] - cover.pre_round[b][0]) -
                      std::abs(cover.coeffs[b][0] - cover.pre_round[b][0]);
      ++s.modification_count;
    }
  }
  s.zero_delta = stego_zeros - cover_zeros;
  s.mean_per_modification = s.modification_count ? s.total_real / static_cast<double>(s.modification_count) : 0.0;
  return s;
}

std::string to_key_value(const DistortionSummary& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "total_int_l1=%zu\ntotal_real=%.6f\nmean_per_modification=%.6f\nmodification_count=%zu\n"
                "zero_delta=%ld\n",
                s.total_int_l1, s.total_real, s.mean_per_modification, s.modification_count, s.zero_delta);
  return buf;
}

std::string csv_header_distortion() {
  return "total_int_l1,total_real,mean_per_modification,modification_count,zero_delta";
}

std::string to_csv_row(const DistortionSummary& s) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f,%zu,%ld", s.total_int_l1, s.total_real, s.mean_per_modification,
                s.modification_count, s.zero_delta);
  return buf;
}

double embedding_rate(std::size_t secret_bits, std::size_t capacity) {
  if (capacity == 0) throw ParameterError("embedding_rate: zero capacity");
  return 100.0 * static_cast<double>(secret_bits) / static_cast<double>(capacity);
}

std::size_t capacity_of(const CoeffPlane& plane) {
  std::size_t n = 0;
  for (const auto& block : plane.coeffs) {
    for (int i = 1; i < kBlockSize; ++i) n += block[i] != 0;
  }
  return n;
}

std::optional<double> psnr(const PixelImage& a, const PixelImage& b) {
  if (a.width != b.width || a.height != b.height || a.samples.size() != b.samples.size()) {
    throw ParameterError("psnr: image dimensions differ");
  }
  if (a.samples.empty()) throw ParameterError("psnr: empty images");
  double sse = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double d = static_cast<double>(a.samples[i]) - static_cast<double>(b.samples[i]);
    sse += d * d;
  }
  if (sse == 0.0) return std::nullopt;
  const double mse = sse / static_cast<double>(a.samples.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

std::map<int, std::size_t> coeff_histogram(const CoeffPlane& plane) {
  std::map<int, std::size_t> hist;
  for (const auto& block : plane.coeffs) {
    for (int i = 1; i < kBlockSize; ++i) ++hist[block[i]];
  }
  return hist;
}

double histogram_tv_distance(const std::map<int, std::size_t>& a, const std::map<int, std::size_t>& b) {
  double total_a = 0.0;
  double total_b = 0.0;
  for (const auto& [_, c] : a) total_a += static_cast<double>(c);
  for (const auto& [_, c] : b) total_b += static_cast<double>(c);
  if (total_a == 0.0 || total_b == 0.0) throw ParameterError("histogram_tv_distance: empty histogram");
  std::set<int> keys;
  for (const auto& [k, _] : a) keys.insert(k);
  for (const auto& [k, _] : b) keys.insert(k);
  double sum = 0.0;
  for (int k : keys) {
    const auto ia = a.find(k);
    const auto ib = b.find(k);
    const double pa = ia == a.end() ? 0.0 : static_cast<double>(ia->second) / total_a;
    const double pb = ib == b.end() ? 0.0 : static_cast<double>(ib->second) / total_b;
    sum += std::abs(pa - pb);
  }
  return 0.5 * sum;
}

}  // namespace sdc
