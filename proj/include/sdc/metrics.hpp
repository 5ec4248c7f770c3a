#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include "sdc/dct_pipeline.hpp"
#include "sdc/image.hpp"

namespace sdc {

// Cost of a stego relative to its cover.
//
// Per changed coefficient the real-domain cost is
//   rho = |c' - F'| - |c - F'|
// with F' the cover's pre-round value: the rounding error added by the change.
struct DistortionSummary {
  std::size_t total_int_l1 = 0;     // sum |c' - c|
  double total_real = 0.0;          // sum rho
  double mean_per_modification = 0.0;
  std::size_t modification_count = 0;  // coefficients that differ
  long zero_delta = 0;              // stego zero count - cover zero count (AC only)
};

// `cover` must carry pre-round values (a compress() result).
DistortionSummary distortion(const CoeffPlane& cover, const CoeffPlane& stego);

std::string to_key_value(const DistortionSummary& s);
std::string csv_header_distortion();
std::string to_csv_row(const DistortionSummary& s);

// 100 * bits / capacity.
double embedding_rate(std::size_t secret_bits, std::size_t capacity);

// Non-zero AC coefficient count: the capacity all three methods consume.
std::size_t capacity_of(const CoeffPlane& plane);

// PSNR in dB; std::nullopt when the images are identical.
std::optional<double> psnr(const PixelImage& a, const PixelImage& b);

// value -> count over AC coefficients.
std::map<int, std::size_t> coeff_histogram(const CoeffPlane& plane);

// Total-variation distance between two normalized histograms.
double histogram_tv_distance(const std::map<int, std::size_t>& a, const std::map<int, std::size_t>& b);

}  // namespace sdc
