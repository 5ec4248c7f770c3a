#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sdc/dct_pipeline.hpp"

namespace sdc {

// Westfeld-style pairs-of-values test over the AC histogram. Pairs are
// (2k, 2k+1) for every k except k = 0, since the pair {0, 1} is skipped by
// LSB-replacement embedders.
struct ChiSquareResult {
  bool sufficient = false;  // false when fewer than 2 pairs are populated
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 0.0;     // probability of embedding; 1.0 means pairs are equalized
};

ChiSquareResult chi_square_attack(const CoeffPlane& plane);

// Test-bench baseline: sequential LSB replacement on every AC coefficient
// outside {0, 1}, one random bit each (full capacity).
CoeffPlane naive_lsb_embed(CoeffPlane plane, std::uint64_t seed);

inline constexpr int kHistogramRange = 8;  // bins for values -8..8
inline constexpr std::size_t kHistogramBins = 2 * kHistogramRange + 1;
inline constexpr std::size_t kFeatureCount = kHistogramBins + 3;

// [0..16] normalized counts of AC values -8..8, [17] zero ratio, [18] mean |value|,
// [19] variance of values. All normalized by the AC coefficient count.
using FeatureVector = std::array<double, kFeatureCount>;

FeatureVector extract_features(const CoeffPlane& plane);

// Fisher linear discriminant. A positive score means "stego".
class LinearClassifier {
 public:
  static constexpr double kRidge = 1e-6;

  LinearClassifier() = default;
  LinearClassifier(const FeatureVector& weights, double bias) : weights_(weights), bias_(bias), trained_(true) {}

  bool trained() const noexcept { return trained_; }
  const FeatureVector& weights() const noexcept { return weights_; }
  double bias() const noexcept { return bias_; }

  double score(const FeatureVector& x) const noexcept;
  bool is_stego(const FeatureVector& x) const noexcept { return score(x) > 0.0; }

 private:
  FeatureVector weights_{};
  double bias_ = 0.0;
  bool trained_ = false;
};

LinearClassifier train(std::span<const FeatureVector> covers, std::span<const FeatureVector> stegos);

struct ErrorProbabilityReport {
  double p_fa = 0.0;  // covers flagged as stego
  double p_md = 0.0;  // stegos passed as cover
  double p = 0.0;     // (p_fa + p_md) / 2
};

ErrorProbabilityReport error_probability(const LinearClassifier& clf, std::span<const FeatureVector> covers,
                                         std::span<const FeatureVector> stegos);

}  // namespace sdc
