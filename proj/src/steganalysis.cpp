#include "sdc/steganalysis.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <map>
#include <random>

#include "sdc/error.hpp"
#include "sdc/metrics.hpp"

namespace sdc {

namespace {

// floor division so that negative values pair as (-2,-1), (-4,-3), ...
long pair_index(long value) { return value >= 0 ? value / 2 : -((-value + 1) / 2); }

}  // namespace

ChiSquareResult chi_square_attack(const CoeffPlane& plane) {
  std::map<long, std::array<std::size_t, 2>> pairs;
  for (const auto& [value, count] : coeff_histogram(plane)) {
    const long k = pair_index(value);
    if (k == 0) continue;
    pairs[k][value - 2 * k] += count;
  }

  ChiSquareResult r;
  int populated = 0;
  for (const auto& [_, counts] : pairs) {
    const double total = static_cast<double>(counts[0] + counts[1]);
    if (total == 0.0) continue;
    ++populated;
    const double expected = total / 2.0;
    const double diff = static_cast<double>(counts[0]) - expected;
    r.statistic += diff * diff / expected;
  }
  if (populated < 2) return r;
  r.sufficient = true;
  r.degrees_of_freedom = populated - 1;
  r.p_value = boost::math::gamma_q(r.degrees_of_freedom / 2.0, r.statistic / 2.0);
  return r;
}

CoeffPlane naive_lsb_embed(CoeffPlane plane, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uint64_t bits = 0;
  int left = 0;
  for (auto& block : plane.coeffs) {
    for (int i = 1; i < kBlockSize; ++i) {
      int& v = block[i];
      if (v == 0 || v == 1) continue;
      if (left == 0) {
        bits = rng();
        left = 64;
      }
      const int bit = static_cast<int>(bits & 1);
      bits >>= 1;
      --left;
      v = (v & ~1) | bit;  // stays inside its pair, so never becomes 0 or 1
    }
  }
  return plane;
}

FeatureVector extract_features(const CoeffPlane& plane) {
  if (plane.block_count() == 0) throw ParameterError("extract_features: empty plane");
  FeatureVector f{};
  double n = 0.0;
  double sum = 0.0;
  double sum_abs = 0.0;
  double sum_sq = 0.0;
  std::size_t zeros = 0;
  for (const auto& block : plane.coeffs) {
    for (int i = 1; i < kBlockSize; ++i) {
      const int v = block[i];
      if (v >= -kHistogramRange && v <= kHistogramRange) f[static_cast<std::size_t>(v + kHistogramRange)] += 1.0;
      zeros += v == 0;
      n += 1.0;
      sum += v;
      sum_abs += std::abs(v);
      sum_sq += static_cast<double>(v) * v;
    }
  }
  for (std::size_t i = 0; i < kHistogramBins; ++i) f[i] /= n;
  const double mean = sum / n;
  f[kHistogramBins] = static_cast<double>(zeros) / n;
  f[kHistogramBins + 1] = sum_abs / n;
  f[kHistogramBins + 2] = sum_sq / n - mean * mean;
  return f;
}

double LinearClassifier::score(const FeatureVector& x) const noexcept {
  double s = bias_;
  for (std::size_t i = 0; i < kFeatureCount; ++i) s += weights_[i] * x[i];
  return s;
}

LinearClassifier train(std::span<const FeatureVector> covers, std::span<const FeatureVector> stegos) {
  if (covers.empty() || stegos.empty()) throw ParameterError("train: both classes need at least one sample");
  constexpr std::size_t d = kFeatureCount;

  auto mean_of = [](std::span<const FeatureVector> xs) {
    FeatureVector m{};
    for (const auto& x : xs) {
      for (std::size_t i = 0; i < d; ++i) m[i] += x[i];
    }
    for (auto& v : m) v /= static_cast<double>(xs.size());
    return m;
  };
  const FeatureVector m0 = mean_of(covers);
  const FeatureVector m1 = mean_of(stegos);

  std::array<std::array<double, d>, d> cov{};
  auto scatter = [&](std::span<const FeatureVector> xs, const FeatureVector& m) {
    for (const auto& x : xs) {
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) cov[i][j] += (x[i] - m[i]) * (x[j] - m[j]);
      }
    }
  };
  scatter(covers, m0);
  scatter(stegos, m1);
  const double dof = std::max<double>(1.0, static_cast<double>(covers.size() + stegos.size()) - 2.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) cov[i][j] /= dof;
    cov[i][i] += LinearClassifier::kRidge;
  }

  // Cholesky factorization, lower triangle in place.
  for (std::size_t j = 0; j < d; ++j) {
    double diag = cov[j][j];
    for (std::size_t k = 0; k < j; ++k) diag -= cov[j][k] * cov[j][k];
    if (!(diag > 0.0) || !std::isfinite(diag)) {
      throw Error("train: pooled covariance is singular even with ridge " + std::to_string(LinearClassifier::kRidge));
    }
    cov[j][j] = std::sqrt(diag);
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = cov[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= cov[i][k] * cov[j][k];
      cov[i][j] = s / cov[j][j];
    }
  }

  FeatureVector w{};
  for (std::size_t i = 0; i < d; ++i) w[i] = m1[i] - m0[i];
  for (std::size_t i = 0; i < d; ++i) {  // L y = diff
    for (std::size_t k = 0; k < i; ++k) w[i] -= cov[i][k] * w[k];
    w[i] /= cov[i][i];
  }
  for (std::size_t i = d; i-- > 0;) {  // L^T w = y
    for (std::size_t k = i + 1; k < d; ++k) w[i] -= cov[k][i] * w[k];
    w[i] /= cov[i][i];
  }

  double mid = 0.0;
  for (std::size_t i = 0; i < d; ++i) mid += w[i] * 0.5 * (m0[i] + m1[i]);
  return LinearClassifier(w, -mid);
}

ErrorProbabilityReport error_probability(const LinearClassifier& clf, std::span<const FeatureVector> covers,
                                         std::span<const FeatureVector> stegos) {
  if (covers.empty() || stegos.empty()) throw ParameterError("error_probability: held-out sets must be non-empty");
  if (!clf.trained()) throw ParameterError("error_probability: classifier is not trained");
  std::size_t false_alarms = 0;
  std::size_t misses = 0;
  for (const auto& x : covers) false_alarms += clf.is_stego(x);
  for (const auto& x : stegos) misses += !clf.is_stego(x);
  ErrorProbabilityReport r;
  r.p_fa = static_cast<double>(false_alarms) / static_cast<double>(covers.size());
  r.p_md = static_cast<double>(misses) / static_cast<double>(stegos.size());
  r.p = (r.p_fa + r.p_md) / 2.0;
  return r;
}

}  // namespace sdc
