#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdc/embedders.hpp"
#include "sdc/image.hpp"
#include "sdc/steganalysis.hpp"

namespace sdc {

struct BenchmarkConfig {
  std::vector<int> quality_factors{50, 75};
  std::vector<double> rates{5.0, 10.0, 15.0, 20.0};  // percent of cover capacity
  std::vector<Method> methods{Method::kF5, Method::kMde};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};  // train/test split seeds
  int bits_per_group = 3;
  std::uint64_t payload_seed = 2024;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Means over the images of one (method, qf, rate) cell.
struct CellDistortion {
  double total_real = 0.0;
  double mean_per_modification = 0.0;
  double modifications = 0.0;
  double zero_delta = 0.0;
  double psnr_db = 0.0;  // stego render vs original cover
};

struct CellResult {
  Method method = Method::kF5;
  int quality_factor = 0;
  double rate = 0.0;
  bool ok = true;
  std::string error;
  std::vector<std::uint64_t> seeds;
  std::vector<ErrorProbabilityReport> per_seed;
  ErrorProbabilityReport mean;
  CellDistortion distortion;
};

struct BenchmarkResult {
  std::vector<CellResult> cells;  // qf-major, then method, then rate
  std::vector<std::string> warnings;

  bool all_ok() const;
  const CellResult* find(Method m, int qf, double rate) const;
};

// Seeded 50/50 split of image indices into (train, test). With fewer than two
// images both halves are the full set.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t n, std::uint64_t seed);

// Random payload of floor(rate% * capacity) bits.
Bits rate_payload(std::size_t capacity, double rate, std::uint64_t seed);

BenchmarkResult run_benchmark(const std::vector<PixelImage>& covers, const BenchmarkConfig& config);

// CSV columns: method,qf,rate,p_fa,p_md,p,seed. One row per seed plus a "mean" row.
std::string benchmark_csv(const BenchmarkResult& result);
std::string distortion_csv(const BenchmarkResult& result);
// Error probabilities (percent) laid out as QF x method rows, rate columns.
std::string benchmark_markdown(const BenchmarkResult& result, const BenchmarkConfig& config);

}  // namespace sdc
