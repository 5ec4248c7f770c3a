#include "sdc/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <thread>

#include "sdc/coeff_container.hpp"
#include "sdc/error.hpp"
#include "sdc/metrics.hpp"

namespace sdc {

namespace {

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::string format_rate(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", rate);
  return buf;
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a * 0x9E3779B97F4A7C15ULL ^ (b + 0x632BE59BD9B4E019ULL + (a << 6) + (a >> 2));
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDULL;
  x ^= x >> 33;
  return x;
}

struct ImageOutcome {
  bool ok = false;
  std::string error;
  FeatureVector features{};
  DistortionSummary distortion;
  double psnr_db = 0.0;
};

}  // namespace

bool BenchmarkResult::all_ok() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellResult& c) { return c.ok; });
}

const CellResult* BenchmarkResult::find(Method m, int qf, double rate) const {
  for (const auto& c : cells) {
    if (c.method == m && c.quality_factor == qf && c.rate == rate) return &c;
  }
  return nullptr;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (n < 2) return {idx, idx};
  XorShift64Star rng(mix(seed, 0x5117));
  for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
  const std::size_t half = n / 2;
  return {std::vector<std::size_t>(idx.begin(), idx.begin() + half),
          std::vector<std::size_t>(idx.begin() + half, idx.end())};
}

Bits rate_payload(std::size_t capacity, double rate, std::uint64_t seed) {
  if (rate < 0.0 || rate > 100.0) throw ParameterError("rate must be within [0,100] percent");
  const auto bits = static_cast<std::size_t>(std::floor(rate / 100.0 * static_cast<double>(capacity)));
  std::mt19937_64 rng(seed);
  Bits payload(bits);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < bits; ++i) {
    if (i % 64 == 0) word = rng();
    payload[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1);
  }
  return payload;
}

BenchmarkResult run_benchmark(const std::vector<PixelImage>& covers, const BenchmarkConfig& config) {
  if (covers.empty()) throw ParameterError("benchmark: corpus is empty");
  BenchmarkResult result;
  if (covers.size() < 4) {
    result.warnings.push_back("corpus has " + std::to_string(covers.size()) +
                              " image(s); classifier is trained and tested on overlapping data and is degenerate");
  }

  for (int qf : config.quality_factors) {
    std::vector<CoeffPlane> planes(covers.size());
    std::vector<FeatureVector> cover_features(covers.size());
    parallel_for(covers.size(), config.threads, [&](std::size_t i) {
      planes[i] = compress(covers[i], qf);
      cover_features[i] = extract_features(planes[i]);
    });

    for (Method method : config.methods) {
      for (std::size_t r = 0; r < config.rates.size(); ++r) {
        const double rate = config.rates[r];
        CellResult cell;
        cell.method = method;
        cell.quality_factor = qf;
        cell.rate = rate;

        std::vector<ImageOutcome> outcomes(covers.size());
        parallel_for(covers.size(), config.threads, [&](std::size_t i) {
          ImageOutcome& out = outcomes[i];
          try {
            const Bits payload = rate_payload(
                capacity_of(planes[i]), rate,
                mix(mix(config.payload_seed, i), mix(static_cast<std::uint64_t>(qf), r)));
            const EmbedParams params{method, config.bits_per_group};
            auto embedded = embed(extract_stream(planes[i]), payload, params);
            CoeffPlane stego = write_back(embedded.stream, planes[i]);
            out.features = extract_features(stego);
            out.distortion = distortion(planes[i], stego);
            const auto db = psnr(covers[i], decompress(stego));
            out.psnr_db = db ? *db : 99.0;
            out.ok = true;
          } catch (const Error& e) {
            out.error = "image " + std::to_string(i) + ": " + e.what();
          }
        });

        for (const auto& o : outcomes) {
          if (!o.ok) {
            cell.ok = false;
            cell.error = o.error;
            break;
          }
        }
        if (cell.ok) {
          const double n = static_cast<double>(outcomes.size());
          for (const auto& o : outcomes) {
            cell.distortion.total_real += o.distortion.total_real / n;
            cell.distortion.mean_per_modification += o.distortion.mean_per_modification / n;
            cell.distortion.modifications += static_cast<double>(o.distortion.modification_count) / n;
            cell.distortion.zero_delta += static_cast<double>(o.distortion.zero_delta) / n;
            cell.distortion.psnr_db += o.psnr_db / n;
          }
          for (std::uint64_t seed : config.seeds) {
            const auto [train_idx, test_idx] = split_indices(covers.size(), seed);
            std::vector<FeatureVector> train_cover, train_stego, test_cover, test_stego;
            for (auto i : train_idx) {
              train_cover.push_back(cover_features[i]);
              train_stego.push_back(outcomes[i].features);
            }
            for (auto i : test_idx) {
              test_cover.push_back(cover_features[i]);
              test_stego.push_back(outcomes[i].features);
            }
            try {
              const auto clf = train(train_cover, train_stego);
              const auto rep = error_probability(clf, test_cover, test_stego);
              cell.seeds.push_back(seed);
              cell.per_seed.push_back(rep);
            } catch (const Error& e) {
              cell.ok = false;
              cell.error = std::string("seed ") + std::to_string(seed) + ": " + e.what();
              break;
            }
          }
          if (cell.ok && !cell.per_seed.empty()) {
            const double k = static_cast<double>(cell.per_seed.size());
            for (const auto& rep : cell.per_seed) {
              cell.mean.p_fa += rep.p_fa / k;
              cell.mean.p_md += rep.p_md / k;
            }
            cell.mean.p = (cell.mean.p_fa + cell.mean.p_md) / 2.0;
          }
        }
        result.cells.push_back(std::move(cell));
      }
    }
  }
  return result;
}

std::string benchmark_csv(const BenchmarkResult& result) {
  std::string out = "method,qf,rate,p_fa,p_md,p,seed\n";
  char buf[256];
  for (const auto& c : result.cells) {
    const std::string prefix =
        std::string(method_name(c.method)) + "," + std::to_string(c.quality_factor) + "," + format_rate(c.rate);
    if (!c.ok) {
      out += prefix + ",nan,nan,nan,failed\n";
      continue;
    }
    for (std::size_t s = 0; s < c.per_seed.size(); ++s) {
      const auto& r = c.per_seed[s];
      std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%.6f,%llu\n", r.p_fa, r.p_md, r.p,
                    static_cast<unsigned long long>(c.seeds[s]));
      out += prefix + buf;
    }
    std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%.6f,mean\n", c.mean.p_fa, c.mean.p_md, c.mean.p);
    out += prefix + buf;
  }
  return out;
}

std::string distortion_csv(const BenchmarkResult& result) {
  std::string out = "method,qf,rate,mean_total_real,mean_per_modification,mean_modifications,mean_zero_delta,"
                    "mean_psnr_db\n";
  char buf[256];
  for (const auto& c : result.cells) {
    const std::string prefix =
        std::string(method_name(c.method)) + "," + std::to_string(c.quality_factor) + "," + format_rate(c.rate);
    if (!c.ok) {
      out += prefix + ",nan,nan,nan,nan,nan\n";
      continue;
    }
    std::snprintf(buf, sizeof buf, ",%.6f,%.6f,%.3f,%.3f,%.4f\n", c.distortion.total_real,
                  c.distortion.mean_per_modification, c.distortion.modifications, c.distortion.zero_delta,
                  c.distortion.psnr_db);
    out += prefix + buf;
  }
  return out;
}

std::string benchmark_markdown(const BenchmarkResult& result, const BenchmarkConfig& config) {
  std::string out = "| QF | Method |";
  for (double r : config.rates) out += " " + format_rate(r) + "% |";
  out += "\n|---|---|";
  for (std::size_t i = 0; i < config.rates.size(); ++i) out += "---|";
  out += "\n";
  char buf[64];
  for (int qf : config.quality_factors) {
    for (Method m : config.methods) {
      out += "| " + std::to_string(qf) + " | " + std::string(method_name(m)) + " |";
      for (double r : config.rates) {
        const CellResult* c = result.find(m, qf, r);
        if (c == nullptr || !c->ok) {
          out += " failed |";
        } else {
          std::snprintf(buf, sizeof buf, " %.4f |", 100.0 * c->mean.p);
          out += buf;
        }
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace sdc
