// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <mutex>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "sdc/benchmark.hpp"
#include "sdc/coeff_container.hpp"
#include "sdc/corpus.hpp"
#include "sdc/dct_pipeline.hpp"
#include "sdc/embedders.hpp"
#include "sdc/error.hpp"
#include "sdc/matrix_coding.hpp"
#include "sdc/metrics.hpp"
#include "sdc/steganalysis.hpp"

using namespace sdc;

namespace {

constexpr std::size_t kCorpusSize = 200;
constexpr int kCorpusSide = 64;
constexpr std::uint64_t kCorpusSeed = 7;
const int kQfs[] = {50, 75};

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Verdict()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = fn();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!v.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.0f ms)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(), ms);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn fn) {
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

const std::vector<PixelImage>& corpus() {
  static const auto c = generate_corpus(kCorpusSize, kCorpusSide, kCorpusSide, kCorpusSeed);
  return c;
}

const std::vector<CoeffPlane>& planes(int qf) {
  static std::vector<CoeffPlane> p50, p75;
  static std::once_flag f50, f75;
  auto build = [qf](std::vector<CoeffPlane>& out) {
    out.resize(corpus().size());
    parallel_for(out.size(), [&](std::size_t i) { out[i] = compress(corpus()[i], qf); });
  };
  if (qf == 50) {
    std::call_once(f50, build, std::ref(p50));
    return p50;
  }
  std::call_once(f75, build, std::ref(p75));
  return p75;
}

std::uint64_t payload_seed(std::size_t image, int qf, int rate, int method) {
  return 1000003ull * image + 1009ull * static_cast<std::uint64_t>(qf) + 31ull * rate + method;
}

Verdict goldens() {
  const auto h = build_h(3);
  const char* rows[] = {"0001111", "0110011", "1010101"};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 7; ++c)
      if (h.at(r, c) != rows[r][c] - '0') return {false, "H mismatch"};
  std::vector<int> group{5, 2, 3, 1, -2, -5, -1};
  const auto s = syndrome(h, group);
  if (s != Bits{1, 1, 1}) return {false, "syndrome mismatch"};
  const int p = locate(s, Bits{1, 0, 1});
  if (p != 2) return {false, "locate gave " + std::to_string(p)};
  // the F5 rule moves the located coefficient toward zero
  int& target = group[static_cast<std::size_t>(p - 1)];
  target += target > 0 ? -1 : 1;
  if (group != std::vector<int>{5, 1, 3, 1, -2, -5, -1}) return {false, "modified group mismatch"};
  if (decode_bits(h, group) != Bits{1, 0, 1}) return {false, "decode mismatch"};
  return {true, "H, syndrome [1 1 1], position 2, C' = [5 1 3 1 -2 -5 -1], decode [1 0 1]"};
}

Verdict worked_example() {
  const double pre[] = {-0.6994, 0.8534, 1.7352, 1.6229, -2.6861};
  const int rounded[] = {-1, 1, 2, 2, -3};
  const double err_abs[] = {0.3006, 0.1466, 0.2648, 0.3771, 0.3139};
  const int cand[] = {-2, 2, 1, 1, -2};
  const double post[] = {1.3006, 1.1466, 0.7352, 0.6229, 0.6861};
  RealBlock block{};
  for (int i = 0; i < 5; ++i) block[i] = pre[i];
  const auto r = round_coeffs(block);
  std::vector<StreamEntry> entries;
  for (int i = 0; i < 5; ++i) {
    if (r.values[i] != rounded[i]) return {false, "rounding mismatch at " + std::to_string(i)};
    if (std::abs(std::abs(r.errors[i]) - err_abs[i]) > 1e-4) return {false, "error mismatch at " + std::to_string(i)};
    const int c = eq8_modify(r.values[i], r.errors[i]);
    if (c != cand[i]) return {false, "candidate mismatch at " + std::to_string(i)};
    if (std::abs(std::abs(pre[i] - c) - post[i]) > 1e-4) return {false, "post error mismatch at " + std::to_string(i)};
    StreamEntry e;
    e.value = r.values[i];
    e.pre_round = pre[i];
    e.rounding_error = r.errors[i];
    entries.push_back(e);
  }
  const int parity_now = block_parity(entries);
  const auto change = mde_embed_block(entries, static_cast<std::uint8_t>(1 - parity_now));
  if (!change || change->index != 3) return {false, "MDE did not pick the 4th entry"};
  return {true, "rounding, errors, candidates (-2 2 1 1 -2), post errors within 1e-4; MDE picks entry 4 (2 -> 1)"};
}

Verdict parity_example() {
  std::vector<StreamEntry> entries;
  for (int v : {5, 2, 3, 1, -2, -5, -1}) {
    StreamEntry e;
    e.value = v;
    e.pre_round = v;
    entries.push_back(e);
  }
  const auto before = entries;
  const auto change = mde_embed_block(entries, 1);
  const bool same = std::equal(entries.begin(), entries.end(), before.begin(),
                               [](const StreamEntry& a, const StreamEntry& b) { return a.value == b.value; });
  if (change || !same || block_parity(entries) != 1) return {false, "block was modified"};
  return {true, "sum 3 carries bit 1 with 0 modifications"};
}

Verdict round_trips() {
  std::atomic<std::size_t> ok{0}, capacity{0}, wrong{0};
  const Method methods[] = {Method::kF5, Method::kMme, Method::kMde};
  for (int qf : kQfs) {
    const auto& ps = planes(qf);
    parallel_for(ps.size(), [&](std::size_t i) {
      const auto stream = extract_stream(ps[i]);
      for (int rate : {5, 10, 15, 20}) {
        for (int m = 0; m < 3; ++m) {
          const EmbedParams params{methods[m], 3};
          const Bits msg = rate_payload(capacity_of(ps[i]), rate, payload_seed(i, qf, rate, m));
          try {
            const auto res = embed(stream, msg, params);
            const auto bytes = serialize_container(write_back(res.stream, ps[i]));
            const auto got = extract(extract_stream(parse_container(bytes)), params);
            (got == msg ? ok : wrong)++;
          } catch (const CapacityError&) {
            capacity++;
          }
        }
      }
    });
  }
  const std::size_t total = ok + capacity + wrong;
  return {wrong == 0 && total == kCorpusSize * 2 * 4 * 3,
          std::to_string(ok.load()) + "/" + std::to_string(total) + " exact, " + std::to_string(capacity.load()) +
              " capacity errors, " + std::to_string(wrong.load()) + " wrong"};
}

Verdict self_inverse() {
  std::mt19937_64 rng(2025);
  std::size_t checks = 0;
  for (int v = 1; v <= 3; ++v) {
    const auto h = build_h(v);
    for (int g = 0; g < 1000; ++g) {
      std::vector<int> group(static_cast<std::size_t>(h.group_size()));
      for (auto& c : group) {
        do c = static_cast<int>(rng() % 61) - 30;
        while (c == 0);
      }
      for (unsigned word = 0; word < (1u << v); ++word) {
        Bits m(static_cast<std::size_t>(v));
        for (int b = 0; b < v; ++b) m[b] = (word >> (v - 1 - b)) & 1;
        for (int step : {-1, 1}) {
          auto c = group;
          const int p = locate(syndrome(h, c), m);
          if (p > 0) c[static_cast<std::size_t>(p - 1)] += step;
          if (decode_bits(h, c) != m) return {false, "v=" + std::to_string(v) + " group " + std::to_string(g)};
          ++checks;
        }
      }
    }
  }
  return {true, std::to_string(checks) + " (group, message, direction) cases over v = 1..3"};
}

std::size_t zero_ac(const CoeffPlane& p) {
  std::size_t z = 0;
  for (const auto& b : p.coeffs)
    for (int i = 1; i < kBlockSize; ++i) z += b[i] == 0;
  return z;
}

Verdict nonzero_conservation() {
  std::atomic<std::size_t> conserved{0}, tried{0}, f5_bad{0}, f5_strict{0};
  for (int qf : kQfs) {
    const auto& ps = planes(qf);
    parallel_for(ps.size(), [&](std::size_t i) {
      const auto stream = extract_stream(ps[i]);
      const Bits msg = rate_payload(capacity_of(ps[i]), 10, payload_seed(i, qf, 10, 9));
      for (Method m : {Method::kMme, Method::kMde}) {
        const auto stego = write_back(embed(stream, msg, {m, 3}).stream, ps[i]);
        tried++;
        if (capacity_of(stego) == capacity_of(ps[i])) conserved++;
      }
      const auto f5 = write_back(embed(stream, msg, {Method::kF5, 3}).stream, ps[i]);
      if (zero_ac(f5) < zero_ac(ps[i])) f5_bad++;
      if (zero_ac(f5) > zero_ac(ps[i])) f5_strict++;
    });
  }
  return {conserved == tried && f5_bad == 0 && f5_strict > 0,
          "MME/MDE conserved " + std::to_string(conserved.load()) + "/" + std::to_string(tried.load()) +
              "; F5 zeros never fewer (" + std::to_string(f5_bad.load()) + " violations), grew on " +
              std::to_string(f5_strict.load()) + "/" + std::to_string(2 * kCorpusSize)};
}

Verdict dct_oracle() {
  std::mt19937_64 rng(77);
  double worst_fwd = 0.0, worst_back = 0.0;
  for (int t = 0; t < 1000; ++t) {
    std::array<std::uint8_t, 64> px{};
    for (auto& p : px) p = static_cast<std::uint8_t>(rng() & 0xFF);
    const auto fast = forward_block_dct(px);
    for (int u = 0; u < 8; ++u) {
      for (int v = 0; v < 8; ++v) {
        double acc = 0.0;
        for (int y = 0; y < 8; ++y)
          for (int x = 0; x < 8; ++x)
            acc += (px[y * 8 + x] - 128.0) * std::cos((2 * y + 1) * u * std::numbers::pi / 16.0) *
                   std::cos((2 * x + 1) * v * std::numbers::pi / 16.0);
        const double cu = u ? 1.0 : std::numbers::sqrt2 / 2.0;
        const double cv = v ? 1.0 : std::numbers::sqrt2 / 2.0;
        worst_fwd = std::max(worst_fwd, std::abs(fast[u * 8 + v] - 0.25 * cu * cv * acc));
      }
    }
    const auto back = inverse_block_dct(fast);
    for (int i = 0; i < 64; ++i) worst_back = std::max(worst_back, std::abs(back[i] - px[i]));
  }
  return {worst_fwd <= 1e-9 && worst_back <= 1e-6,
          fmt("max forward deviation %.2e, max round-trip deviation %.2e over 1000 blocks", worst_fwd, worst_back)};
}

Verdict distortion_ordering() {
  std::string detail;
  bool pass = true;
  for (int qf : kQfs) {
    const auto& ps = planes(qf);
    std::atomic<std::size_t> per_mod{0}, per_bit{0}, total{0};
    parallel_for(ps.size(), [&](std::size_t i) {
      const auto stream = extract_stream(ps[i]);
      const Bits msg = rate_payload(capacity_of(ps[i]), 10, payload_seed(i, qf, 10, 8));
      DistortionSummary d[3];
      const Method order[] = {Method::kMde, Method::kMme, Method::kF5};
      for (int m = 0; m < 3; ++m) d[m] = distortion(ps[i], write_back(embed(stream, msg, {order[m], 3}).stream, ps[i]));
      total++;
      if (d[0].mean_per_modification <= d[1].mean_per_modification &&
          d[1].mean_per_modification <= d[2].mean_per_modification)
        per_mod++;
      if (d[0].total_real <= d[1].total_real && d[1].total_real <= d[2].total_real) per_bit++;
    });
    const double frac = static_cast<double>(per_mod) / static_cast<double>(total);
    pass = pass && frac >= 0.95;
    detail += fmt("QF %.0f: per modified coefficient %.1f%%, per payload bit %.1f%%; ", qf, 100.0 * frac,
                  100.0 * static_cast<double>(per_bit) / static_cast<double>(total));
  }
  detail += "need >= 95% per modified coefficient";
  return {pass, detail};
}

Verdict table_direction() {
  BenchmarkConfig cfg;
  const auto result = run_benchmark(corpus(), cfg);
  if (!result.all_ok()) return {false, "benchmark cell failed"};
  std::size_t ordered = 0, pairs = 0;
  std::string cells;
  for (int qf : cfg.quality_factors) {
    for (double rate : cfg.rates) {
      const auto* f5 = result.find(Method::kF5, qf, rate);
      const auto* mde = result.find(Method::kMde, qf, rate);
      ++pairs;
      if (mde->mean.p >= f5->mean.p) ++ordered;
      cells += fmt(" %.0f/%.0f%%:", qf, rate) + fmt("%.1f>=%.1f", 100 * mde->mean.p, 100 * f5->mean.p);
    }
  }
  return {ordered == pairs, std::to_string(ordered) + "/" + std::to_string(pairs) + " paired cells with P(MDE) >= P(F5);" + cells};
}

Verdict always_cover() {
  const LinearClassifier clf(FeatureVector{}, -1.0);
  std::vector<FeatureVector> covers, stegos;
  for (std::size_t i = 0; i < 20; ++i) covers.push_back(extract_features(planes(50)[i]));
  for (std::size_t i = 20; i < 33; ++i) stegos.push_back(extract_features(planes(75)[i]));
  const auto r = error_probability(clf, covers, stegos);
  return {r.p == 0.5, fmt("p_fa %.3f, p_md %.3f, P %.17g", r.p_fa, r.p_md, r.p)};
}

Verdict chi_square_sanity() {
  std::string detail;
  bool pass = true;
  for (int qf : kQfs) {
    const auto& ps = planes(qf);
    std::vector<double> cover_p(ps.size()), stego_p(ps.size());
    std::vector<int> dof(ps.size());
    parallel_for(ps.size(), [&](std::size_t i) {
      cover_p[i] = chi_square_attack(ps[i]).p_value;
      const auto r = chi_square_attack(naive_lsb_embed(ps[i], 31 + i));
      stego_p[i] = r.p_value;
      dof[i] = r.degrees_of_freedom;
    });
    const auto high = std::count_if(stego_p.begin(), stego_p.end(), [](double p) { return p > 0.99; });
    double mean_cover = 0.0, mean_dof = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      mean_cover += cover_p[i] / static_cast<double>(ps.size());
      mean_dof += dof[i] / static_cast<double>(ps.size());
    }
    const double frac = static_cast<double>(high) / static_cast<double>(ps.size());
    pass = pass && frac >= 0.95 && mean_cover < 0.5;
    detail += fmt("QF %.0f: stego p>0.99 on %.1f%% (mean df %.1f), ", qf, 100.0 * frac, mean_dof) +
              fmt("cover mean p %.4f; ", mean_cover);
  }
  detail += "need >= 95% and < 0.5";
  return {pass, detail};
}

Verdict container_format() {
  std::size_t identical = 0;
  for (int qf : kQfs) {
    for (const auto& p : planes(qf)) {
      const auto bytes = serialize_container(p);
      const auto back = parse_container(bytes);
      if (back.coeffs == p.coeffs && back.quant == p.quant && serialize_container(back) == bytes) ++identical;
    }
  }
  std::ifstream in(std::string(SDC_FIXTURE_DIR) + "/small.sdc", std::ios::binary);
  const std::vector<std::uint8_t> fx{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (fx.size() != 596) return {false, "fixture missing or wrong size"};
  auto u32 = [&](std::size_t at) {
    return fx[at] | (fx[at + 1] << 8) | (fx[at + 2] << 16) | (static_cast<std::uint32_t>(fx[at + 3]) << 24);
  };
  auto i16 = [&](std::size_t at) { return static_cast<std::int16_t>(fx[at] | (fx[at + 1] << 8)); };
  const auto plane = parse_container(fx);
  bool layout = std::string(fx.begin(), fx.begin() + 4) == "SDC1" && u32(4) == 13 && u32(8) == 9 && u32(12) == 75 &&
                u32(80) == 4 && plane.width == 13 && plane.height == 9 && plane.quant.quality_factor == 75;
  for (int i = 0; i < 64; ++i) layout = layout && fx[16 + i] == plane.quant.entries[i];
  for (std::size_t b = 0; b < 4; ++b)
    for (int z = 0; z < 64; ++z)
      layout = layout && i16(84 + 128 * b + 2 * z) == plane.coeffs[b][kZigzagToNatural[z]];
  layout = layout && plane.coeffs[0][0] == -1024 && plane.coeffs[3][63] == 32767 && plane.coeffs[3][kZigzagToNatural[62]] == -32768;
  layout = layout && serialize_container(plane) == fx;
  return {identical == 2 * kCorpusSize && layout,
          std::to_string(identical) + "/" + std::to_string(2 * kCorpusSize) +
              " corpus planes bit-identical; fixture small.sdc " + (layout ? "matches" : "does not match") +
              " the documented layout"};
}

}  // namespace

int main() {
  std::printf("corpus: %zu covers %dx%d, seed %llu\n", kCorpusSize, kCorpusSide, kCorpusSide,
              static_cast<unsigned long long>(kCorpusSeed));
  report(1, "matrix-coding goldens", goldens);
  report(2, "rounding/MDE worked example", worked_example);
  report(3, "parity example", parity_example);
  report(4, "round trip, 3 methods x 200 covers x 4 rates x 2 QFs", round_trips);
  report(5, "matrix-coding self-inverse", self_inverse);
  report(6, "non-zero conservation", nonzero_conservation);
  report(7, "DCT oracle", dct_oracle);
  report(8, "distortion ordering MDE <= MME <= F5", distortion_ordering);
  report(9, "error probability direction P(MDE) >= P(F5)", table_direction);
  report(10, "always-cover classifier P = 0.5", always_cover);
  report(11, "chi-square sanity", chi_square_sanity);
  report(12, "container format", container_format);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
