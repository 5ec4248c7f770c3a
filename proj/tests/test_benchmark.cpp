#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "sdc/benchmark.hpp"
#include "sdc/corpus.hpp"
#include "sdc/error.hpp"
#include "sdc/metrics.hpp"
#include "test_support.hpp"

using namespace sdc;

TEST_CASE("split indices") {
  const auto [train, test] = split_indices(11, 3);
  CHECK(train.size() == 5);
  CHECK(test.size() == 6);
  std::set<std::size_t> all(train.begin(), train.end());
  all.insert(test.begin(), test.end());
  CHECK(all.size() == 11);
  CHECK(split_indices(11, 3) == split_indices(11, 3));
  CHECK(split_indices(11, 3) != split_indices(11, 4));
  const auto [a, b] = split_indices(1, 9);
  CHECK(a == std::vector<std::size_t>{0});
  CHECK(b == std::vector<std::size_t>{0});
}

TEST_CASE("rate payload") {
  CHECK(rate_payload(1000, 5, 1).size() == 50);
  CHECK(rate_payload(999, 10, 1).size() == 99);
  CHECK(rate_payload(1000, 0, 1).empty());
  CHECK(rate_payload(1000, 10, 1) == rate_payload(1000, 10, 1));
  CHECK(rate_payload(1000, 10, 1) != rate_payload(1000, 10, 2));
  CHECK_THROWS_AS(rate_payload(10, 120, 1), ParameterError);
}

TEST_CASE("corpus generation") {
  const auto a = generate_corpus(6, 64, 64, 17);
  CHECK(a == generate_corpus(6, 64, 64, 17));
  CHECK(a != generate_corpus(6, 64, 64, 18));
  CHECK(texture_of(0) == TextureFamily::kSmoothedNoise);
  CHECK(texture_of(1) == TextureFamily::kGradientNoise);
  CHECK(texture_of(2) == TextureFamily::kBlobs);
  for (const auto& img : a) {
    const auto h = coeff_histogram(compress(img, 50));
    const auto mode = std::max_element(h.begin(), h.end(), [](auto& x, auto& y) { return x.second < y.second; });
    CHECK(mode->first == 0);
  }
  CHECK_THROWS_AS(generate_corpus(0, 64, 64, 1), ParameterError);

  test::TempDir dir("corpus");
  const auto paths = write_corpus(a, dir.path());
  CHECK(list_corpus(dir.path()) == paths);
  CHECK(read_pgm(paths[2]) == a[2]);
}

TEST_CASE("small benchmark") {
  const auto covers = generate_corpus(12, 64, 64, 5);
  BenchmarkConfig cfg;
  cfg.rates = {10, 20};
  cfg.seeds = {1, 2};
  cfg.threads = 2;
  const auto r = run_benchmark(covers, cfg);
  CHECK(r.warnings.empty());
  REQUIRE(r.cells.size() == 8);
  CHECK(r.all_ok());
  for (const auto& c : r.cells) {
    CHECK(c.per_seed.size() == 2);
    CHECK(c.mean.p >= 0.0);
    CHECK(c.mean.p <= 1.0);
    CHECK(c.distortion.modifications > 0.0);
  }
  REQUIRE(r.find(Method::kMde, 75, 20) != nullptr);
  CHECK(r.find(Method::kMde, 75, 20)->distortion.zero_delta == 0.0);
  CHECK(r.find(Method::kMme, 75, 20) == nullptr);

  const auto csv = benchmark_csv(r);
  CHECK(csv.rfind("method,qf,rate,p_fa,p_md,p,seed\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 8 * 3);
  const auto md = benchmark_markdown(r, cfg);
  CHECK(std::count(md.begin(), md.end(), '\n') == 2 + 4);

  cfg.threads = 1;
  CHECK(benchmark_csv(run_benchmark(covers, cfg)) == csv);
}

TEST_CASE("degenerate corpora") {
  BenchmarkConfig cfg;
  cfg.rates = {5};
  cfg.quality_factors = {75};
  cfg.seeds = {1};
  const auto one = run_benchmark(generate_corpus(1, 64, 64, 2), cfg);
  CHECK_FALSE(one.warnings.empty());
  CHECK(one.all_ok());
  CHECK_THROWS_AS(run_benchmark({}, cfg), ParameterError);

  // 16x16 covers are far too small for the MDE header
  const auto tiny = run_benchmark(generate_corpus(4, 16, 16, 2), cfg);
  CHECK_FALSE(tiny.all_ok());
  CHECK(benchmark_csv(tiny).find("failed") != std::string::npos);
}
