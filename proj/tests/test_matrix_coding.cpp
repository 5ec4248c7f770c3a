#include <doctest.h>

#include <random>

#include "sdc/error.hpp"
#include "sdc/matrix_coding.hpp"

using namespace sdc;

TEST_CASE("H for v=3") {
  const auto h = build_h(3);
  CHECK(h.group_size() == 7);
  const char* rows[] = {"0001111", "0110011", "1010101"};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 7; ++c) CHECK(h.at(r, c) == rows[r][c] - '0');
  CHECK(build_h(1).group_size() == 1);
  CHECK(build_h(8).group_size() == 255);
  CHECK_THROWS_AS(build_h(0), ParameterError);
  CHECK_THROWS_AS(build_h(9), ParameterError);
}

TEST_CASE("group example") {
  const auto h = build_h(3);
  const std::vector<int> c{5, 2, 3, 1, -2, -5, -1};
  CHECK(h.product(c) == std::vector<long>{-7, -1, 5});
  CHECK(syndrome(h, c) == Bits{1, 1, 1});
  CHECK(locate(Bits{1, 1, 1}, Bits{1, 0, 1}) == 2);
  CHECK(locate(Bits{1, 0, 1}, Bits{1, 0, 1}) == 0);

  const std::vector<int> modified{5, 1, 3, 1, -2, -5, -1};
  CHECK(h.product(modified) == std::vector<long>{-7, -2, 5});
  CHECK(decode_bits(h, modified) == Bits{1, 0, 1});

  CHECK_THROWS_AS(syndrome(h, std::vector<int>{1, 2}), ParameterError);
  CHECK_THROWS_AS(locate(Bits{1, 0}, Bits{1, 0, 1}), ParameterError);
}

TEST_CASE("parity of negatives") {
  CHECK(parity(-7) == 1);
  CHECK(parity(-2) == 0);
  CHECK(parity(0) == 0);
  CHECK(parity(9) == 1);
}

TEST_CASE("one +-1 change reaches any target") {
  std::mt19937_64 rng(99);
  for (int v = 1; v <= 4; ++v) {
    const auto h = build_h(v);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<int> c(static_cast<std::size_t>(h.group_size()));
      for (auto& x : c) x = static_cast<int>(rng() % 41) - 20;
      Bits m(static_cast<std::size_t>(v));
      for (auto& b : m) b = rng() & 1;
      const int p = locate(syndrome(h, c), m);
      if (p > 0) c[static_cast<std::size_t>(p - 1)] += (rng() & 1) ? 1 : -1;
      REQUIRE(decode_bits(h, c) == m);
    }
  }
}
