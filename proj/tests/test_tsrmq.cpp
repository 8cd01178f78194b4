#include <random>

#include "doctest.h"
#include "slz/oracle.hpp"
#include "slz/tsrmq.hpp"

using namespace slz;

TEST_SUITE("tsrmq") {
  TEST_CASE("examples") {
    ThreeSidedRmqIndex t({5, 2, 7, 1}, {1, 3, 0, 2});
    CHECK(t.query(0, 4, 2) == std::optional<pos_t>(4));
    CHECK_FALSE(t.query(0, 4, 4).has_value());
    CHECK(t.query(2, 3, 0) == std::optional<pos_t>(3));
    CHECK_FALSE(t.query(2, 2, 0).has_value());
  }

  TEST_CASE("v = 0 is a plain rmq") {
    std::mt19937_64 g(4);
    std::vector<std::uint64_t> a(500), b(500);
    for (auto& v : a) v = g() % 1000;
    for (auto& v : b) v = g() % 8;
    ThreeSidedRmqIndex t(a, b);
    for (int q = 0; q < 500; ++q) {
      pos_t lo = g() % 500, hi = lo + 1 + g() % (500 - lo);
      REQUIRE(t.query(lo, hi, 0) == std::optional<pos_t>(oracle::rmq(a, lo, hi)));
    }
  }

  TEST_CASE("random instances, small and large, against the scan") {
    std::mt19937_64 g(6);
    for (int it = 0; it < 25; ++it) {
      const std::size_t m = it < 10 ? 1 + g() % 40 : 500 + g() % 6000;
      std::vector<std::uint64_t> a(m), b(m);
      const std::uint64_t arange = 1 + g() % (4 * m), brange = 1 + g() % 200;
      for (auto& v : a) v = g() % arange;
      for (auto& v : b) v = g() % 3 == 0 ? g() % brange : g() % 4;
      ThreeSidedRmqIndex t(a, b);
      for (int q = 0; q < 400; ++q) {
        pos_t lo = g() % (m + 1), hi = lo + g() % (m - lo + 1);
        std::uint64_t v = g() % (brange + 2);
        REQUIRE(t.query(lo, hi, v) == oracle::tsrmq(a, b, lo, hi, v));
      }
    }
  }
}
