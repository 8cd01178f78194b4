#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "slz/errors.hpp"
#include "slz/minocc_index.hpp"
#include "slz/oracle.hpp"

using namespace slz;

namespace {

std::vector<sym_t> syms(std::string_view s) {
  std::vector<sym_t> v;
  for (char c : s) v.push_back(static_cast<sym_t>(c - 'a'));
  return v;
}

oracle::Text with_sentinel(const std::vector<sym_t>& a, std::uint64_t sigma) {
  oracle::Text t(a.begin(), a.end());
  t.push_back(static_cast<sym_t>(sigma));
  return t;
}

MinOccIndex forced(const std::vector<sym_t>& a, std::uint64_t sigma, pos_t tau) {
  MinOccConfig cfg;
  cfg.tau = tau;
  cfg.allow_fallback = false;
  return MinOccIndex::build(a, sigma, cfg);
}

void exhaustive(const MinOccIndex& idx, const std::vector<sym_t>& a, std::uint64_t sigma) {
  auto ot = with_sentinel(a, sigma);
  const pos_t n = static_cast<pos_t>(ot.size());
  for (pos_t j = 1; j <= n; ++j)
    for (pos_t len = 1; j + len <= n + 1; ++len) {
      const pos_t want = oracle::minocc_window(ot, j, len);
      REQUIRE(idx.minocc_window(j, len) == want);
      if (j + len <= n) {
        std::vector<sym_t> p(a.begin() + (j - 1), a.begin() + (j - 1 + len));
        REQUIRE(idx.minocc_pattern(p) == want);
      }
    }
}

}  // namespace

TEST_SUITE("minocc") {
  TEST_CASE("core tables") {
    auto t = pack_text(syms("abab"), 2, true);
    auto c = CoreTables::build(t, 1);
    CHECK(c.minocc_pattern(syms("a")) == 1);
    CHECK(c.minocc_pattern(syms("b")) == 2);
    auto u = pack_text(syms("aaaa"), 2, true);
    auto cu = CoreTables::build(u, 2);
    CHECK(cu.minocc_pattern(syms("aa")) == 1);
    CHECK(cu.minocc_window(2, 2) == 1);
    CHECK_THROWS_AS(cu.minocc_pattern(syms("b")), NotFoundError);
    auto cab = CoreTables::build(t, 2);
    CHECK(cab.minocc_window(3, 2) == 1);
    CHECK(cab.minocc_window(1, 1) == 1);
  }

  TEST_CASE("periodicity tests of the (3tau-1)-prefix") {
    std::mt19937_64 g(1);
    auto t = pack_text(corpus::random_text(g, 100, 3), 3, true);
    auto c = CoreTables::build(t, 3);
    CHECK(c.is_periodic_pattern(std::vector<sym_t>(8, 0)));
    CHECK_FALSE(c.is_periodic_pattern(syms("abcabcab")));
    auto c6 = CoreTables::build(t, 6);
    std::vector<sym_t> per2;
    for (int i = 0; i < 17; ++i) per2.push_back(i % 2);
    CHECK(c6.is_periodic_pattern(per2));  // period exactly tau/3
    per2[16] = 2;
    CHECK_FALSE(c6.is_periodic_pattern(per2));
  }

  TEST_CASE("core tables in dense and sparse mode agree with the scan") {
    std::mt19937_64 g(51);
    for (int it = 0; it < 10; ++it) {
      const std::uint64_t sigma = it < 5 ? 2 : 5;
      auto a = corpus::random_text(g, 50 + g() % 300, sigma);
      auto t = pack_text(a, sigma, true);
      for (pos_t tau : {2, 3, 4}) {
        if (!MinOccIndex::tau_fits(tau, t.n_total(), t.sigma())) continue;
        auto c = CoreTables::build(t, tau);
        auto ot = with_sentinel(a, sigma);
        for (pos_t j = 1; j <= t.n_total(); ++j)
          for (pos_t len = 1; len <= c.max_len() && j + len <= t.n_total() + 1; ++len)
            REQUIRE(c.minocc_window(j, len) == oracle::minocc_window(ot, j, len));
        for (pos_t j = 1; j <= t.n_total(); ++j)
          REQUIRE((c.window_period(j) != 0) == oracle::in_R(ot, tau, j));
      }
    }
  }

  TEST_CASE("distinguishing prefixes") {
    std::mt19937_64 g(52);
    auto a = corpus::random_text(g, 400, 2);
    auto t = pack_text(a, 2, true);
    auto sc = build_scaffold(t);
    const pos_t tau = 3;
    auto np = NonperiodicIndex::build(t, sc, tau);
    std::vector<std::vector<sym_t>> all;
    for (pos_t j = 1; j <= t.n_total() - 3 * tau + 2; ++j) {
      if (in_R(t, tau, j)) continue;
      auto d = np.dist_prefix(j);
      const pos_t delta = np.dist_offset(j);
      REQUIRE(static_cast<pos_t>(d.size()) == delta + 2 * tau);
      REQUIRE(static_cast<pos_t>(d.size()) <= 3 * tau - 1);
      if (np.sync().contains(j)) REQUIRE(d.size() == static_cast<std::size_t>(2 * tau));
      all.push_back(d);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (std::size_t i = 0; i + 1 < all.size(); ++i) {
      const auto& x = all[i];
      const auto& y = all[i + 1];
      const bool prefix = x.size() < y.size() && std::equal(x.begin(), x.end(), y.begin());
      REQUIRE_FALSE(prefix);
    }
    CHECK(np.dist_prefix_count() == all.size());
  }

  TEST_CASE("sampled suffix ranges") {
    std::mt19937_64 g(53);
    auto a = corpus::random_text(g, 300, 2);
    auto t = pack_text(a, 2, true);
    auto sc = build_scaffold(t);
    auto np = NonperiodicIndex::build(t, sc, 2);
    auto full = t.unpack();
    for (int q = 0; q < 300; ++q) {
      pos_t j = 1 + g() % t.n_total();
      pos_t len = 1 + g() % (t.n_total() - j + 1);
      pos_t below = 0, match = 0;
      for (std::size_t i = 1; i <= np.samples(); ++i) {
        int c = compare_suffix(t, np.sample(i), t, j, len);
        below += c < 0;
        match += c == 0;
      }
      REQUIRE(np.suffix_range(j, len) == std::pair<pos_t, pos_t>{below, below + match});
    }
    std::vector<sym_t> tiny{0};
    auto p = pack_pattern(tiny, t);
    auto r = np.suffix_range(p, 1);
    CHECK(r.first == 0);
  }

  TEST_CASE("window example and self-leftmost") {
    auto idx = forced(syms("abab"), 2, 2);
    CHECK(idx.minocc_window(3, 2) == 1);
    for (pos_t len = 1; len <= 5; ++len) CHECK(idx.minocc_window(1, len) == 1);
    CHECK_THROWS_AS(idx.minocc_window(0, 1), ParamError);
    CHECK_THROWS_AS(idx.minocc_window(3, 4), ParamError);
  }

  TEST_CASE("regimes") {
    std::mt19937_64 g(54);
    auto small = corpus::random_text(g, 40, 16);
    CHECK(MinOccIndex::build(small, 16).fallback());
    auto big = corpus::random_text(g, 100000, 2);
    auto idx = MinOccIndex::build(big, 2);
    CHECK_FALSE(idx.fallback());
    CHECK(idx.tau() == MinOccIndex::default_tau(100001, 2));
    CHECK(idx.tau() == 2);
    CHECK_THROWS_AS(forced(small, 16, 9), ConfigError);
    oracle::LargeOracle lo(with_sentinel(big, 2));
    for (int q = 0; q < 3000; ++q) {
      pos_t j = 1 + g() % 100001, len = 1 + g() % std::min<pos_t>(100, 100002 - j);
      REQUIRE(idx.minocc_window(j, len) == lo.minocc_window(j, len));
    }
  }

  TEST_CASE("explicit patterns") {
    std::mt19937_64 g(55);
    auto a = corpus::random_text(g, 500, 2);
    auto idx = forced(a, 2, 3);
    auto ot = with_sentinel(a, 2);
    for (int q = 0; q < 2000; ++q) {
      std::vector<sym_t> p(1 + g() % 20);
      for (auto& c : p) c = g() % 2;
      auto want = oracle::minocc(ot, oracle::Text(p.begin(), p.end()));
      if (want) REQUIRE(idx.minocc_pattern(p) == *want);
      else REQUIRE_THROWS_AS(idx.minocc_pattern(p), NotFoundError);
    }
    std::vector<sym_t> bad{0, 2};
    CHECK_THROWS_AS(idx.minocc_pattern(bad), NotFoundError);
    CHECK_THROWS_AS(idx.minocc_pattern(std::vector<sym_t>{}), ParamError);
  }

  TEST_CASE("exhaustive windows and patterns on small texts") {
    std::mt19937_64 g(56);
    for (int it = 0; it < 40; ++it) {
      auto s = corpus::mixed(g, 120);
      exhaustive(MinOccIndex::build(s.text, s.sigma), s.text, s.sigma);
      if (s.sigma <= 4)
        for (pos_t tau : {2, 3, 5}) {
          auto t = pack_text(s.text, s.sigma, true);
          if (MinOccIndex::tau_fits(tau, t.n_total(), t.sigma())) exhaustive(forced(s.text, s.sigma, tau), s.text, s.sigma);
        }
    }
    exhaustive(forced(corpus::unary(150), 2, 4), corpus::unary(150), 2);
  }
}
