#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "slz/bmin.hpp"
#include "slz/errors.hpp"
#include "slz/minocc_index.hpp"
#include "slz/oracle.hpp"
#include "slz/runs.hpp"

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

MinOccIndex full_index(const std::vector<sym_t>& a, std::uint64_t sigma, pos_t tau, bool use_isa = false) {
  MinOccConfig cfg;
  cfg.tau = tau;
  cfg.allow_fallback = false;
  cfg.memory_relaxed = use_isa;
  return MinOccIndex::build(a, sigma, cfg);
}

// B_min bitvectors, e_min and the run table of one text against the definitional oracles.
void check_periodic(const std::vector<sym_t>& a, std::uint64_t sigma, pos_t tau) {
  auto t = pack_text(a, sigma, true);
  if (!MinOccIndex::tau_fits(tau, t.n_total(), t.sigma())) return;
  auto sc = build_scaffold(t);
  auto runs = RunsTable::build(t, sc, tau);
  auto ot = with_sentinel(a, sigma);
  const pos_t n = t.n_total();

  for (const Run& r : runs.runs()) {
    REQUIRE(oracle::in_R(ot, tau, r.a));
    REQUIRE_FALSE(oracle::in_R(ot, tau, r.a - 1));
    REQUIRE(oracle::run_end(ot, tau, r.a) == r.e);
    REQUIRE(oracle::run_type(ot, tau, r.a) == r.type);
    REQUIRE(oracle::smallest_period(ot, r.a, 3 * tau - 1) == r.p);
  }
  pos_t starts = 0;
  for (pos_t j = 1; j <= n; ++j) starts += oracle::in_R(ot, tau, j) && !oracle::in_R(ot, tau, j - 1);
  REQUIRE(static_cast<pos_t>(runs.runs().size()) == starts);

  auto emin = compute_emin(runs);
  for (int sign : {-1, 1}) {
    auto want = oracle::emin(ot, tau, sign);
    std::vector<std::pair<pos_t, pos_t>> have;
    for (std::size_t i = 0; i < runs.runs().size(); ++i)
      if (runs.runs()[i].type == sign) have.emplace_back(runs.runs()[i].a, emin[i]);
    REQUIRE(have == want);
  }

  for (bool use_isa : {false, true}) {
    auto parts = build_bmin(t, sc, runs, use_isa);
    for (int sign : {-1, 1}) {
      Bitvector want(static_cast<std::uint64_t>(n));
      for (pos_t j : oracle::rmin(ot, tau, sign)) want.set(static_cast<std::uint64_t>(sc.isa[j]), true);
      const Bitvector& have = sign < 0 ? parts.minus : parts.plus;
      REQUIRE(have.to_string() == want.to_string());
    }
    auto direct = bmin_from_isa(sc, runs, emin);
    REQUIRE(direct.first.to_string() == parts.minus.to_string());
    REQUIRE(direct.second.to_string() == parts.plus.to_string());
  }
}

}  // namespace

TEST_SUITE("periodic") {
  TEST_CASE("run of a's followed by b") {
    auto t = pack_text(syms("aaaaaaaab"), 2, true);
    auto sc = build_scaffold(t);
    auto runs = RunsTable::build(t, sc, 3);
    REQUIRE(runs.runs().size() == 1);
    const Run& r = runs.runs()[0];
    CHECK(r.a == 1);
    CHECK(r.e == 9);
    CHECK(r.p == 1);
    CHECK(r.s == 0);
    CHECK(r.exponent() == 8);
    CHECK(r.tail() == 0);
    CHECK(r.efull == 9);
    CHECK(r.type == 1);
    CHECK(runs.root_string(r.root) == syms("a"));
  }

  TEST_CASE("run of b's followed by a") {
    auto t = pack_text(syms("bbbbbbbba"), 2, true);
    auto sc = build_scaffold(t);
    auto runs = RunsTable::build(t, sc, 3);
    REQUIRE(runs.runs().size() == 1);
    CHECK(runs.runs()[0].a == 1);
    CHECK(runs.runs()[0].type == -1);
  }

  TEST_CASE("aperiodic text has no runs") {
    auto t = pack_text(corpus::de_bruijn(200, 2, 6), 2, true);
    auto sc = build_scaffold(t);
    CHECK(RunsTable::build(t, sc, 3).runs().empty());
    CHECK(RunsTable::build(t, sc, 2).runs().empty());
  }

  TEST_CASE("minimal rotation") {
    CHECK(min_rotation(syms("ba")) == 1);
    CHECK(min_rotation(syms("abab")) == 0);
    CHECK(min_rotation(syms("cab")) == 1);
    CHECK(min_rotation(syms("bba")) == 2);
  }

  TEST_CASE("single run: e_min is the start plus min(p, r)") {
    for (std::size_t k : {9u, 12u, 30u}) {
      std::vector<sym_t> a(k, 1);
      a.push_back(0);
      auto t = pack_text(a, 2, true);
      auto sc = build_scaffold(t);
      const pos_t tau = 3;
      auto runs = RunsTable::build(t, sc, tau);
      REQUIRE(runs.runs().size() == 1);
      const Run& r = runs.runs()[0];
      const pos_t rr = r.e - r.a - 3 * tau + 2;
      CHECK(compute_emin(runs)[0] == r.a + std::min(r.p, rr));
    }
  }

  TEST_CASE("two identical runs: the second block is empty") {
    std::vector<sym_t> a;
    for (int rep = 0; rep < 2; ++rep) {
      for (int i = 0; i < 10; ++i) a.push_back(1);
      a.push_back(0);
      a.push_back(2);
    }
    auto t = pack_text(a, 3, true);
    auto sc = build_scaffold(t);
    auto runs = RunsTable::build(t, sc, 3);
    REQUIRE(runs.runs().size() == 2);
    auto emin = compute_emin(runs);
    CHECK(emin[1] == runs.runs()[1].a);
    CHECK(emin[0] > runs.runs()[0].a);
  }

  TEST_CASE("definitional oracles on periodic-rich texts") {
    std::mt19937_64 g(41);
    for (int it = 0; it < 60; ++it) {
      const std::uint64_t sigma = 2 + g() % 2;
      const pos_t tau = 3 + static_cast<pos_t>(g() % (sigma == 2 ? 5 : 3));
      auto a = corpus::run_rich(g, 30 + g() % 300, sigma, static_cast<unsigned>(std::max<pos_t>(1, tau / 3)), 25);
      check_periodic(a, sigma, tau);
    }
    check_periodic(corpus::unary(100), 2, 3);
    check_periodic(corpus::fibonacci(300), 2, 6);
  }

  TEST_CASE("window queries on periodic texts equal the naive scan") {
    std::mt19937_64 g(42);
    for (int it = 0; it < 20; ++it) {
      const pos_t tau = 3 + static_cast<pos_t>(g() % 5);
      auto a = corpus::run_rich(g, 40 + g() % 120, 2, static_cast<unsigned>(std::max<pos_t>(1, tau / 3)), 25);
      auto ot = with_sentinel(a, 2);
      for (bool relaxed : {false, true}) {
        auto idx = full_index(a, 2, tau, relaxed);
        const pos_t n = static_cast<pos_t>(ot.size());
        for (pos_t j = 1; j <= n; ++j)
          for (pos_t len = 3 * tau - 1; j + len <= n + 1; ++len) {
            if (!oracle::in_R(ot, tau, j)) continue;
            REQUIRE(idx.minocc_window(j, len) == oracle::minocc_window(ot, j, len));
          }
      }
    }
  }

  TEST_CASE("explicit periodic patterns") {
    auto a = syms("aaaa");
    auto idx = full_index(a, 2, 2);
    CHECK(idx.minocc_pattern(syms("aaa")) == 1);
    std::vector<sym_t> b;
    for (int i = 0; i < 9; ++i) b.push_back(0);
    b.push_back(1);
    for (int i = 0; i < 14; ++i) b.push_back(0);
    b.push_back(1);
    auto idx3 = full_index(b, 2, 3);
    std::vector<sym_t> p(12, 0);
    CHECK(idx3.minocc_pattern(p) == 11);  // only the second run is long enough
    p.resize(9);
    p.push_back(1);
    CHECK(idx3.minocc_pattern(p) == 1);
    std::vector<sym_t> absent(20, 0);
    CHECK_THROWS_AS(idx3.minocc_pattern(absent), NotFoundError);
  }
}
