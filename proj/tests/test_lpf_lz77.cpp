#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "slz/errors.hpp"
#include "slz/lpf.hpp"
#include "slz/lz77.hpp"
#include "slz/oracle.hpp"

using namespace slz;

namespace {

std::vector<sym_t> syms(std::string_view s) {
  std::vector<sym_t> v;
  for (char c : s) v.push_back(static_cast<sym_t>(c - 'a'));
  return v;
}

std::vector<pos_t> lens(const LpfIndex& l) {
  std::vector<pos_t> v;
  for (auto& e : l.all()) v.push_back(e.len);
  return v;
}

Phrase lit(char c) { return {0, c - 'a'}; }

}  // namespace

TEST_SUITE("lpf_lz77") {
  TEST_CASE("lpf examples") {
    auto mo = MinOccIndex::build(syms("aaaa"), 2);
    CHECK(lens(LpfIndex::build(mo, true)) == std::vector<pos_t>{0, 3, 2, 1});
    CHECK(lens(LpfIndex::build(mo, false)) == std::vector<pos_t>{0, 1, 2, 1});
    auto mb = MinOccIndex::build(syms("abab"), 2);
    auto lb = LpfIndex::build(mb, true);
    CHECK(lens(lb) == std::vector<pos_t>{0, 0, 2, 1});
    CHECK(lb.lpf_at(1) == LpfEntry{0, 0});
    CHECK(lb.lpf_at(2) == LpfEntry{0, 1});
    CHECK(lb.lpf_at(3) == LpfEntry{2, 1});
    CHECK(lb.lpf_at(4) == LpfEntry{1, 2});
    CHECK_THROWS_AS(lb.lpf_at(5), ParamError);
  }

  TEST_CASE("full arrays against the oracle, both variants") {
    std::mt19937_64 g(61);
    for (int it = 0; it < 40; ++it) {
      auto s = corpus::mixed(g, 600);
      oracle::Text ot(s.text.begin(), s.text.end());
      MinOccConfig cfg;
      if (it % 2 == 1 && s.sigma <= 4) {
        cfg.tau = 3;
        cfg.allow_fallback = false;
        auto t = pack_text(s.text, s.sigma, true);
        if (!MinOccIndex::tau_fits(3, t.n_total(), t.sigma())) cfg = {};
      }
      auto mo = MinOccIndex::build(s.text, s.sigma, cfg);
      for (bool ov : {true, false}) {
        auto li = LpfIndex::build(mo, ov);
        auto want = oracle::lpf(ot, ov);
        auto have = li.all();
        for (std::size_t j = 0; j < have.size(); ++j) {
          REQUIRE(have[j].len == want.len[j]);
          REQUIRE(have[j].src == want.src[j]);
        }
        for (std::size_t j = 1; j < have.size(); ++j) REQUIRE(have[j].len >= have[j - 1].len - 1);
        REQUIRE(static_cast<double>(li.marked_blocks()) <= static_cast<double>(li.n() + 1) / li.threshold());
      }
    }
  }

  TEST_CASE("heavy blocks are stored and read back") {
    // a long unary stretch after a short prefix forces a jump between samples;
    // the default b' exceeds n at any testable size, so shrink it
    std::vector<sym_t> a = syms("ab");
    for (int i = 0; i < 3000; ++i) a.push_back(0);
    a.push_back(1);
    auto mo = MinOccIndex::build(a, 2);
    for (bool ov : {true, false}) {
      auto li = LpfIndex::build(mo, ov, {16, 64});
      auto want = oracle::lpf(oracle::Text(a.begin(), a.end()), ov);
      auto have = li.all();
      for (std::size_t j = 0; j < have.size(); ++j) {
        REQUIRE(have[j].len == want.len[j]);
        REQUIRE(have[j].src == want.src[j]);
      }
      if (ov) CHECK(li.marked_blocks() >= 1);
    }
  }

  TEST_CASE("small blocks on random texts") {
    std::mt19937_64 g(64);
    for (int it = 0; it < 40; ++it) {
      auto s = corpus::mixed(g, 800);
      auto mo = MinOccIndex::build(s.text, s.sigma);
      const pos_t b = 1 + static_cast<pos_t>(g() % 8);
      for (bool ov : {true, false}) {
        auto li = LpfIndex::build(mo, ov, {b, b + static_cast<pos_t>(g() % 12)});
        auto want = oracle::lpf(oracle::Text(s.text.begin(), s.text.end()), ov);
        auto have = li.all();
        for (std::size_t j = 0; j < have.size(); ++j) REQUIRE(have[j].len == want.len[j]);
      }
    }
    auto mo = MinOccIndex::build(corpus::unary(50), 2);
    CHECK_THROWS_AS(LpfIndex::build(mo, true, {8, 4}), ParamError);
  }

  TEST_CASE("factorization examples") {
    auto a = factorize(syms("aaaa"), 2, Variant::overlap);
    CHECK(a.phrases == std::vector<Phrase>{lit('a'), {3, 1}});
    auto b = factorize(syms("aaaa"), 2, Variant::nonoverlap);
    CHECK(b.phrases == std::vector<Phrase>{lit('a'), {1, 1}, {2, 1}});
    for (Variant v : {Variant::overlap, Variant::nonoverlap})
      CHECK(factorize(syms("abab"), 2, v).phrases == std::vector<Phrase>{lit('a'), lit('b'), {2, 1}});
  }

  TEST_CASE("decode") {
    Factorization f{Variant::overlap, 4, {lit('a'), {3, 1}}};
    CHECK(decode(f, 2) == syms("aaaa"));
    Factorization one{Variant::overlap, 1, {lit('a')}};
    CHECK(decode(one, 2) == syms("a"));
    Factorization fwd{Variant::overlap, 2, {lit('a'), {1, 2}}};
    CHECK_THROWS_AS(decode(fwd, 2), FormatError);
    Factorization over{Variant::nonoverlap, 4, {lit('a'), {3, 1}}};
    CHECK_THROWS_AS(decode(over, 2), FormatError);
    Factorization shortf{Variant::overlap, 5, {lit('a'), {3, 1}}};
    CHECK_THROWS_AS(decode(shortf, 2), FormatError);
    Factorization badsym{Variant::overlap, 1, {{0, 7}}};
    CHECK_THROWS_AS(decode(badsym, 2), FormatError);
  }

  TEST_CASE("decode inverts factorize on random texts") {
    std::mt19937_64 g(62);
    for (int it = 0; it < 1000; ++it) {
      auto s = corpus::mixed(g, 200);
      for (Variant v : {Variant::overlap, Variant::nonoverlap}) {
        auto f = factorize(s.text, s.sigma, v);
        REQUIRE(decode(f, s.sigma) == s.text);
      }
    }
  }

  TEST_CASE("phrase count report") {
    auto u = factorize(corpus::unary(5000), 2, Variant::overlap);
    CHECK(u.size() == 2);
    auto r = phrase_count_bound(u, 2);
    CHECK(r.ratio < 0.01);
    auto one = factorize(syms("a"), 2, Variant::overlap);
    CHECK(one.size() == 1);
    std::mt19937_64 g(63);
    auto rb = phrase_count_bound(factorize(corpus::random_text(g, 20000, 2), 2, Variant::overlap), 2);
    CHECK(rb.ratio > 0.2);
    CHECK(rb.ratio < 3.0);
  }

  TEST_CASE("tsv and binary formats") {
    Factorization f{Variant::overlap, 6, {{0, 'a'}, {0, '#'}, {0, 10}, {3, 1}}};
    CHECK(to_tsv(f) == "L\ta\nL\t#35\nL\t#10\nC\t3\t1\n");
    CHECK(from_tsv(to_tsv(f), Variant::overlap).phrases == f.phrases);
    std::string bin = to_binary(f);
    CHECK(bin.substr(0, 7) == "SLZ77v1");
    CHECK(bin.size() == 7 + 16 + 16 * f.size());
    auto back = from_binary(bin, Variant::overlap);
    CHECK(back.phrases == f.phrases);
    CHECK(back.n == 6);
    CHECK_THROWS_AS(from_binary("SLZ77v2", Variant::overlap), FormatError);
    CHECK_THROWS_AS(from_binary(bin.substr(0, bin.size() - 1), Variant::overlap), FormatError);
    CHECK_THROWS_AS(from_tsv("X\t1\n", Variant::overlap), FormatError);
  }
}
