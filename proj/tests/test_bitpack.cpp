#include <random>

#include "doctest.h"
#include "slz/bitpack.hpp"
#include "slz/errors.hpp"

using namespace slz;

namespace {
Bitvector built(std::string_view s) {
  auto b = Bitvector::from_string(s);
  b.build_directories();
  return b;
}
}  // namespace

TEST_SUITE("bitpack") {
  TEST_CASE("successor of a one") {
    CHECK(succ_one(Bitvector::from_string("0010"), 0, 4) == 3);
    CHECK(succ_one(Bitvector::from_string("0000"), 0, 4) == 5);
    CHECK(succ_one(Bitvector::from_string("0110"), 1, 2) == 2);
  }

  TEST_CASE("repeat") {
    CHECK(repeat(Bitvector::from_string("10"), 3).to_string() == "101010");
    auto ones = repeat(Bitvector::from_string("1"), 64);
    CHECK(ones.words()[0] == ~std::uint64_t{0});
    CHECK(repeat(Bitvector::from_string("011"), 2).to_string() == "011011");
    CHECK(repeat(Bitvector::from_string("011"), 0).size() == 0);
  }

  TEST_CASE("rank and select") {
    auto b = built("1011");
    CHECK(b.rank1(3) == 2);
    CHECK(b.select1(3) == 4);
    CHECK(b.rank1(0) == 0);
    CHECK(b.select0(1) == 2);
    CHECK_THROWS_AS(built("0").select1(1), QueryError);
  }

  TEST_CASE("delete positions") {
    std::vector<std::uint64_t> d{2, 5};
    CHECK(delete_positions(Bitvector::from_string("10101"), d).to_string() == "110");
    auto b = Bitvector::from_string("100101");
    CHECK(delete_positions(b, {}).to_string() == "100101");
    std::vector<std::uint64_t> one{1};
    CHECK(delete_positions(Bitvector::from_string("1"), one).size() == 0);
  }

  TEST_CASE("insert pairs") {
    std::vector<std::pair<std::uint64_t, bool>> p{{2, false}, {5, true}};
    auto s = insert_pairs(Bitvector::from_string("110"), p);
    CHECK(s.to_string() == "10101");
    std::vector<std::uint64_t> d{2, 5};
    CHECK(delete_positions(s, d).to_string() == "110");
    CHECK(insert_pairs(Bitvector::from_string("0110"), {}).to_string() == "0110");
    std::vector<std::pair<std::uint64_t, bool>> q{{1, true}};
    CHECK(insert_pairs(Bitvector(), q).to_string() == "1");
  }

  TEST_CASE("rank/select/succ against scans on random bitvectors") {
    std::mt19937_64 g(1);
    for (int it = 0; it < 40; ++it) {
      const std::uint64_t m = 1 + g() % 5000;
      const unsigned density = 1 + g() % 20;
      std::string s(m, '0');
      for (auto& c : s) c = g() % density == 0 ? '1' : '0';
      auto b = built(s);
      std::vector<std::uint64_t> ones, zeros;
      for (std::uint64_t i = 1; i <= m; ++i) (s[i - 1] == '1' ? ones : zeros).push_back(i);
      REQUIRE(b.ones() == ones.size());
      std::uint64_t r = 0;
      for (std::uint64_t i = 0; i <= m; ++i) {
        if (i > 0 && s[i - 1] == '1') ++r;
        REQUIRE(b.rank1(i) == r);
      }
      for (std::size_t k = 0; k < ones.size(); ++k) REQUIRE(b.select1(k + 1) == ones[k]);
      for (std::size_t k = 0; k < zeros.size(); ++k) REQUIRE(b.select0(k + 1) == zeros[k]);
      for (int q = 0; q < 200; ++q) {
        std::uint64_t i = g() % (m + 1), j = i + g() % (m - i + 1);
        std::uint64_t want = j + 1;
        for (std::uint64_t t = i + 1; t <= j; ++t)
          if (s[t - 1] == '1') {
            want = t;
            break;
          }
        REQUIRE(succ_one(b, i, j) == want);
      }
    }
  }

  TEST_CASE("insert then delete round-trips on random input") {
    std::mt19937_64 g(2);
    for (int it = 0; it < 100; ++it) {
      std::string s(g() % 300, '0');
      for (auto& c : s) c = g() % 2 ? '1' : '0';
      auto b = Bitvector::from_string(s);
      const std::uint64_t total = s.size() + g() % 50;
      std::vector<std::pair<std::uint64_t, bool>> pairs;
      std::vector<std::uint64_t> pos;
      for (std::uint64_t p = 1; p <= total && pos.size() < total - s.size(); ++p)
        if (g() % 3 == 0 || total - p + 1 == total - s.size() - pos.size()) {
          pos.push_back(p);
          pairs.push_back({p, g() % 2 == 1});
        }
      if (pos.size() != total - s.size()) continue;
      auto ins = insert_pairs(b, pairs);
      REQUIRE(ins.size() == total);
      for (auto [p, c] : pairs) REQUIRE(ins.get(p) == c);
      REQUIRE(delete_positions(ins, pos) == b);
    }
  }

  TEST_CASE("append and serialization") {
    Bitvector b;
    for (int i = 0; i < 130; ++i) b.push_back(i % 3 == 0);
    b.append_fill(true, 70);
    b.append_range(Bitvector::from_string("0101"), 1, 2);
    b.build_directories();
    std::string out;
    b.save(out);
    std::string_view in = out;
    auto c = Bitvector::load(in);
    CHECK(in.empty());
    CHECK(c == b);
    CHECK(c.rank1(c.size()) == b.ones());
  }
}
