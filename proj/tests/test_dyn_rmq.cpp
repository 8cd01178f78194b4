#include <map>
#include <random>

#include "doctest.h"
#include "slz/dyn_rmq.hpp"
#include "slz/errors.hpp"

using namespace slz;

TEST_SUITE("dyn_rmq") {
  TEST_CASE("predecessor set examples") {
    SmallPredSet s(16);
    s.insert(3, 7);
    CHECK(s.predecessor(5) == SmallPredSet::Entry{3, 7});
    CHECK(s.successor(4) == SmallPredSet::Entry{16, 0});
    s.erase(3);
    CHECK(s.predecessor(3) == SmallPredSet::Entry{-1, 0});
    CHECK_THROWS_AS(s.erase(3), ContractError);
  }

  TEST_CASE("narrow range max examples") {
    NarrowRangeMax r(16);
    r.insert(3, 10);
    r.insert(5, 7);
    CHECK(r.query(4) == 7);
    CHECK(r.query(6) == 0);
    r.insert(5, 12);
    CHECK(r.query(4) == 12);
    CHECK(r.query(0) == 12);
    CHECK(r.pruned() >= 1);
    CHECK(r.staircase() == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{5, 12}});
  }

  TEST_CASE("random operations against a map") {
    std::mt19937_64 g(9);
    for (std::uint64_t h : {1u, 7u, 64u, 200u}) {
      SmallPredSet s(h);
      std::map<std::int64_t, std::uint64_t> ref;
      NarrowRangeMax nrm(h);
      std::vector<std::pair<std::uint64_t, std::uint64_t>> pts;
      for (int op = 0; op < 4000; ++op) {
        std::uint64_t k = g() % h;
        if (ref.count(static_cast<std::int64_t>(k))) {
          s.erase(k);
          ref.erase(static_cast<std::int64_t>(k));
        } else {
          std::uint64_t v = g() % 1000;
          s.insert(k, v);
          ref[static_cast<std::int64_t>(k)] = v;
        }
        std::int64_t q = static_cast<std::int64_t>(g() % (h + 2)) - 1;
        auto it = ref.upper_bound(q);
        SmallPredSet::Entry pred = it == ref.begin() ? SmallPredSet::Entry{-1, 0} : SmallPredSet::Entry(*std::prev(it));
        auto jt = ref.lower_bound(q);
        SmallPredSet::Entry succ = jt == ref.end() ? SmallPredSet::Entry{static_cast<std::int64_t>(h), 0} : SmallPredSet::Entry(*jt);
        REQUIRE(s.predecessor(q) == pred);
        REQUIRE(s.successor(q) == succ);

        if (op % 8 == 0) {
          std::uint64_t x = g() % h, y = 1 + g() % 500;
          nrm.insert(x, y);
          pts.push_back({x, y});
          std::int64_t qq = static_cast<std::int64_t>(g() % (h + 1));
          std::uint64_t want = 0;
          for (auto [px, py] : pts)
            if (static_cast<std::int64_t>(px) >= qq) want = std::max(want, py);
          REQUIRE(nrm.query(qq) == want);
        }
      }
    }
  }
}
