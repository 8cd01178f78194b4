#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "slz/rmq.hpp"
#include "slz/text_core.hpp"

namespace slz {

// argmin of A[i] over i in (b..e] with B[i] >= v; leftmost on ties.
//
// Level k keeps P_k = {j : B[j] >= k*y}. A level is cut into superblocks of y entries
// (per threshold offset d < y: the filtered minimum and its position, with RMQ on top)
// and micro-blocks of x entries, each packed into one 128-bit code holding the in-block
// ranks of A and B - k*y capped at y - 1.
class ThreeSidedRmqIndex {
 public:
  ThreeSidedRmqIndex() = default;
  ThreeSidedRmqIndex(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b);

  std::uint64_t size() const { return a_.size(); }
  std::optional<pos_t> query(pos_t b, pos_t e, std::uint64_t v) const;

  unsigned y() const { return y_; }
  unsigned x() const { return x_; }
  bool flat() const { return flat_; }
  std::size_t levels() const { return levels_.size(); }
  std::uint64_t total_level_size() const;
  // max(A) <= m log m and sum(B) <= m log m, the regime the layout is sized for.
  bool promise_holds() const { return promise_; }
  const std::vector<std::uint64_t>& a() const { return a_; }
  const std::vector<std::uint64_t>& b() const { return b_; }
  std::size_t memory_bytes() const;

 private:
  struct Level {
    std::vector<std::uint32_t> pos;             // 1-based positions into A
    std::vector<unsigned __int128> micro;       // one code per x entries
    std::vector<RmqIndex> super_val;            // per d in [0, y), values of filtered minima
    std::vector<std::vector<std::uint32_t>> super_pos;  // level index of each minimum, 0 = none
  };
  using Cand = std::optional<std::uint64_t>;  // 1-based level index

  Cand micro_query(const Level& lv, std::uint64_t lo, std::uint64_t hi, unsigned d) const;
  Cand partial(const Level& lv, std::uint64_t lo, std::uint64_t hi, unsigned d) const;
  Cand pick(const Level& lv, Cand c1, Cand c2) const;

  std::vector<std::uint64_t> a_, b_;
  unsigned y_ = 0, x_ = 0, rank_bits_ = 0, b_bits_ = 0;
  bool flat_ = true;
  bool promise_ = true;
  std::vector<Level> levels_;
};

}  // namespace slz
