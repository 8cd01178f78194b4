#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "slz/bitpack.hpp"
#include "slz/minocc_index.hpp"

namespace slz {

struct LpfEntry {
  pos_t len = 0;
  pos_t src = 0;  // leftmost occurrence, or the symbol itself when len = 0
  bool operator==(const LpfEntry&) const = default;
};

// Zero keeps the default b = log^3 n and b' = max(log^6 n, 4b).
struct LpfParams {
  pos_t block = 0;
  pos_t threshold = 0;
};

// Random access to LPF (overlap) or LPnF (non-overlap) over T[1..n]. Values are
// sampled every b positions; a block whose sampled values jump by b' - b or more is
// stored explicitly, every other position is a binary search on the feasible length
// between bounds derived from the neighbouring samples.
class LpfIndex {
 public:
  LpfIndex() = default;
  // `minocc` must outlive the index.
  static LpfIndex build(const MinOccIndex& minocc, bool overlap, const LpfParams& params = {});

  bool overlap() const { return overlap_; }
  pos_t n() const { return n_; }
  pos_t block() const { return b_; }
  pos_t threshold() const { return b2_; }
  pos_t boundaries() const { return static_cast<pos_t>(a_.size()) - 1; }
  std::uint64_t marked_blocks() const { return marked_.ones(); }
  pos_t sample(pos_t i) const { return a_[i]; }  // LPF[i*b], sample(0) = 0

  LpfEntry lpf_at(pos_t j) const;
  std::vector<LpfEntry> all() const;

  std::size_t memory_bytes() const;

 private:
  bool feasible(pos_t j, pos_t len) const;
  pos_t search(pos_t j, pos_t lo, pos_t hi) const;
  std::pair<pos_t, pos_t> bounds(pos_t j) const;
  LpfEntry entry(pos_t j, pos_t len) const;

  const MinOccIndex* mo_ = nullptr;
  bool overlap_ = true;
  pos_t n_ = 0;
  pos_t b_ = 0, b2_ = 0;
  std::vector<pos_t> a_;             // a_[i] = LPF[i*b], i in [0..m]
  Bitvector marked_;                 // over blocks 1..m
  std::vector<pos_t> heavy_;         // b values per marked block, in block order
};

}  // namespace slz
