#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace slz {

// Predecessor/successor over keys in [0, h) with one value per key, kept as a bit mask.
// Missing answers are (-1, 0) below and (h, 0) above.
class SmallPredSet {
 public:
  using Entry = std::pair<std::int64_t, std::uint64_t>;

  explicit SmallPredSet(std::uint64_t h = 64);

  std::uint64_t universe() const { return h_; }
  std::uint64_t size() const { return count_; }
  bool contains(std::uint64_t key) const;
  void insert(std::uint64_t key, std::uint64_t value);
  void erase(std::uint64_t key);
  // Largest key <= q, smallest key >= q.
  Entry predecessor(std::int64_t q) const;
  Entry successor(std::int64_t q) const;
  std::uint64_t value(std::uint64_t key) const { return vals_[key]; }
  void clear();

 private:
  std::uint64_t h_;
  std::uint64_t count_ = 0;
  std::vector<std::uint64_t> mask_;
  std::vector<std::uint64_t> vals_;
};

// max{y : (x, y) inserted, x >= q}, 0 if none. Only the staircase of undominated
// pairs is stored; increasing x carries strictly decreasing y.
class NarrowRangeMax {
 public:
  explicit NarrowRangeMax(std::uint64_t h = 64) : set_(h) {}

  void insert(std::uint64_t x, std::uint64_t y);
  std::uint64_t query(std::int64_t q) const;
  void clear() { set_.clear(); }

  std::uint64_t inserted() const { return inserted_; }
  std::uint64_t pruned() const { return pruned_; }
  std::uint64_t stored() const { return set_.size(); }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> staircase() const;

 private:
  SmallPredSet set_;
  std::uint64_t inserted_ = 0, pruned_ = 0;
};

}  // namespace slz
