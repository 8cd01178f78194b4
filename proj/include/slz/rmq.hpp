#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "slz/text_core.hpp"

namespace slz {

// Range minimum over (b..e], leftmost argmin, 1-based answers.
// 64-element blocks with in-block stack masks plus a sparse table over blocks.
class RmqIndex {
 public:
  RmqIndex() = default;
  explicit RmqIndex(std::vector<std::uint64_t> values);

  std::uint64_t size() const { return a_.size(); }
  pos_t query(pos_t b, pos_t e) const;
  std::uint64_t value(pos_t i) const { return a_[i - 1]; }
  const std::vector<std::uint64_t>& values() const { return a_; }
  std::size_t memory_bytes() const;

 private:
  std::uint64_t in_block(std::uint64_t l, std::uint64_t r) const;  // 0-based, same block
  std::uint64_t better(std::uint64_t x, std::uint64_t y) const { return a_[y] < a_[x] ? y : x; }

  std::vector<std::uint64_t> a_;
  std::vector<std::uint64_t> mask_;
  std::vector<std::vector<std::uint32_t>> sparse_;  // block indices
};

// Systematic RMQ over a packed array with values in [0, sigma). In-block answers come
// from a push/pop encoding of each block's Cartesian tree, so a query reads at most
// three elements of the array.
class PackedRmqIndex {
 public:
  PackedRmqIndex() = default;
  PackedRmqIndex(std::span<const std::uint64_t> values, std::uint64_t sigma);

  std::uint64_t size() const { return m_; }
  unsigned block_size() const { return tau_; }
  // `reads`, when given, is incremented once per array element inspected.
  pos_t query(pos_t b, pos_t e, std::uint64_t* reads = nullptr) const;
  std::uint64_t value(pos_t i) const { return get(static_cast<std::uint64_t>(i - 1)); }
  bool uses_table() const { return table_ != nullptr; }
  std::size_t memory_bytes() const;

 private:
  std::uint64_t get(std::uint64_t i) const;
  unsigned block_argmin(std::uint64_t blk, unsigned l, unsigned r) const;

  std::uint64_t m_ = 0;
  unsigned w_ = 1;
  unsigned tau_ = 1;
  std::vector<std::uint64_t> packed_;
  std::vector<std::uint64_t> codes_;  // 2*tau bits per block
  RmqIndex block_min_;
  const std::vector<std::uint8_t>* table_ = nullptr;
};

// RMQ that keeps only per-block Cartesian-tree codes and block minima; the array itself
// is reached through a caller-supplied strict order on 1-based indices, at most three
// comparisons per query.
class SystematicRmq {
 public:
  static constexpr unsigned kBlock = 7;

  SystematicRmq() = default;
  explicit SystematicRmq(std::span<const std::uint64_t> values, unsigned block = kBlock);

  std::uint64_t size() const { return m_; }
  template <class Less>
  pos_t query(pos_t b, pos_t e, Less&& less) const;
  std::size_t memory_bytes() const { return codes_.size() * 8 + block_min_.memory_bytes(); }

 private:
  unsigned block_argmin(std::uint64_t blk, unsigned l, unsigned r) const;

  std::uint64_t m_ = 0;
  unsigned tau_ = 1;
  std::vector<std::uint64_t> codes_;
  RmqIndex block_min_;
  const std::vector<std::uint8_t>* table_ = nullptr;
};

template <class Less>
pos_t SystematicRmq::query(pos_t b, pos_t e, Less&& less) const {
  std::uint64_t l = static_cast<std::uint64_t>(b), r = static_cast<std::uint64_t>(e - 1);
  std::uint64_t bl = l / tau_, br = r / tau_;
  if (bl == br) return static_cast<pos_t>(bl * tau_ + block_argmin(bl, l % tau_, r % tau_)) + 1;
  pos_t best = static_cast<pos_t>(bl * tau_ + block_argmin(bl, l % tau_, tau_ - 1)) + 1;
  if (bl + 1 < br) {
    std::uint64_t blk = static_cast<std::uint64_t>(block_min_.query(static_cast<pos_t>(bl + 1), static_cast<pos_t>(br))) - 1;
    pos_t c = static_cast<pos_t>(blk * tau_ + block_argmin(blk, 0, tau_ - 1)) + 1;
    if (less(c, best)) best = c;
  }
  pos_t c = static_cast<pos_t>(br * tau_ + block_argmin(br, 0, r % tau_)) + 1;
  if (less(c, best)) best = c;
  return best;
}

}  // namespace slz
