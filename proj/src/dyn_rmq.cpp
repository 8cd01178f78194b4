#include "slz/dyn_rmq.hpp"

#include <bit>

#include "slz/errors.hpp"

namespace slz {

SmallPredSet::SmallPredSet(std::uint64_t h) : h_(h), mask_((h + 63) / 64, 0), vals_(h, 0) {
  if (h == 0) throw ParamError("pred set: empty universe");
}

bool SmallPredSet::contains(std::uint64_t key) const {
  return key < h_ && ((mask_[key >> 6] >> (key & 63)) & 1u);
}

void SmallPredSet::insert(std::uint64_t key, std::uint64_t value) {
  if (key >= h_) throw ParamError("pred set: key outside universe");
  if (contains(key)) throw ContractError("pred set: key already present");
  mask_[key >> 6] |= std::uint64_t{1} << (key & 63);
  vals_[key] = value;
  ++count_;
}

void SmallPredSet::erase(std::uint64_t key) {
  if (!contains(key)) throw ContractError("pred set: deleting an absent key");
  mask_[key >> 6] &= ~(std::uint64_t{1} << (key & 63));
  vals_[key] = 0;
  --count_;
}

SmallPredSet::Entry SmallPredSet::predecessor(std::int64_t q) const {
  if (q < 0) return {-1, 0};
  std::uint64_t k = std::min<std::uint64_t>(static_cast<std::uint64_t>(q), h_ - 1);
  std::int64_t w = static_cast<std::int64_t>(k >> 6);
  unsigned b = k & 63;
  std::uint64_t word = mask_[w] & (b == 63 ? ~std::uint64_t{0} : ((std::uint64_t{2} << b) - 1));
  while (true) {
    if (word != 0) {
      std::uint64_t key = static_cast<std::uint64_t>(w) * 64 + 63 - std::countl_zero(word);
      return {static_cast<std::int64_t>(key), vals_[key]};
    }
    if (--w < 0) return {-1, 0};
    word = mask_[w];
  }
}

SmallPredSet::Entry SmallPredSet::successor(std::int64_t q) const {
  if (q < 0) q = 0;
  if (static_cast<std::uint64_t>(q) >= h_) return {static_cast<std::int64_t>(h_), 0};
  std::uint64_t k = static_cast<std::uint64_t>(q);
  std::uint64_t w = k >> 6;
  std::uint64_t word = mask_[w] & (~std::uint64_t{0} << (k & 63));
  while (true) {
    if (word != 0) {
      std::uint64_t key = w * 64 + std::countr_zero(word);
      return {static_cast<std::int64_t>(key), vals_[key]};
    }
    if (++w >= mask_.size()) return {static_cast<std::int64_t>(h_), 0};
    word = mask_[w];
  }
}

void SmallPredSet::clear() {
  for (std::uint64_t w = 0; w < mask_.size(); ++w) {
    std::uint64_t word = mask_[w];
    while (word) {
      vals_[w * 64 + std::countr_zero(word)] = 0;
      word &= word - 1;
    }
    mask_[w] = 0;
  }
  count_ = 0;
}

void NarrowRangeMax::insert(std::uint64_t x, std::uint64_t y) {
  ++inserted_;
  auto [sx, sy] = set_.successor(static_cast<std::int64_t>(x));
  if (sy >= y) {
    ++pruned_;  // dominated on arrival
    return;
  }
  if (static_cast<std::uint64_t>(sx) == x) {
    set_.erase(x);
    ++pruned_;
  }
  while (true) {
    auto [px, py] = set_.predecessor(static_cast<std::int64_t>(x) - 1);
    if (px < 0 || py > y) break;
    set_.erase(static_cast<std::uint64_t>(px));
    ++pruned_;
  }
  set_.insert(x, y);
}

std::uint64_t NarrowRangeMax::query(std::int64_t q) const { return set_.successor(q).second; }

std::vector<std::pair<std::uint64_t, std::uint64_t>> NarrowRangeMax::staircase() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (auto e = set_.successor(0); static_cast<std::uint64_t>(e.first) < set_.universe(); e = set_.successor(e.first + 1))
    out.emplace_back(static_cast<std::uint64_t>(e.first), e.second);
  return out;
}

}  // namespace slz
