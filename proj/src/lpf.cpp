#include "slz/lpf.hpp"

#include <algorithm>
#include <cmath>

#include "slz/errors.hpp"

namespace slz {

LpfIndex LpfIndex::build(const MinOccIndex& minocc, bool overlap, const LpfParams& params) {
  LpfIndex x;
  x.mo_ = &minocc;
  x.overlap_ = overlap;
  x.n_ = minocc.n();
  const pos_t n = x.n_;
  const double lg = std::log2(static_cast<double>(std::max<pos_t>(n, 2)));
  const pos_t lg3 = static_cast<pos_t>(std::ceil(lg * lg * lg));
  const pos_t lg6 = static_cast<pos_t>(std::ceil(lg * lg * lg * lg * lg * lg));
  x.b_ = std::max<pos_t>(1, std::min(std::max<pos_t>(lg3, 4), n));
  x.b2_ = std::max(lg6, 4 * x.b_);
  if (params.block < 0 || params.threshold < 0) throw ParamError("lpf: negative block parameters");
  if (params.block > 0) x.b_ = std::min(params.block, std::max<pos_t>(n, 1));
  if (params.threshold > 0) x.b2_ = params.threshold;
  if (x.b2_ < x.b_) throw ParamError("lpf: threshold below the block length");
  const pos_t m = n / x.b_;

  x.a_.assign(m + 1, 0);
  for (pos_t i = 1; i <= m; ++i) {
    const pos_t j = i * x.b_;
    x.a_[i] = x.search(j, std::max<pos_t>(0, x.a_[i - 1] - x.b_), n - j + 1);
  }
  x.marked_ = Bitvector(static_cast<std::uint64_t>(m));
  for (pos_t i = 1; i <= m; ++i) {
    if (x.a_[i] - x.a_[i - 1] < x.b2_ - x.b_) continue;
    x.marked_.set(static_cast<std::uint64_t>(i), true);
    const pos_t lo = std::max<pos_t>(0, x.a_[i - 1] - x.b_);
    for (pos_t j = (i - 1) * x.b_ + 1; j <= i * x.b_; ++j)
      x.heavy_.push_back(x.search(j, lo, std::min(n - j + 1, x.a_[i] + x.b_)));
  }
  x.marked_.build_directories();
  return x;
}

bool LpfIndex::feasible(pos_t j, pos_t len) const {
  if (len == 0) return true;
  const pos_t occ = mo_->minocc_window(j, len);
  return overlap_ ? occ < j : occ + len <= j;
}

// Largest feasible length in [lo..hi]; lo must be feasible.
pos_t LpfIndex::search(pos_t j, pos_t lo, pos_t hi) const {
  while (lo < hi) {
    pos_t mid = lo + (hi - lo + 1) / 2;
    if (feasible(j, mid)) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

std::pair<pos_t, pos_t> LpfIndex::bounds(pos_t j) const {
  const pos_t m = boundaries();
  const pos_t i = (j + b_ - 1) / b_;
  if (i > m) return {std::max<pos_t>(0, a_[m] - b_), n_ - j + 1};
  const pos_t lo = std::max<pos_t>(0, a_[i - 1] - b_);
  return {lo, std::min({n_ - j + 1, lo + b2_ + b_, a_[i] + b_})};
}

LpfEntry LpfIndex::entry(pos_t j, pos_t len) const {
  if (len == 0) return {0, static_cast<pos_t>(mo_->text()[j])};
  return {len, mo_->minocc_window(j, len)};
}

LpfEntry LpfIndex::lpf_at(pos_t j) const {
  if (!mo_) throw ContractError("lpf index: not built");
  if (j < 1 || j > n_) throw ParamError("lpf_at: position outside [1..n]");
  const pos_t i = (j + b_ - 1) / b_;
  if (i <= boundaries()) {
    if (j == i * b_) return entry(j, a_[i]);
    if (marked_.get(static_cast<std::uint64_t>(i))) {
      const std::uint64_t r = marked_.rank1(static_cast<std::uint64_t>(i - 1));
      return entry(j, heavy_[r * static_cast<std::uint64_t>(b_) + static_cast<std::uint64_t>(j - (i - 1) * b_ - 1)]);
    }
  }
  auto [lo, hi] = bounds(j);
  return entry(j, search(j, lo, hi));
}

std::vector<LpfEntry> LpfIndex::all() const {
  std::vector<LpfEntry> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (pos_t j = 1; j <= n_; ++j) out.push_back(lpf_at(j));
  return out;
}

std::size_t LpfIndex::memory_bytes() const { return (a_.size() + heavy_.size()) * 8 + marked_.memory_bytes(); }

}  // namespace slz
