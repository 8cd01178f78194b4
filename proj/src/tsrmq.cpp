#include "slz/tsrmq.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "slz/errors.hpp"

namespace slz {

namespace {
constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
}

ThreeSidedRmqIndex::ThreeSidedRmqIndex(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size()) throw InputError("tsrmq: A and B differ in length");
  const std::uint64_t m = a_.size();
  const unsigned logm = m > 1 ? std::bit_width(m) - 1 : 0;
  {
    unsigned __int128 bound = static_cast<unsigned __int128>(m) * std::max(1u, logm);
    unsigned __int128 sum = 0;
    std::uint64_t amax = 0;
    for (std::uint64_t i = 0; i < m; ++i) {
      sum += b_[i];
      amax = std::max(amax, a_[i]);
    }
    promise_ = sum <= bound && amax <= bound;
  }
  y_ = std::max(4u, logm);
  if (y_ < 5 || y_ > 64) return;  // flat scan
  x_ = std::max(4u, static_cast<unsigned>(std::floor(y_ / std::log2(static_cast<double>(y_)))));
  rank_bits_ = std::bit_width(x_ - 1);
  b_bits_ = std::bit_width(y_ - 1);
  if (x_ * (rank_bits_ + b_bits_) > 128) return;
  flat_ = false;

  std::uint64_t bmax = 0;
  for (auto v : b_) bmax = std::max(bmax, v);
  const std::uint64_t kmax = bmax / y_;
  std::vector<std::uint32_t> cur(m);
  std::iota(cur.begin(), cur.end(), 1u);
  const unsigned field = rank_bits_ + b_bits_;
  std::vector<unsigned> order(x_);
  for (std::uint64_t k = 0; k <= kmax; ++k) {
    Level lv;
    lv.pos = std::move(cur);
    const std::uint64_t mk = lv.pos.size();
    const std::uint64_t floor_v = k * y_;
    auto capped = [&](std::uint64_t idx) {  // 1-based level index
      return std::min<std::uint64_t>(b_[lv.pos[idx - 1] - 1] - floor_v, y_ - 1);
    };
    auto aval = [&](std::uint64_t idx) { return a_[lv.pos[idx - 1] - 1]; };

    const std::uint64_t nmicro = (mk + x_ - 1) / x_;
    lv.micro.assign(nmicro, 0);
    for (std::uint64_t blk = 0; blk < nmicro; ++blk) {
      const std::uint64_t base = blk * x_;
      const unsigned len = static_cast<unsigned>(std::min<std::uint64_t>(x_, mk - base));
      std::iota(order.begin(), order.begin() + len, 0u);
      std::stable_sort(order.begin(), order.begin() + len,
                       [&](unsigned p, unsigned q) { return aval(base + p + 1) < aval(base + q + 1); });
      unsigned __int128 code = 0;
      for (unsigned r = 0; r < len; ++r) {
        unsigned t = order[r];
        unsigned __int128 entry = (static_cast<unsigned __int128>(capped(base + t + 1)) << rank_bits_) | r;
        code |= entry << (t * field);
      }
      lv.micro[blk] = code;
    }

    const std::uint64_t nsuper = mk / y_;
    if (nsuper > 0) {
      lv.super_pos.assign(y_, std::vector<std::uint32_t>(nsuper, 0));
      std::vector<std::vector<std::uint64_t>> vals(y_, std::vector<std::uint64_t>(nsuper, kInf));
      for (std::uint64_t p = 0; p < nsuper; ++p) {
        for (std::uint64_t idx = p * y_ + 1; idx <= (p + 1) * y_; ++idx) {
          const std::uint64_t c = capped(idx), av = aval(idx);
          for (std::uint64_t d = 0; d <= c; ++d) {
            if (av < vals[d][p]) {
              vals[d][p] = av;
              lv.super_pos[d][p] = static_cast<std::uint32_t>(idx);
            }
          }
        }
      }
      lv.super_val.reserve(y_);
      for (unsigned d = 0; d < y_; ++d) lv.super_val.emplace_back(std::move(vals[d]));
    }

    std::vector<std::uint32_t> next;
    for (std::uint32_t j : lv.pos)
      if (b_[j - 1] >= floor_v + y_) next.push_back(j);
    cur = std::move(next);
    levels_.push_back(std::move(lv));
  }
}

ThreeSidedRmqIndex::Cand ThreeSidedRmqIndex::pick(const Level& lv, Cand c1, Cand c2) const {
  if (!c1) return c2;
  if (!c2) return c1;
  std::uint64_t v1 = a_[lv.pos[*c1 - 1] - 1], v2 = a_[lv.pos[*c2 - 1] - 1];
  if (v2 < v1 || (v2 == v1 && *c2 < *c1)) return c2;
  return c1;
}

ThreeSidedRmqIndex::Cand ThreeSidedRmqIndex::micro_query(const Level& lv, std::uint64_t lo, std::uint64_t hi,
                                                         unsigned d) const {
  const std::uint64_t blk = lo / x_;
  const std::uint64_t base = blk * x_;
  const unsigned field = rank_bits_ + b_bits_;
  const unsigned __int128 code = lv.micro[blk];
  const std::uint64_t fmask = (std::uint64_t{1} << field) - 1, rmask = (std::uint64_t{1} << rank_bits_) - 1;
  unsigned best_rank = x_;
  std::uint64_t best = 0;
  for (std::uint64_t idx = lo + 1; idx <= hi; ++idx) {
    unsigned t = static_cast<unsigned>(idx - 1 - base);
    std::uint64_t entry = static_cast<std::uint64_t>(code >> (t * field)) & fmask;
    if ((entry >> rank_bits_) < d) continue;
    unsigned r = static_cast<unsigned>(entry & rmask);
    if (r < best_rank) {
      best_rank = r;
      best = idx;
    }
  }
  if (best == 0) return std::nullopt;
  return best;
}

ThreeSidedRmqIndex::Cand ThreeSidedRmqIndex::partial(const Level& lv, std::uint64_t lo, std::uint64_t hi,
                                                     unsigned d) const {
  Cand best;
  while (lo < hi) {
    std::uint64_t stop = std::min(hi, (lo / x_ + 1) * x_);
    best = pick(lv, best, micro_query(lv, lo, stop, d));
    lo = stop;
  }
  return best;
}

std::optional<pos_t> ThreeSidedRmqIndex::query(pos_t b, pos_t e, std::uint64_t v) const {
  if (b < 0 || e > static_cast<pos_t>(a_.size()) || b > e) throw ParamError("tsrmq: invalid range");
  if (flat_) {
    std::optional<pos_t> best;
    for (pos_t i = b + 1; i <= e; ++i)
      if (b_[i - 1] >= v && (!best || a_[i - 1] < a_[*best - 1])) best = i;
    return best;
  }
  if (b == e) return std::nullopt;
  const std::uint64_t k = v / y_;
  if (k >= levels_.size()) return std::nullopt;
  const unsigned d = static_cast<unsigned>(v - k * y_);
  const Level& lv = levels_[k];
  const auto& p = lv.pos;
  const std::uint64_t bi = std::upper_bound(p.begin(), p.end(), static_cast<std::uint64_t>(b)) - p.begin();
  const std::uint64_t ei = std::upper_bound(p.begin(), p.end(), static_cast<std::uint64_t>(e)) - p.begin();
  if (bi >= ei) return std::nullopt;
  const std::uint64_t i = (bi + y_ - 1) / y_, j = ei / y_;
  Cand best;
  if (i < j) {
    best = partial(lv, bi, i * y_, d);
    pos_t s = lv.super_val[d].query(static_cast<pos_t>(i), static_cast<pos_t>(j));
    if (lv.super_val[d].value(s) != kInf) best = pick(lv, best, lv.super_pos[d][s - 1]);
    best = pick(lv, best, partial(lv, j * y_, ei, d));
  } else {
    best = partial(lv, bi, ei, d);
  }
  if (!best) return std::nullopt;
  return static_cast<pos_t>(p[*best - 1]);
}

std::uint64_t ThreeSidedRmqIndex::total_level_size() const {
  std::uint64_t s = 0;
  for (const auto& lv : levels_) s += lv.pos.size();
  return s;
}

std::size_t ThreeSidedRmqIndex::memory_bytes() const {
  std::size_t s = (a_.size() + b_.size()) * 8;
  for (const auto& lv : levels_) {
    s += lv.pos.size() * 4 + lv.micro.size() * 16;
    for (const auto& r : lv.super_val) s += r.memory_bytes();
    for (const auto& q : lv.super_pos) s += q.size() * 4;
  }
  return s;
}

}  // namespace slz
