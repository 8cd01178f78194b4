#include "slz/range_count.hpp"

#include <algorithm>

#include "slz/errors.hpp"

namespace slz {

bool padded_fits(pos_t m, std::uint64_t sigma) {
  unsigned __int128 v = 1;
  for (pos_t k = 0; k < 2 * m; ++k) {
    v *= sigma;
    if (v > (static_cast<unsigned __int128>(1) << 64)) return false;
  }
  return true;
}

std::uint64_t encode_padded(std::span<const sym_t> x, pos_t m, std::uint64_t sigma) {
  const pos_t len = static_cast<pos_t>(x.size());
  if (len > m) throw ParamError("encode_padded: string longer than m");
  if (!padded_fits(m, sigma)) throw ParamError("encode_padded: code does not fit in 64 bits");
  std::uint64_t v = 0;
  for (sym_t c : x) v = v * sigma + c;
  for (pos_t k = 0; k < 2 * m - 2 * len; ++k) v *= sigma;
  for (pos_t k = 0; k < len; ++k) v = v * sigma + (sigma - 1);
  return v;
}

std::uint64_t encode_padded(const PackedText& t, pos_t j, pos_t len, pos_t m) {
  const std::uint64_t sigma = t.sigma();
  std::uint64_t v = 0;
  for (pos_t k = 0; k < len; ++k) v = v * sigma + t[j + k];
  for (pos_t k = 0; k < 2 * m - 2 * len; ++k) v *= sigma;
  for (pos_t k = 0; k < len; ++k) v = v * sigma + (sigma - 1);
  return v;
}

OfflineCountEngine::OfflineCountEngine(std::span<const std::uint64_t> a) : m_(a.size()) {
  std::vector<std::uint32_t> cur(m_);
  for (std::uint64_t j = 0; j < m_; ++j) cur[j] = static_cast<std::uint32_t>(j + 1);
  for (std::uint64_t k = 0; !cur.empty(); ++k) {
    const std::uint64_t base = k * kY;
    const std::uint64_t sz = cur.size();
    Bitvector rows(kY * sz);
    for (std::uint64_t i = 0; i < sz; ++i) {
      std::uint64_t d = a[cur[i] - 1] - base;  // >= 0 by construction
      std::uint64_t top = std::min<std::uint64_t>(d + 1, kY);
      for (std::uint64_t t = 0; t < top; ++t) rows.set(t * sz + i + 1, true);
    }
    rows.build_directories();
    std::vector<std::uint32_t> next;
    for (std::uint32_t j : cur)
      if (a[j - 1] >= base + kY) next.push_back(j);
    pos_.push_back(std::move(cur));
    bits_.push_back(std::move(rows));
    cur = std::move(next);
  }
}

std::uint64_t OfflineCountEngine::total_level_size() const {
  std::uint64_t s = 0;
  for (const auto& p : pos_) s += p.size();
  return s;
}

std::vector<std::uint64_t> OfflineCountEngine::two_sided(std::span<const TwoSidedQuery> q) const {
  const std::size_t nq = q.size();
  std::vector<std::uint64_t> ans(nq, 0);
  // Radix-permute the queries by (level, pos); each level is then swept once.
  std::vector<std::uint32_t> by_pos(nq), order(nq);
  {
    std::vector<std::uint32_t> cnt(m_ + 2, 0);
    for (std::size_t i = 0; i < nq; ++i) {
      if (q[i].pos < 0 || static_cast<std::uint64_t>(q[i].pos) > m_) throw ParamError("count: position out of range");
      ++cnt[q[i].pos + 1];
    }
    for (std::size_t v = 1; v < cnt.size(); ++v) cnt[v] += cnt[v - 1];
    for (std::size_t i = 0; i < nq; ++i) by_pos[cnt[q[i].pos]++] = static_cast<std::uint32_t>(i);
  }
  const std::size_t nl = pos_.size();
  std::vector<std::uint32_t> lvl_start(nl + 2, 0);
  for (std::size_t i = 0; i < nq; ++i) {
    std::uint64_t k = q[i].val / kY;
    if (k < nl) ++lvl_start[k + 1];
  }
  for (std::size_t k = 1; k < lvl_start.size(); ++k) lvl_start[k] += lvl_start[k - 1];
  std::vector<std::uint32_t> fill(lvl_start.begin(), lvl_start.end());
  for (std::uint32_t i : by_pos) {
    std::uint64_t k = q[i].val / kY;
    if (k < nl) order[fill[k]++] = i;
  }
  for (std::size_t k = 0; k < nl; ++k) {
    const auto& pk = pos_[k];
    const std::uint64_t sz = pk.size();
    std::uint64_t r = 0;
    for (std::uint32_t idx = lvl_start[k]; idx < lvl_start[k + 1]; ++idx) {
      const auto& qq = q[order[idx]];
      while (r < sz && pk[r] <= static_cast<std::uint64_t>(qq.pos)) ++r;
      std::uint64_t t = qq.val - k * kY;
      ans[order[idx]] = bits_[k].rank1(t * sz + r) - bits_[k].rank1(t * sz);
    }
  }
  return ans;
}

std::vector<std::uint64_t> OfflineCountEngine::three_sided(std::span<const ThreeSidedQuery> q) const {
  std::vector<TwoSidedQuery> two(2 * q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    pos_t b = q[i].beg, e = q[i].end;
    if (b > e) b = e;
    two[2 * i] = {e, q[i].val};
    two[2 * i + 1] = {b, q[i].val};
  }
  auto c = two_sided(two);
  std::vector<std::uint64_t> ans(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) ans[i] = c[2 * i] - c[2 * i + 1];
  return ans;
}

std::vector<pos_t> OfflineCountEngine::reconstruct(std::uint64_t v) const {
  std::vector<pos_t> out;
  std::uint64_t k = v / kY;
  if (k >= pos_.size()) return out;
  const auto& pk = pos_[k];
  const std::uint64_t sz = pk.size();
  std::uint64_t t = v - k * kY;
  for (std::uint64_t i = 0; i < sz; ++i)
    if (bits_[k].get(t * sz + i + 1)) out.push_back(pk[i]);
  return out;
}

std::vector<std::uint64_t> count_two_sided(std::span<const std::uint64_t> a, std::span<const TwoSidedQuery> q) {
  return OfflineCountEngine(a).two_sided(q);
}

std::vector<std::uint64_t> count_three_sided(std::span<const std::uint64_t> a, std::span<const ThreeSidedQuery> q) {
  return OfflineCountEngine(a).three_sided(q);
}

}  // namespace slz
