#include "slz/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include <omp.h>

namespace slz::oracle {

namespace {

pos_t naive_lcp(const Text& t, pos_t i, pos_t j) {  // 1-based
  pos_t n = static_cast<pos_t>(t.size());
  pos_t l = 0;
  while (i + l <= n && j + l <= n && t[i + l - 1] == t[j + l - 1]) ++l;
  return l;
}

bool matches_at(const Text& t, pos_t i, const Text& p) {
  pos_t n = static_cast<pos_t>(t.size());
  pos_t m = static_cast<pos_t>(p.size());
  if (i + m - 1 > n) return false;
  for (pos_t k = 0; k < m; ++k)
    if (t[i - 1 + k] != p[k]) return false;
  return true;
}

}  // namespace

std::optional<pos_t> minocc(const Text& t, const Text& p) {
  pos_t n = static_cast<pos_t>(t.size());
  for (pos_t i = 1; i + static_cast<pos_t>(p.size()) - 1 <= n; ++i)
    if (matches_at(t, i, p)) return i;
  return std::nullopt;
}

pos_t minocc_window(const Text& t, pos_t j, pos_t len) {
  Text p(t.begin() + (j - 1), t.begin() + (j - 1 + len));
  return *minocc(t, p);
}

std::vector<pos_t> occurrences(const Text& t, const Text& p) {
  std::vector<pos_t> out;
  pos_t n = static_cast<pos_t>(t.size());
  for (pos_t i = 1; i + static_cast<pos_t>(p.size()) - 1 <= n; ++i)
    if (matches_at(t, i, p)) out.push_back(i);
  return out;
}

LpfArrays lpf(const Text& t, bool overlap, bool parallel) {
  const pos_t n = static_cast<pos_t>(t.size());
  LpfArrays r;
  r.len.assign(n, 0);
  r.src.assign(n, 0);
  // Pass 1: best length per position, one diagonal d = j - i at a time.
  std::vector<pos_t> best(n, 0);
#pragma omp parallel if (parallel)
  {
    std::vector<pos_t> local(n, 0);
#pragma omp for schedule(dynamic, 16)
    for (pos_t d = 1; d < n; ++d) {
      pos_t run = 0;
      for (pos_t i = n - d; i >= 1; --i) {
        pos_t j = i + d;
        run = (t[i - 1] == t[j - 1]) ? run + 1 : 0;
        pos_t v = overlap ? run : std::min(run, d);
        if (v > local[j - 1]) local[j - 1] = v;
      }
    }
#pragma omp critical
    for (pos_t j = 0; j < n; ++j) best[j] = std::max(best[j], local[j]);
  }
  // Pass 2: leftmost i with lcp(i, j) >= best[j].
  std::vector<pos_t> src(n, 0);
  for (pos_t j = 1; j <= n; ++j) src[j - 1] = best[j - 1] > 0 ? j : 0;
#pragma omp parallel if (parallel)
  {
    std::vector<pos_t> local(n, 0);
#pragma omp for schedule(dynamic, 16)
    for (pos_t d = 1; d < n; ++d) {
      pos_t run = 0;
      for (pos_t i = n - d; i >= 1; --i) {
        pos_t j = i + d;
        run = (t[i - 1] == t[j - 1]) ? run + 1 : 0;
        if (best[j - 1] > 0 && run >= best[j - 1] && (local[j - 1] == 0 || i < local[j - 1])) local[j - 1] = i;
      }
    }
#pragma omp critical
    for (pos_t j = 0; j < n; ++j)
      if (local[j] != 0 && local[j] < src[j]) src[j] = local[j];
  }
  for (pos_t j = 1; j <= n; ++j) {
    r.len[j - 1] = best[j - 1];
    r.src[j - 1] = best[j - 1] == 0 ? static_cast<pos_t>(t[j - 1]) : src[j - 1];
  }
  return r;
}

std::vector<Phrase> parse(const Text& t, bool overlap) {
  const pos_t n = static_cast<pos_t>(t.size());
  std::vector<Phrase> out;
  pos_t j = 1;
  while (j <= n) {
    pos_t best = 0, where = 0;
    for (pos_t i = 1; i < j; ++i) {
      pos_t l = naive_lcp(t, i, j);
      if (!overlap) l = std::min(l, j - i);
      if (l > best) {
        best = l;
        where = i;
      }
    }
    if (best == 0) {
      out.push_back({0, static_cast<pos_t>(t[j - 1])});
      j += 1;
    } else {
      // leftmost occurrence of the phrase anywhere in the text
      pos_t src = where;
      for (pos_t i = 1; i < where; ++i)
        if (naive_lcp(t, i, j) >= best) {
          src = i;
          break;
        }
      out.push_back({best, src});
      j += best;
    }
  }
  return out;
}

pos_t rmq(const std::vector<std::uint64_t>& a, pos_t b, pos_t e) {
  if (b >= e) throw std::invalid_argument("empty range");
  pos_t best = b + 1;
  for (pos_t i = b + 2; i <= e; ++i)
    if (a[i - 1] < a[best - 1]) best = i;
  return best;
}

std::optional<pos_t> prefix_rmq(const std::vector<std::uint64_t>& a, const std::vector<Text>& s,
                                pos_t b, pos_t e, const Text& x) {
  std::optional<pos_t> best;
  for (pos_t i = b + 1; i <= e; ++i) {
    const Text& si = s[i - 1];
    if (x.size() > si.size() || !std::equal(x.begin(), x.end(), si.begin())) continue;
    if (!best || a[i - 1] < a[*best - 1]) best = i;
  }
  return best;
}

std::optional<pos_t> tsrmq(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& bv,
                           pos_t b, pos_t e, std::uint64_t v) {
  std::optional<pos_t> best;
  for (pos_t i = b + 1; i <= e; ++i) {
    if (bv[i - 1] < v) continue;
    if (!best || a[i - 1] < a[*best - 1]) best = i;
  }
  return best;
}

std::uint64_t count_two_sided(const std::vector<std::uint64_t>& a, pos_t pos, std::uint64_t v) {
  std::uint64_t c = 0;
  for (pos_t j = 1; j <= pos; ++j) c += a[j - 1] >= v;
  return c;
}

std::uint64_t count_three_sided(const std::vector<std::uint64_t>& a, pos_t beg, pos_t end, std::uint64_t v) {
  std::uint64_t c = 0;
  for (pos_t j = beg + 1; j <= end; ++j) c += a[j - 1] >= v;
  return c;
}

unsigned __int128 encode_padded(const Text& x, pos_t m, std::uint64_t sigma) {
  if (static_cast<pos_t>(x.size()) > m) throw std::invalid_argument("string longer than m");
  Text digits = x;
  for (pos_t k = 0; k < 2 * m - 2 * static_cast<pos_t>(x.size()); ++k) digits.push_back(0);
  for (std::size_t k = 0; k < x.size(); ++k) digits.push_back(static_cast<sym_t>(sigma - 1));
  unsigned __int128 v = 0;
  for (sym_t d : digits) v = v * sigma + d;
  return v;
}

std::vector<pos_t> suffix_array(const Text& t) {
  const pos_t n = static_cast<pos_t>(t.size());
  std::vector<pos_t> sa(n);
  std::iota(sa.begin(), sa.end(), 1);
  std::sort(sa.begin(), sa.end(), [&](pos_t a, pos_t b) {
    return std::lexicographical_compare(t.begin() + (a - 1), t.end(), t.begin() + (b - 1), t.end());
  });
  return sa;
}

pos_t smallest_period(const Text& t, pos_t i, pos_t len) {
  for (pos_t p = 1; p < len; ++p) {
    bool ok = true;
    for (pos_t k = 0; k + p < len && ok; ++k) ok = t[i - 1 + k] == t[i - 1 + k + p];
    if (ok) return p;
  }
  return len;
}

bool in_R(const Text& t, pos_t tau, pos_t j) {
  pos_t n = static_cast<pos_t>(t.size());
  if (j < 1 || j > n - 3 * tau + 2) return false;
  return 3 * smallest_period(t, j, 3 * tau - 1) <= tau;
}

pos_t run_end(const Text& t, pos_t tau, pos_t j) {
  pos_t n = static_cast<pos_t>(t.size());
  pos_t jj = j;
  while (jj + 1 <= n && in_R(t, tau, jj + 1)) ++jj;
  return jj + 3 * tau - 1;
}

int run_type(const Text& t, pos_t tau, pos_t j) {
  pos_t p = smallest_period(t, j, 3 * tau - 1);
  pos_t e = run_end(t, tau, j);
  return t[e - 1] < t[e - 1 - p] ? -1 : 1;
}

std::vector<pos_t> rmin(const Text& t, pos_t tau, int sign) {
  const pos_t n = static_cast<pos_t>(t.size());
  std::vector<char> inr(n + 2, 0);
  std::vector<pos_t> end(n + 2, 0);
  std::vector<int> type(n + 2, 0);
  for (pos_t j = n; j >= 1; --j) {
    inr[j] = in_R(t, tau, j);
    if (!inr[j]) continue;
    end[j] = (inr[j + 1] && j + 1 <= n) ? end[j + 1] : j + 3 * tau - 1;
  }
  for (pos_t j = 1; j <= n; ++j)
    if (inr[j]) {
      pos_t p = smallest_period(t, j, 3 * tau - 1);
      type[j] = t[end[j] - 1] < t[end[j] - 1 - p] ? -1 : 1;
    }
  std::vector<pos_t> out;
  for (pos_t j = 1; j <= n; ++j) {
    if (!inr[j] || type[j] != sign) continue;
    pos_t len = end[j] - j;
    bool leftmost = true;
    for (pos_t i = 1; i < j && leftmost; ++i) {
      if (!inr[i] || type[i] != sign) continue;
      if (naive_lcp(t, i, j) >= len) leftmost = false;
    }
    if (leftmost) out.push_back(j);
  }
  return out;
}

std::vector<std::pair<pos_t, pos_t>> emin(const Text& t, pos_t tau, int sign) {
  const pos_t n = static_cast<pos_t>(t.size());
  auto set = rmin(t, tau, sign);
  std::vector<char> is_min(n + 2, 0);
  for (pos_t j : set) is_min[j] = 1;
  std::vector<std::pair<pos_t, pos_t>> out;
  for (pos_t j = 1; j <= n; ++j) {
    if (!in_R(t, tau, j) || (j > 1 && in_R(t, tau, j - 1))) continue;
    if (run_type(t, tau, j) != sign) continue;
    pos_t k = j;
    while (k <= n && is_min[k]) ++k;
    out.emplace_back(j, k);
  }
  return out;
}

SyncReport check_sync_set(const Text& t, pos_t tau, const std::vector<pos_t>& s) {
  SyncReport r;
  const pos_t n = static_cast<pos_t>(t.size());
  std::vector<char> in(n + 2, 0);
  for (pos_t x : s) {
    if (x < 1 || x > n - 2 * tau + 1) {
      r.consistency = false;
      r.detail += "position out of domain " + std::to_string(x) + "; ";
      continue;
    }
    in[x] = 1;
  }
  for (pos_t j = 1; j <= n - 3 * tau + 2; ++j) {
    if (in_R(t, tau, j)) continue;
    bool hit = false;
    for (pos_t k = j; k < j + tau && !hit; ++k) hit = in[k];
    if (!hit) {
      r.density = false;
      r.detail += "density fails at " + std::to_string(j) + "; ";
      break;
    }
  }
  std::map<Text, int> seen;
  for (pos_t i = 1; i <= n - 2 * tau + 1; ++i) {
    Text w(t.begin() + (i - 1), t.begin() + (i - 1 + 2 * tau));
    auto [it, fresh] = seen.emplace(w, in[i]);
    if (!fresh && it->second != in[i]) {
      r.consistency = false;
      r.detail += "consistency fails at " + std::to_string(i) + "; ";
      break;
    }
  }
  r.nonempty = !s.empty();
  if (r.nonempty) r.reaches_end = *std::max_element(s.begin(), s.end()) >= n - 3 * tau + 2;
  else r.reaches_end = false;
  r.size_constant = n > 0 ? static_cast<double>(s.size()) * static_cast<double>(tau) / static_cast<double>(n) : 0;
  r.size_ok = static_cast<pos_t>(s.size()) * tau <= 8 * n;
  return r;
}

// ---------------------------------------------------------------------------

LargeOracle::LargeOracle(const Text& t, bool parallel) : t_(t) {
  const std::size_t n = t_.size();
  sa_.resize(n);
  std::iota(sa_.begin(), sa_.end(), 0u);
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(t_.begin() + a, t_.end(), t_.begin() + b, t_.end());
  };
  if (parallel && omp_get_max_threads() > 1) {
    int parts = omp_get_max_threads();
    std::vector<std::size_t> cut(parts + 1);
    for (int k = 0; k <= parts; ++k) cut[k] = n * k / parts;
#pragma omp parallel for
    for (int k = 0; k < parts; ++k) std::sort(sa_.begin() + cut[k], sa_.begin() + cut[k + 1], less);
    for (int k = 1; k < parts; ++k)
      std::inplace_merge(sa_.begin(), sa_.begin() + cut[k], sa_.begin() + cut[k + 1], less);
  } else {
    std::sort(sa_.begin(), sa_.end(), less);
  }
  sparse_.push_back(sa_);
  for (std::size_t w = 1; 2 * w <= n; w *= 2) {
    const auto& prev = sparse_.back();
    std::vector<std::uint32_t> cur(n - 2 * w + 1);
    for (std::size_t i = 0; i + 2 * w <= n; ++i) cur[i] = std::min(prev[i], prev[i + w]);
    sparse_.push_back(std::move(cur));
  }
}

std::pair<std::size_t, std::size_t> LargeOracle::range(const sym_t* p, std::size_t len) const {
  auto cmp = [&](std::uint32_t s) {  // -1: suffix < P, 0: P prefix of suffix, 1: suffix > P
    std::size_t k = 0;
    while (k < len && s + k < t_.size() && t_[s + k] == p[k]) ++k;
    if (k == len) return 0;
    if (s + k == t_.size()) return -1;
    return t_[s + k] < p[k] ? -1 : 1;
  };
  std::size_t lo = 0, hi = sa_.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (cmp(sa_[mid]) < 0) lo = mid + 1; else hi = mid;
  }
  std::size_t a = lo;
  hi = sa_.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (cmp(sa_[mid]) <= 0) lo = mid + 1; else hi = mid;
  }
  return {a, lo};
}

pos_t LargeOracle::range_min(std::size_t lo, std::size_t hi) const {
  std::size_t len = hi - lo;
  std::size_t k = 0;
  while ((std::size_t{2} << k) <= len) ++k;
  return static_cast<pos_t>(std::min(sparse_[k][lo], sparse_[k][hi - (std::size_t{1} << k)])) + 1;
}

pos_t LargeOracle::minocc(const Text& p) const {
  auto [lo, hi] = range(p.data(), p.size());
  if (lo >= hi) return 0;
  return range_min(lo, hi);
}

pos_t LargeOracle::minocc_window(pos_t j, pos_t len) const {
  auto [lo, hi] = range(t_.data() + (j - 1), static_cast<std::size_t>(len));
  return range_min(lo, hi);
}

std::pair<pos_t, pos_t> LargeOracle::lpf_at(pos_t j, bool overlap) const {
  pos_t n = static_cast<pos_t>(t_.size());
  pos_t lo = 0, hi = n - j + 1;
  auto ok = [&](pos_t l) {
    if (l == 0) return true;
    pos_t m = minocc_window(j, l);
    return overlap ? m < j : m + l <= j;
  };
  while (lo < hi) {
    pos_t mid = (lo + hi + 1) / 2;
    if (ok(mid)) lo = mid; else hi = mid - 1;
  }
  if (lo == 0) return {0, static_cast<pos_t>(t_[j - 1])};
  return {lo, minocc_window(j, lo)};
}

std::vector<pos_t> batch_minocc(const LargeOracle& o, const std::vector<std::pair<pos_t, pos_t>>& q,
                                bool parallel) {
  std::vector<pos_t> out(q.size());
  const std::int64_t m = static_cast<std::int64_t>(q.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < m; ++i) out[i] = o.minocc_window(q[i].first, q[i].second);
  return out;
}

}  // namespace slz::oracle
