#include "slz/sync_set.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "slz/errors.hpp"

namespace slz {

pos_t period_at_most(const PackedText& t, pos_t i, pos_t len, pos_t pmax) {
  for (pos_t p = 1; p <= pmax && p < len; ++p)
    if (lce2(t, i, t, i + p, len - p) >= len - p) return p;
  return pmax >= len ? len : 0;
}

bool in_R(const PackedText& t, pos_t tau, pos_t j) {
  const pos_t n = t.n_total();
  if (tau < 1) throw ParamError("in_R: tau < 1");
  if (j < 1 || j > n - 3 * tau + 2) throw ParamError("in_R: position outside [1..n-3tau+2]");
  return period_at_most(t, j, 3 * tau - 1, tau / 3) != 0;
}

SyncSet SyncSet::build(const PackedText& t, const SuffixScaffold& sc, pos_t tau) {
  const pos_t n = t.n_total();
  if (!t.has_sentinel()) throw ParamError("sync set: text needs a sentinel");
  if (tau < 1 || 3 * tau - 1 > n) throw ParamError("sync set: tau outside [1, (n+1)/3]");
  constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  const pos_t last_window = n - tau + 1;
  std::vector<std::uint64_t> id(last_window + 1, kInf);
  if (static_cast<std::uint64_t>(tau) * t.bits_per_symbol() <= 63) {
    for (pos_t k = 1; k <= last_window; ++k) id[k] = t.msb_window(k, static_cast<unsigned>(tau));
  } else {
    std::uint64_t rank = 0;
    for (pos_t r = 1; r <= n; ++r) {
      pos_t k = sc.sa[r];
      if (r > 1 && sc.lce(sc.sa[r - 1], k) < tau) ++rank;
      if (k <= last_window) id[k] = rank;
    }
  }
  for (pos_t k = 1; k <= last_window; ++k)
    if (tau >= 3 && period_at_most(t, k, tau, tau / 3) != 0) id[k] = kInf;

  std::vector<pos_t> s;
  std::deque<pos_t> dq;  // window minima over [j..j+tau]
  const pos_t last = n - 2 * tau + 1;
  pos_t pushed = 0;
  for (pos_t j = 1; j <= last; ++j) {
    while (pushed < j + tau) {
      ++pushed;
      while (!dq.empty() && id[dq.back()] >= id[pushed]) dq.pop_back();
      dq.push_back(pushed);
    }
    while (dq.front() < j) dq.pop_front();
    std::uint64_t mn = id[dq.front()];
    if (mn != kInf && (id[j] == mn || id[j + tau] == mn)) s.push_back(j);
  }
  SyncSet out = from_positions(t, sc, tau, std::move(s));
  out.verify(t, sc);
  return out;
}

SyncSet SyncSet::from_positions(const PackedText& t, const SuffixScaffold& sc, pos_t tau, std::vector<pos_t> s) {
  SyncSet out;
  out.tau_ = tau;
  out.n_ = t.n_total();
  out.pos_ = std::move(s);
  out.member_ = Bitvector(static_cast<std::uint64_t>(out.n_));
  for (pos_t j : out.pos_) {
    if (j < 1 || j > out.n_) throw FormatError("sync set: position out of range");
    out.member_.set(static_cast<std::uint64_t>(j), true);
  }
  out.member_.build_directories();
  out.lex_ = out.pos_;
  std::sort(out.lex_.begin(), out.lex_.end(), [&](pos_t a, pos_t b) { return sc.isa[a] < sc.isa[b]; });
  return out;
}

SyncSet SyncSet::from_parts(pos_t n, pos_t tau, std::vector<pos_t> s, std::vector<pos_t> lex) {
  if (s.size() != lex.size()) throw FormatError("sync set: position and order lists differ in size");
  SyncSet out;
  out.tau_ = tau;
  out.n_ = n;
  out.pos_ = std::move(s);
  out.lex_ = std::move(lex);
  out.member_ = Bitvector(static_cast<std::uint64_t>(n));
  for (pos_t j : out.pos_) {
    if (j < 1 || j > n) throw FormatError("sync set: position out of range");
    out.member_.set(static_cast<std::uint64_t>(j), true);
  }
  out.member_.build_directories();
  return out;
}

pos_t SyncSet::next(pos_t j) const {
  if (j < 1) j = 1;
  if (j > n_) return 0;
  std::uint64_t r = member_.rank1(static_cast<std::uint64_t>(j - 1));
  if (r >= member_.ones()) return 0;
  return static_cast<pos_t>(member_.select1(r + 1));
}

pos_t SyncSet::successor(pos_t j) const {
  pos_t s = next(j);
  if (s == 0 || s - j >= tau_) throw ContractError("sync set: successor outside [j..j+tau)");
  return s;
}

void SyncSet::verify(const PackedText& t, const SuffixScaffold& sc) const {
  const pos_t n = n_, tau = tau_;
  auto fail = [](const std::string& what) { throw ConstructionError("sync set violates " + what); };
  if (pos_.empty()) fail("nonemptiness");
  for (std::size_t i = 0; i < pos_.size(); ++i) {
    if (pos_[i] < 1 || pos_[i] > n - 2 * tau + 1) fail("domain");
    if (i > 0 && pos_[i] <= pos_[i - 1]) fail("ordering");
  }
  if (pos_.back() < n - 3 * tau + 2) fail("end condition");
  for (pos_t j = 1; j <= n - 3 * tau + 2; ++j) {
    pos_t s = next(j);
    if (s != 0 && s < j + tau) continue;
    if (!in_R(t, tau, j)) fail("density at " + std::to_string(j));
  }
  const pos_t last = n - 2 * tau + 1;
  pos_t group_first = 0;
  for (pos_t r = 1; r <= n; ++r) {
    pos_t k = sc.sa[r];
    if (r == 1 || sc.lce(sc.sa[r - 1], k) < 2 * tau) group_first = 0;
    if (k > last) continue;
    if (group_first == 0) group_first = k;
    else if (contains(group_first) != contains(k)) fail("consistency at " + std::to_string(k));
  }
}

std::size_t SyncSet::memory_bytes() const {
  return pos_.size() * 8 + lex_.size() * 8 + member_.memory_bytes();
}

}  // namespace slz
