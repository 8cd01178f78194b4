#include "slz/minocc_nonperiodic.hpp"

#include <algorithm>

#include "slz/bitpack.hpp"
#include "slz/errors.hpp"
#include "slz/range_count.hpp"

namespace slz {

NonperiodicIndex NonperiodicIndex::build(const PackedText& t, const SuffixScaffold& sc, pos_t tau,
                                         PrefixRmqKind kind) {
  const pos_t n = t.n_total();
  if (!padded_fits(3 * tau - 1, t.sigma())) throw ConfigError("nonperiodic index: 3tau-1 symbols do not fit a key");
  NonperiodicIndex x;
  x.text_ = &t;
  x.tau_ = tau;
  x.sync_ = SyncSet::build(t, sc, tau);
  for (pos_t j = 1; j <= n - 3 * tau + 2; ++j) {
    if (in_R(t, tau, j)) continue;
    pos_t s = x.sync_.successor(j);
    x.dist_.insert(encode_padded(t, j, s - j + 2 * tau, 3 * tau - 1));
  }
  x.finish(kind);
  return x;
}

void NonperiodicIndex::finish(PrefixRmqKind kind) {
  const pos_t tau = tau_;
  const auto& lex = sync_.lex_sorted();
  a_s_.assign(lex.begin(), lex.end());
  a_str_.resize(a_s_.size() * 3 * tau);
  for (std::size_t i = 0; i < a_s_.size(); ++i) {
    const pos_t s = static_cast<pos_t>(a_s_[i]);
    sym_t* out = a_str_.data() + i * 3 * tau;
    for (pos_t k = 0; k < 3 * tau; ++k) out[k] = text_->cyclic(s + 2 * tau - 1 - k);
  }
  prmq_ = PrefixRmqIndex(a_s_, a_str_, static_cast<unsigned>(3 * tau), text_->sigma(), kind);
}

std::vector<sym_t> NonperiodicIndex::context(std::size_t i) const {
  const std::size_t w = 3 * tau_;
  return {a_str_.begin() + (i - 1) * w, a_str_.begin() + i * w};
}

std::uint64_t NonperiodicIndex::key(std::span<const sym_t> d) const {
  return encode_padded(d, 3 * tau_ - 1, text_->sigma());
}

pos_t NonperiodicIndex::dist_offset(pos_t j) const {
  const pos_t n = text_->n_total();
  if (j < 1 || j > n - 3 * tau_ + 2) throw ContractError("distinguishing prefix: position outside [1..n-3tau+2]");
  return sync_.successor(j) - j;
}

std::vector<sym_t> NonperiodicIndex::dist_prefix(pos_t j) const {
  return text_->extract(j, dist_offset(j) + 2 * tau_);
}

pos_t NonperiodicIndex::dist_offset_of(std::span<const sym_t> p) const {
  const pos_t m = static_cast<pos_t>(p.size());
  for (pos_t len = 2 * tau_; len <= 3 * tau_ - 1 && len <= m; ++len)
    if (dist_.count(key(p.first(len)))) return len - 2 * tau_;
  return -1;
}

template <class Cmp>
std::pair<pos_t, pos_t> NonperiodicIndex::range_by(Cmp cmp) const {
  // cmp(s) < 0: suffix below P'; 0: P' prefixes it; > 0: above.
  auto lo = std::partition_point(a_s_.begin(), a_s_.end(), [&](std::uint64_t s) { return cmp(s) < 0; });
  auto hi = std::partition_point(lo, a_s_.end(), [&](std::uint64_t s) { return cmp(s) == 0; });
  return {lo - a_s_.begin(), hi - a_s_.begin()};
}

std::pair<pos_t, pos_t> NonperiodicIndex::suffix_range(pos_t j, pos_t len) const {
  return range_by([&](std::uint64_t s) { return compare_suffix(*text_, static_cast<pos_t>(s), *text_, j, len); });
}

std::pair<pos_t, pos_t> NonperiodicIndex::suffix_range(const PackedText& p, pos_t from) const {
  const pos_t len = p.n() - from + 1;
  return range_by([&](std::uint64_t s) { return compare_suffix(*text_, static_cast<pos_t>(s), p, from, len); });
}

pos_t NonperiodicIndex::minocc_window(pos_t j, pos_t len) const {
  if (len < 3 * tau_ - 1) throw ParamError("nonperiodic query: length below 3tau-1");
  const pos_t delta = dist_offset(j);
  auto [b, e] = suffix_range(j + delta, len - delta);
  std::vector<sym_t> x = text_->extract(j, delta + 2 * tau_);
  std::reverse(x.begin(), x.end());
  auto q = prmq_.query(b, e, x);
  if (!q) throw ContractError("nonperiodic query: no sample carries the distinguishing prefix");
  return static_cast<pos_t>(a_s_[*q - 1]) - delta;
}

pos_t NonperiodicIndex::minocc_pattern(std::span<const sym_t> p) const {
  const pos_t m = static_cast<pos_t>(p.size());
  if (m < 3 * tau_ - 1) throw ParamError("nonperiodic query: length below 3tau-1");
  const pos_t delta = dist_offset_of(p);
  if (delta < 0) throw NotFoundError("pattern does not occur");
  PackedText packed = pack_pattern(p, *text_);
  auto [b, e] = suffix_range(packed, delta + 1);
  std::vector<sym_t> x(p.begin(), p.begin() + delta + 2 * tau_);
  std::reverse(x.begin(), x.end());
  auto q = prmq_.query(b, e, x);
  if (!q) throw NotFoundError("pattern does not occur");
  const pos_t ans = static_cast<pos_t>(a_s_[*q - 1]) - delta;
  if (ans < 1 || compare_suffix(*text_, ans, packed, 1, m) != 0) throw NotFoundError("pattern does not occur");
  return ans;
}

std::size_t NonperiodicIndex::memory_bytes() const {
  return sync_.memory_bytes() + a_s_.size() * 8 + a_str_.size() * sizeof(sym_t) + prmq_.memory_bytes() +
         dist_.size() * 16;
}

void NonperiodicIndex::save(std::string& out) const {
  put_u64(out, static_cast<std::uint64_t>(tau_));
  put_i64s(out, sync_.positions());
  put_i64s(out, sync_.lex_sorted());
  std::vector<std::uint64_t> keys(dist_.begin(), dist_.end());
  std::sort(keys.begin(), keys.end());
  put_u64s(out, keys);
}

NonperiodicIndex NonperiodicIndex::load(std::string_view& in, const PackedText& t, PrefixRmqKind kind) {
  NonperiodicIndex x;
  x.text_ = &t;
  x.tau_ = static_cast<pos_t>(get_u64(in));
  auto pos = get_i64s(in);
  auto lex = get_i64s(in);
  x.sync_ = SyncSet::from_parts(t.n_total(), x.tau_, std::move(pos), std::move(lex));
  auto keys = get_u64s(in);
  x.dist_.insert(keys.begin(), keys.end());
  x.finish(kind);
  return x;
}

}  // namespace slz
