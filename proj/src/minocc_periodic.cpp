#include "slz/minocc_periodic.hpp"

#include <algorithm>

#include "slz/errors.hpp"

namespace slz {

PeriodicIndex PeriodicIndex::build(const PackedText& t, const SuffixScaffold& sc, pos_t tau, bool use_isa) {
  PeriodicIndex x;
  x.text_ = &t;
  x.tau_ = tau;
  x.runs_ = RunsTable::build(t, sc, tau);
  BminParts parts = build_bmin(t, sc, x.runs_, use_isa);
  x.minus_ = std::move(parts.minus);
  x.plus_ = std::move(parts.plus);
  x.minus_sa_ = std::move(parts.minus_sa);
  x.plus_sa_ = std::move(parts.plus_sa);
  x.blocks_ = std::move(parts.blocks);
  x.emin_ = std::move(parts.emin);
  x.sweep_events_ = parts.sweep_events;
  x.finish();
  return x;
}

void PeriodicIndex::finish() {
  for (int side = 0; side < 2; ++side) {
    const int type = side == 0 ? -1 : 1;
    Side& sd = side_[side];
    sd.a_pos.clear();
    sd.a_len.clear();
    for (auto i : runs_.lex(type)) {
      const Run& r = runs_.runs()[i];
      const pos_t ap = r.efull - pow_len(r.p);
      sd.a_pos.push_back(static_cast<std::uint64_t>(ap));
      sd.a_len.push_back(static_cast<std::uint64_t>(ap - r.a));
    }
    sd.ts = ThreeSidedRmqIndex(sd.a_pos, sd.a_len);
  }
}

pos_t PeriodicIndex::run_extent(pos_t j) const {
  std::int64_t i = runs_.find(j);
  if (i < 0) throw ContractError("periodic index: sampled position outside every run");
  return runs_.runs()[i].e - j;
}

pos_t PeriodicIndex::sa_at(int type, std::uint64_t r) const {
  const Bitvector& b = type < 0 ? minus_ : plus_;
  if (full_sa_) return (*full_sa_)[b.select1(r)];
  return (type < 0 ? minus_sa_ : plus_sa_)[r - 1];
}

PeriodicShape PeriodicIndex::shape_of_window(pos_t j, pos_t len) const {
  std::int64_t i = runs_.find(j);
  if (i < 0) throw ContractError("periodic query: position not in R");
  const Run& r = runs_.runs()[i];
  PeriodicShape sh;
  sh.p = r.p;
  sh.s = r.head(j);
  sh.root = r.root;
  sh.run_end = r.e - j + 1;
  sh.full_end = r.efull - j;
  sh.type = r.e >= j + len ? 0 : r.type;
  return sh;
}

PeriodicShape PeriodicIndex::shape_of(std::span<const sym_t> p) const {
  const pos_t m = static_cast<pos_t>(p.size());
  const pos_t w = 3 * tau_ - 1;
  if (m < w) throw ParamError("periodic query: pattern shorter than 3tau-1");
  PeriodicShape sh;
  sh.p = period_of(p.first(w));
  if (sh.p > tau_ / 3) throw ContractError("periodic query: pattern is not tau-periodic");
  sh.s = min_rotation(p.first(sh.p));
  sh.root = runs_.root_id(p.subspan(sh.s, sh.p));
  pos_t l = 0;
  while (sh.p + l < m && p[l] == p[sh.p + l]) ++l;
  sh.run_end = 1 + sh.p + l;
  sh.full_end = sh.s + (sh.run_end - 1 - sh.s) / sh.p * sh.p;
  if (sh.run_end > m) sh.type = 0;
  else sh.type = p[sh.run_end - 1] > p[sh.run_end - 1 - sh.p] ? 1 : -1;
  return sh;
}

std::optional<pos_t> PeriodicIndex::partially(const PeriodicShape& sh, const PackedText& src, pos_t j,
                                              pos_t len) const {
  if (sh.root < 0 || sh.full()) return std::nullopt;
  const int side = sh.type < 0 ? 0 : 1;
  const Side& sd = side_[side];
  const pos_t delta = sh.full_end - pow_len(sh.p);
  auto [lo, hi] = runs_.root_range(sh.type, static_cast<std::uint32_t>(sh.root));
  auto cmp = [&](std::uint64_t ap) {
    return compare_suffix(*text_, static_cast<pos_t>(ap), src, j + delta, len - delta);
  };
  auto first = sd.a_pos.begin() + lo, last = sd.a_pos.begin() + hi;
  auto b = std::partition_point(first, last, [&](std::uint64_t ap) { return cmp(ap) < 0; });
  auto e = std::partition_point(b, last, [&](std::uint64_t ap) { return cmp(ap) == 0; });
  auto q = sd.ts.query(b - sd.a_pos.begin(), e - sd.a_pos.begin(), static_cast<std::uint64_t>(delta));
  if (!q) return std::nullopt;
  return static_cast<pos_t>(sd.a_pos[*q - 1]) - delta;
}

std::optional<pos_t> PeriodicIndex::fully(std::uint32_t root, pos_t s, pos_t len) const {
  auto it = blocks_.find({root, s});
  if (it == blocks_.end()) return std::nullopt;
  const BminBlock& blk = it->second;
  std::optional<pos_t> best;
  {
    // type -1: extents grow along the block; the first 1-bit reaching len wins
    std::uint64_t lo = minus_.rank1(blk.x) + 1, hi = minus_.rank1(blk.y) + 1;
    while (lo < hi) {
      std::uint64_t mid = (lo + hi) / 2;
      if (run_extent(sa_at(-1, mid)) >= len) hi = mid;
      else lo = mid + 1;
    }
    if (lo <= minus_.rank1(blk.y)) best = sa_at(-1, lo);
  }
  {
    // type +1: extents shrink along the block; the last 1-bit reaching len wins
    std::uint64_t lo = plus_.rank1(blk.y), hi = plus_.rank1(blk.z);
    while (lo < hi) {
      std::uint64_t mid = (lo + hi + 1) / 2;
      if (run_extent(sa_at(1, mid)) >= len) lo = mid;
      else hi = mid - 1;
    }
    if (lo > plus_.rank1(blk.y)) {
      pos_t cand = sa_at(1, lo);
      if (!best || cand < *best) best = cand;
    }
  }
  return best;
}

pos_t PeriodicIndex::minocc_window(pos_t j, pos_t len) const {
  PeriodicShape sh = shape_of_window(j, len);
  auto r = sh.full() ? fully(static_cast<std::uint32_t>(sh.root), sh.s, len) : partially(sh, *text_, j, len);
  if (!r) throw ContractError("periodic query: no occurrence found for a text window");
  return *r;
}

pos_t PeriodicIndex::minocc_pattern(std::span<const sym_t> p) const {
  const pos_t m = static_cast<pos_t>(p.size());
  PeriodicShape sh = shape_of(p);
  if (sh.root < 0) throw NotFoundError("pattern does not occur");
  PackedText packed = pack_pattern(p, *text_);
  auto r = sh.full() ? fully(static_cast<std::uint32_t>(sh.root), sh.s, m) : partially(sh, packed, 1, m);
  if (!r || compare_suffix(*text_, *r, packed, 1, m) != 0) throw NotFoundError("pattern does not occur");
  return *r;
}

std::size_t PeriodicIndex::memory_bytes() const {
  std::size_t s = runs_.memory_bytes() + minus_.memory_bytes() + plus_.memory_bytes() +
                  (minus_sa_.size() + plus_sa_.size()) * 8 + blocks_.size() * 64;
  for (const auto& sd : side_) s += sd.ts.memory_bytes();
  return s;
}

void PeriodicIndex::save(std::string& out) const {
  put_u64(out, static_cast<std::uint64_t>(tau_));
  runs_.save(out);
  minus_.save(out);
  plus_.save(out);
  put_i64s(out, minus_sa_);
  put_i64s(out, plus_sa_);
  std::vector<std::int64_t> blk;
  for (auto& [key, b] : blocks_) {
    blk.push_back(key.first);
    blk.push_back(key.second);
    blk.push_back(b.x);
    blk.push_back(b.y);
    blk.push_back(b.z);
  }
  put_i64s(out, blk);
}

PeriodicIndex PeriodicIndex::load(std::string_view& in, const PackedText& t) {
  PeriodicIndex x;
  x.text_ = &t;
  x.tau_ = static_cast<pos_t>(get_u64(in));
  x.runs_ = RunsTable::load(in, t);
  x.minus_ = Bitvector::load(in);
  x.plus_ = Bitvector::load(in);
  x.minus_sa_ = get_i64s(in);
  x.plus_sa_ = get_i64s(in);
  if (x.minus_sa_.size() != x.minus_.ones() || x.plus_sa_.size() != x.plus_.ones())
    throw FormatError("periodic index: sample count differs from the bitvector");
  auto blk = get_i64s(in);
  if (blk.size() % 5 != 0) throw FormatError("periodic index: bad block table");
  for (std::size_t i = 0; i < blk.size(); i += 5)
    x.blocks_[{static_cast<std::uint32_t>(blk[i]), blk[i + 1]}] = {blk[i + 2], blk[i + 3], blk[i + 4]};
  x.finish();
  return x;
}

}  // namespace slz
