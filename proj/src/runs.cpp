#include "slz/runs.hpp"

#include <algorithm>

#include "slz/bitpack.hpp"
#include "slz/errors.hpp"
#include "slz/sync_set.hpp"

namespace slz {

pos_t min_rotation(std::span<const sym_t> h) {
  const pos_t p = static_cast<pos_t>(h.size());
  pos_t best = 0;
  for (pos_t t = 1; t < p; ++t) {
    for (pos_t k = 0; k < p; ++k) {
      sym_t x = h[(t + k) % p], y = h[(best + k) % p];
      if (x != y) {
        if (x < y) best = t;
        break;
      }
    }
  }
  return best;
}

void RunsTable::complete(Run& r) const {
  const PackedText& t = *text_;
  std::vector<sym_t> period = t.extract(r.a, r.p);
  r.s = min_rotation(period);
  r.efull = r.a + r.s + (r.e - r.a - r.s) / r.p * r.p;
  r.type = t[r.e] > t[r.e - r.p] ? 1 : -1;
}

void RunsTable::index_roots() {
  root_of_.clear();
  for (auto& r : runs_) root_of_.emplace(text_->extract(r.a + r.s, r.p), 0);
  roots_.clear();
  std::uint32_t id = 0;
  for (auto& [h, v] : root_of_) {
    v = id++;
    roots_.push_back({0, static_cast<pos_t>(h.size())});
  }
  for (auto& r : runs_) {
    r.root = root_of_.at(text_->extract(r.a + r.s, r.p));
    if (roots_[r.root].pos == 0) roots_[r.root].pos = r.a + r.s;
  }
}

RunsTable RunsTable::build(const PackedText& t, const SuffixScaffold& sc, pos_t tau) {
  RunsTable rt;
  rt.text_ = &t;
  rt.tau_ = tau;
  const pos_t n = t.n_total();
  if (tau >= 3 && 3 * tau - 1 <= n) {
    for (pos_t j = 1; j <= n - 3 * tau + 2; ++j) {
      pos_t p = period_at_most(t, j, 3 * tau - 1, tau / 3);
      if (p == 0) continue;
      Run r;
      r.a = j;
      r.p = p;
      r.e = j + p + lce(t, j, j + p);
      if (r.e - 3 * tau + 1 < j || r.e > n) throw ConstructionError("runs: run end before its block start");
      rt.complete(r);
      rt.runs_.push_back(r);
      j = r.e - 3 * tau + 1;
    }
  }
  rt.index_roots();
  for (std::uint32_t i = 0; i < rt.runs_.size(); ++i)
    (rt.runs_[i].type < 0 ? rt.lex_minus_ : rt.lex_plus_).push_back(i);
  auto by_key = [&](std::uint32_t x, std::uint32_t y) {
    const Run &u = rt.runs_[x], &v = rt.runs_[y];
    if (u.root != v.root) return u.root < v.root;
    return sc.isa[u.efull] < sc.isa[v.efull];
  };
  std::sort(rt.lex_minus_.begin(), rt.lex_minus_.end(), by_key);
  std::sort(rt.lex_plus_.begin(), rt.lex_plus_.end(), by_key);
  rt.fill_starts();
  return rt;
}

void RunsTable::fill_starts() {
  auto fill = [&](const std::vector<std::uint32_t>& lex, std::vector<std::size_t>& st) {
    st.assign(roots_.size() + 1, 0);
    for (auto i : lex) ++st[runs_[i].root + 1];
    for (std::size_t k = 1; k < st.size(); ++k) st[k] += st[k - 1];
  };
  fill(lex_minus_, start_minus_);
  fill(lex_plus_, start_plus_);
}

std::pair<std::size_t, std::size_t> RunsTable::root_range(int type, std::uint32_t root) const {
  const auto& st = type < 0 ? start_minus_ : start_plus_;
  return {st[root], st[root + 1]};
}

std::int64_t RunsTable::find(pos_t j) const {
  auto it = std::upper_bound(runs_.begin(), runs_.end(), j, [](pos_t v, const Run& r) { return v < r.a; });
  if (it == runs_.begin()) return -1;
  --it;
  if (j > it->last(tau_)) return -1;
  return it - runs_.begin();
}

std::int64_t RunsTable::root_id(std::span<const sym_t> h) const {
  auto it = root_of_.find(std::vector<sym_t>(h.begin(), h.end()));
  return it == root_of_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::vector<sym_t> RunsTable::root_string(std::uint32_t id) const {
  return text_->extract(roots_[id].pos, roots_[id].p);
}

std::uint64_t RunsTable::total_extent() const {
  std::uint64_t s = 0;
  for (auto& r : runs_) s += static_cast<std::uint64_t>(r.e - r.a);
  return s;
}

std::size_t RunsTable::memory_bytes() const {
  return runs_.size() * sizeof(Run) + roots_.size() * sizeof(Root) + (lex_minus_.size() + lex_plus_.size()) * 4 +
         (start_minus_.size() + start_plus_.size()) * 8 + root_of_.size() * 64;
}

void RunsTable::save(std::string& out) const {
  put_u64(out, static_cast<std::uint64_t>(tau_));
  std::vector<std::int64_t> a, e, p;
  for (auto& r : runs_) {
    a.push_back(r.a);
    e.push_back(r.e);
    p.push_back(r.p);
  }
  put_i64s(out, a);
  put_i64s(out, e);
  put_i64s(out, p);
  std::vector<std::uint64_t> lm(lex_minus_.begin(), lex_minus_.end()), lp(lex_plus_.begin(), lex_plus_.end());
  put_u64s(out, lm);
  put_u64s(out, lp);
}

RunsTable RunsTable::load(std::string_view& in, const PackedText& t) {
  RunsTable rt;
  rt.text_ = &t;
  rt.tau_ = static_cast<pos_t>(get_u64(in));
  auto a = get_i64s(in), e = get_i64s(in), p = get_i64s(in);
  if (a.size() != e.size() || a.size() != p.size()) throw FormatError("runs: column lengths differ");
  for (std::size_t i = 0; i < a.size(); ++i) {
    Run r;
    r.a = a[i];
    r.e = e[i];
    r.p = p[i];
    if (r.p < 1 || r.a < 1 || r.e > t.n_total() || r.a + r.p > r.e) throw FormatError("runs: bad run record");
    rt.complete(r);
    rt.runs_.push_back(r);
  }
  rt.index_roots();
  for (auto v : get_u64s(in)) rt.lex_minus_.push_back(static_cast<std::uint32_t>(v));
  for (auto v : get_u64s(in)) rt.lex_plus_.push_back(static_cast<std::uint32_t>(v));
  for (auto v : rt.lex_minus_)
    if (v >= rt.runs_.size()) throw FormatError("runs: lex entry out of range");
  for (auto v : rt.lex_plus_)
    if (v >= rt.runs_.size()) throw FormatError("runs: lex entry out of range");
  rt.fill_starts();
  return rt;
}

}  // namespace slz
