#include "slz/bmin.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "slz/dyn_rmq.hpp"
#include "slz/errors.hpp"
#include "slz/range_count.hpp"

namespace slz {

namespace {

pos_t pmod(pos_t v, pos_t p) { return ((v % p) + p) % p; }

struct Member {
  pos_t a, last, efull, len, tail, emin;
};

// Smallest / largest j in [lo..hi] with head s, or 0.
pos_t first_with_head(const Member& r, pos_t lo, pos_t hi, pos_t s, pos_t p) {
  if (lo > hi) return 0;
  pos_t j = lo + pmod(r.efull - s - lo, p);
  return j <= hi ? j : 0;
}
pos_t last_with_head(const Member& r, pos_t lo, pos_t hi, pos_t s, pos_t p) {
  if (lo > hi) return 0;
  pos_t j = hi - pmod(hi - (r.efull - s), p);
  return j >= lo ? j : 0;
}

// Layout of B(s, H) for one root and type: classes R(s, k, H) ordered by k (ascending
// for type -1, descending for +1), each listing its runs in lex order.
class SideLayout {
 public:
  struct Head {
    pos_t s = 0;
    pos_t k_first = 0, k_last = -1;
    std::vector<std::uint64_t> size, off;
    pos_t k_tail = -1;  // the class where the tail decides membership
    std::vector<std::uint32_t> spec_prefix;
    std::uint64_t total = 0;
  };

  SideLayout(std::vector<Member> g, pos_t p, pos_t tau, bool ascending)
      : g_(std::move(g)), p_(p), tau_(tau), asc_(ascending) {
    std::vector<std::uint64_t> lens;
    for (auto& r : g_) lens.push_back(static_cast<std::uint64_t>(r.len));
    engine_ = std::make_unique<OfflineCountEngine>(lens);
    sorted_ = lens;
    std::sort(sorted_.begin(), sorted_.end());
  }

  const std::vector<Member>& runs() const { return g_; }

  bool member(const Member& r, pos_t s, pos_t k) const {
    pos_t v = s + k * p_;
    return v <= r.len && v + r.tail >= 3 * tau_ - 1;
  }

  Head head(pos_t s) const {
    Head h;
    h.s = s;
    if (g_.empty()) return h;
    const pos_t lo_v = 3 * tau_ - p_;
    h.k_first = lo_v - s <= 0 ? 0 : (lo_v - s + p_ - 1) / p_;
    const pos_t maxl = static_cast<pos_t>(sorted_.back());
    h.k_last = maxl < s ? -1 : (maxl - s) / p_;
    if (h.k_last < h.k_first) return h;
    const std::size_t nk = static_cast<std::size_t>(h.k_last - h.k_first + 1);
    h.size.assign(nk, 0);
    for (pos_t k = h.k_first; k <= h.k_last; ++k) {
      pos_t v = s + k * p_;
      std::uint64_t c;
      if (v >= 3 * tau_ - 1) {
        c = sorted_.end() - std::lower_bound(sorted_.begin(), sorted_.end(), static_cast<std::uint64_t>(v));
      } else {
        h.k_tail = k;
        h.spec_prefix.assign(g_.size() + 1, 0);
        for (std::size_t i = 0; i < g_.size(); ++i) h.spec_prefix[i + 1] = h.spec_prefix[i] + (member(g_[i], s, k) ? 1 : 0);
        c = h.spec_prefix.back();
      }
      h.size[k - h.k_first] = c;
      h.total += c;
    }
    h.off.assign(nk, 0);
    std::uint64_t acc = 0;
    for (std::size_t q = 0; q < nk; ++q) {
      std::size_t idx = asc_ ? q : nk - 1 - q;
      h.off[idx] = acc;
      acc += h.size[idx];
    }
    return h;
  }

  // 1-based ranks of run i inside class k, for members (i, k).
  std::vector<std::uint64_t> ranks(const Head& h, const std::vector<std::pair<std::size_t, pos_t>>& q) const {
    std::vector<std::uint64_t> out(q.size(), 0);
    std::vector<TwoSidedQuery> tq;
    std::vector<std::size_t> where;
    for (std::size_t x = 0; x < q.size(); ++x) {
      auto [i, k] = q[x];
      if (k == h.k_tail) {
        out[x] = h.spec_prefix[i + 1];
      } else {
        tq.push_back({static_cast<pos_t>(i + 1), static_cast<std::uint64_t>(h.s + k * p_)});
        where.push_back(x);
      }
    }
    if (!tq.empty()) {
      auto c = engine_->two_sided(tq);
      for (std::size_t y = 0; y < c.size(); ++y) out[where[y]] = c[y];
    }
    return out;
  }

  pos_t class_of(const Member& r, pos_t s, pos_t j) const { return (r.efull - s - j) / p_; }

  // Positions inside B(s, H) of elements (i, j), j of head s.
  std::vector<std::uint64_t> positions(const Head& h, const std::vector<std::pair<std::size_t, pos_t>>& el) const {
    std::vector<std::pair<std::size_t, pos_t>> q;
    for (auto [i, j] : el) {
      pos_t k = class_of(g_[i], h.s, j);
      if (k < h.k_first || k > h.k_last || !member(g_[i], h.s, k))
        throw ConstructionError("bmin: element outside its class layout at position " + std::to_string(j));
      q.push_back({i, k});
    }
    auto r = ranks(h, q);
    for (std::size_t x = 0; x < q.size(); ++x) r[x] += h.off[q[x].second - h.k_first];
    return r;
  }

 private:
  std::vector<Member> g_;
  pos_t p_, tau_;
  bool asc_;
  std::unique_ptr<OfflineCountEngine> engine_;
  std::vector<std::uint64_t> sorted_;
};

void check_increasing(std::vector<std::uint64_t>& v, const char* what) {
  std::sort(v.begin(), v.end());
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] == v[i - 1]) throw ConstructionError(std::string("bmin: colliding ") + what + " events");
}

Bitvector apply_events(const Bitvector& b, std::vector<std::uint64_t> del,
                       std::vector<std::pair<std::uint64_t, bool>> ins) {
  check_increasing(del, "delete");
  std::sort(ins.begin(), ins.end());
  for (std::size_t i = 1; i < ins.size(); ++i)
    if (ins[i].first == ins[i - 1].first) throw ConstructionError("bmin: colliding insert events");
  return insert_pairs(delete_positions(b, del), ins);
}

// B(0, H): classes built one exponent at a time. Going from class k to k + 1 every
// run's element moves p to the left; a run leaves when it passes its start, joins when
// its last block position enters, and flips to 1 when it crosses e_min.
Bitvector sweep_init(const SideLayout& lay, const SideLayout::Head& h, pos_t p, std::uint64_t& events) {
  const auto& g = lay.runs();
  const std::size_t nk = h.size.size();
  std::vector<std::vector<std::size_t>> del(nk + 1);
  std::vector<std::vector<std::pair<std::size_t, bool>>> ins(nk + 1);
  auto bucket = [&](pos_t k) { return static_cast<std::size_t>(k - h.k_first); };
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Member& r = g[i];
    pos_t one_lo = first_with_head(r, r.a, r.emin - 1, 0, p), one_hi = last_with_head(r, r.a, r.emin - 1, 0, p);
    pos_t zero_lo = first_with_head(r, r.emin, r.last, 0, p), zero_hi = last_with_head(r, r.emin, r.last, 0, p);
    if (one_lo) del[bucket(lay.class_of(r, 0, one_lo))].push_back(i);
    if (zero_lo) del[bucket(lay.class_of(r, 0, zero_lo))].push_back(i);
    if (one_hi) ins[bucket(lay.class_of(r, 0, one_hi))].push_back({i, true});
    if (zero_hi) ins[bucket(lay.class_of(r, 0, zero_hi))].push_back({i, false});
  }
  std::vector<std::pair<std::size_t, pos_t>> q;
  for (std::size_t c = 0; c < nk; ++c) {
    for (auto i : del[c]) q.push_back({i, h.k_first + static_cast<pos_t>(c)});
    for (auto [i, bit] : ins[c]) q.push_back({i, h.k_first + static_cast<pos_t>(c)});
  }
  auto rk = lay.ranks(h, q);
  std::size_t cur = 0;
  std::vector<Bitvector> cls(nk);
  Bitvector b;
  std::vector<std::uint64_t> pending_del;
  for (std::size_t c = 0; c < nk; ++c) {
    std::vector<std::uint64_t> d;
    for (std::size_t x = 0; x < del[c].size(); ++x) d.push_back(rk[cur++]);
    std::vector<std::pair<std::uint64_t, bool>> in;
    for (auto [i, bit] : ins[c]) in.push_back({rk[cur++], bit});
    events += pending_del.size() + in.size();
    b = apply_events(b, std::move(pending_del), std::move(in));
    if (b.size() != h.size[c]) throw ConstructionError("bmin: class size mismatch in the exponent sweep");
    cls[c] = b;
    pending_del = std::move(d);
  }
  Bitvector out;
  std::vector<std::size_t> order(nk);
  for (std::size_t c = 0; c < nk; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) { return h.off[u] < h.off[v]; });
  for (auto c : order) out.append(cls[c]);
  return out;
}

// B(s+1, H) from B(s, H): every element moves one to the left. Run starts of head s
// leave, e_min of head s flips (delete, reinsert e_min - 1 as 1), and the last block
// position enters when its head is s + 1.
Bitvector sweep_step(const SideLayout& lay, const SideLayout::Head& from, const SideLayout::Head& to,
                     const Bitvector& b, pos_t p, std::uint64_t& events) {
  const auto& g = lay.runs();
  const pos_t s = from.s;
  std::vector<std::pair<std::size_t, pos_t>> del_el, ins_el;
  std::vector<bool> ins_bit;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Member& r = g[i];
    auto hd = [&](pos_t j) { return pmod(r.efull - j, p); };
    if (hd(r.a) == s) del_el.push_back({i, r.a});
    if (r.emin <= r.last && r.emin != r.a && hd(r.emin) == s) del_el.push_back({i, r.emin});
    if (r.emin > r.a && hd(r.emin - 1) == s + 1) {
      ins_el.push_back({i, r.emin - 1});
      ins_bit.push_back(true);
    }
    if (r.emin <= r.last && hd(r.last) == s + 1) {
      ins_el.push_back({i, r.last});
      ins_bit.push_back(false);
    }
  }
  auto d = lay.positions(from, del_el);
  auto ip = lay.positions(to, ins_el);
  std::vector<std::pair<std::uint64_t, bool>> in;
  for (std::size_t x = 0; x < ip.size(); ++x) in.push_back({ip[x], ins_bit[x]});
  events += d.size() + in.size();
  Bitvector out = apply_events(b, std::move(d), std::move(in));
  if (out.size() != to.total) throw ConstructionError("bmin: block size mismatch in the head sweep");
  return out;
}

}  // namespace

std::vector<pos_t> compute_emin(const RunsTable& runs) {
  const auto& rs = runs.runs();
  const pos_t tau = runs.tau();
  std::vector<pos_t> emin(rs.size(), 0);
  struct State {
    NarrowRangeMax nrm;
    pos_t trim = 0;
  };
  std::map<std::pair<std::uint32_t, int>, State> states;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const Run& r = rs[i];
    auto it = states.find({r.root, r.type});
    if (it == states.end())
      it = states.emplace(std::make_pair(r.root, r.type), State{NarrowRangeMax(static_cast<std::uint64_t>(r.p) + 1), 0})
               .first;
    State& st = it->second;
    const pos_t pos = r.full_len();
    const pos_t whole = static_cast<pos_t>(st.nrm.query(r.tail()));
    const pos_t mx = std::max(st.trim, whole);
    const pos_t rr = r.e - r.a - 3 * tau + 2;
    emin[i] = r.a + (pos <= mx ? 0 : std::min({pos - mx, r.p, rr}));
    st.nrm.insert(static_cast<std::uint64_t>(r.tail()), static_cast<std::uint64_t>(pos));
    st.trim = std::max(st.trim, pos - r.p);
  }
  return emin;
}

BminParts build_bmin(const PackedText& t, const SuffixScaffold& sc, const RunsTable& runs, bool use_isa) {
  const pos_t n = t.n_total();
  const pos_t tau = runs.tau();
  BminParts out;
  out.emin = compute_emin(runs);
  out.minus = Bitvector(static_cast<std::uint64_t>(n));
  out.plus = Bitvector(static_cast<std::uint64_t>(n));
  const auto& rs = runs.runs();
  std::vector<std::pair<pos_t, pos_t>> minus_ones, plus_ones;  // (SA position, j)

  for (std::uint32_t root = 0; root < runs.roots().size(); ++root) {
    const pos_t p = runs.roots()[root].p;
    std::vector<Bitvector> blocks[2];
    std::vector<SideLayout::Head> heads[2];
    std::unique_ptr<SideLayout> lay[2];
    for (int side = 0; side < 2; ++side) {
      const int type = side == 0 ? -1 : 1;
      auto [lo, hi] = runs.root_range(type, root);
      std::vector<Member> g;
      for (std::size_t x = lo; x < hi; ++x) {
        const Run& r = rs[runs.lex(type)[x]];
        g.push_back({r.a, r.last(tau), r.efull, r.full_len(), r.tail(), out.emin[runs.lex(type)[x]]});
      }
      lay[side] = std::make_unique<SideLayout>(std::move(g), p, tau, side == 0);
      for (pos_t s = 0; s < p; ++s) heads[side].push_back(lay[side]->head(s));
      if (lay[side]->runs().empty()) {
        blocks[side].assign(p, Bitvector());
        continue;
      }
      blocks[side].push_back(sweep_init(*lay[side], heads[side][0], p, out.sweep_events));
      for (pos_t s = 0; s + 1 < p; ++s)
        blocks[side].push_back(
            sweep_step(*lay[side], heads[side][s], heads[side][s + 1], blocks[side][s], p, out.sweep_events));
    }

    for (pos_t s = 0; s < p; ++s) {
      const std::uint64_t nm = blocks[0][s].size(), np = blocks[1][s].size();
      if (nm + np == 0) continue;
      pos_t rep = 0;
      for (int side = 0; side < 2 && rep == 0; ++side)
        for (const Member& r : lay[side]->runs()) {
          rep = last_with_head(r, r.a, r.last, s, p);
          if (rep) break;
        }
      if (rep == 0) throw ConstructionError("bmin: nonempty block without a representative");
      auto below = [&](pos_t r) { return compare_suffix(t, sc.sa[r], t, rep, 3 * tau - 1) < 0; };
      auto inside = [&](pos_t r) { return compare_suffix(t, sc.sa[r], t, rep, 3 * tau - 1) == 0; };
      pos_t lo = 0, hi = n;
      while (lo < hi) {
        pos_t mid = (lo + hi + 1) / 2;
        if (below(mid)) lo = mid;
        else hi = mid - 1;
      }
      const pos_t x = lo;
      pos_t z = x;
      {
        pos_t l2 = x, h2 = n;
        while (l2 < h2) {
          pos_t mid = (l2 + h2 + 1) / 2;
          if (inside(mid)) l2 = mid;
          else h2 = mid - 1;
        }
        z = l2;
      }
      if (static_cast<std::uint64_t>(z - x) != nm + np)
        throw ConstructionError("bmin: SA interval of R(s,H) has " + std::to_string(z - x) + " entries, layout has " +
                                std::to_string(nm + np));
      const pos_t y = x + static_cast<pos_t>(nm);
      out.blocks[{root, s}] = {x, y, z};
      for (std::uint64_t q = 1; q <= nm; ++q)
        if (blocks[0][s].get(q)) out.minus.set(static_cast<std::uint64_t>(x) + q, true);
      for (std::uint64_t q = 1; q <= np; ++q)
        if (blocks[1][s].get(q)) out.plus.set(static_cast<std::uint64_t>(y) + q, true);
    }

    for (int side = 0; side < 2; ++side) {
      const auto& g = lay[side]->runs();
      std::vector<std::vector<std::pair<std::size_t, pos_t>>> by_head(p);
      for (std::size_t i = 0; i < g.size(); ++i)
        for (pos_t j = g[i].a; j < g[i].emin; ++j) by_head[pmod(g[i].efull - j, p)].push_back({i, j});
      for (pos_t s = 0; s < p; ++s) {
        if (by_head[s].empty()) continue;
        const BminBlock& blk = out.blocks.at({root, s});
        auto pos = lay[side]->positions(heads[side][s], by_head[s]);
        for (std::size_t q = 0; q < pos.size(); ++q) {
          const pos_t j = by_head[s][q].second;
          pos_t gpos = (side == 0 ? blk.x : blk.y) + static_cast<pos_t>(pos[q]);
          if (gpos != sc.isa[j])
            throw ConstructionError("bmin: layout places " + std::to_string(j) + " at " + std::to_string(gpos) +
                                    ", suffix rank is " + std::to_string(sc.isa[j]));
          if (use_isa) gpos = sc.isa[j];
          (side == 0 ? minus_ones : plus_ones).push_back({gpos, j});
        }
      }
    }
  }

  out.minus.build_directories();
  out.plus.build_directories();
  auto fill = [](std::vector<std::pair<pos_t, pos_t>>& ones, const Bitvector& b, std::vector<pos_t>& sa) {
    std::sort(ones.begin(), ones.end());
    if (ones.size() != b.ones()) throw ConstructionError("bmin: 1-bit count differs from the RMin size");
    for (auto [g, j] : ones) {
      if (!b.get(static_cast<std::uint64_t>(g))) throw ConstructionError("bmin: RMin position on a 0-bit");
      sa.push_back(j);
    }
  };
  fill(minus_ones, out.minus, out.minus_sa);
  fill(plus_ones, out.plus, out.plus_sa);
  return out;
}

std::pair<Bitvector, Bitvector> bmin_from_isa(const SuffixScaffold& sc, const RunsTable& runs,
                                              const std::vector<pos_t>& emin) {
  const std::uint64_t n = static_cast<std::uint64_t>(sc.size());
  Bitvector minus(n), plus(n);
  const auto& rs = runs.runs();
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (pos_t j = rs[i].a; j < emin[i]; ++j) (rs[i].type < 0 ? minus : plus).set(static_cast<std::uint64_t>(sc.isa[j]), true);
  minus.build_directories();
  plus.build_directories();
  return {std::move(minus), std::move(plus)};
}

}  // namespace slz
