#include "slz/prefix_rmq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "slz/errors.hpp"

namespace slz {

namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

// Distinct id for every string of length <= ell: (sigma^len - 1)/(sigma - 1) + value.
std::uint64_t prefix_key(std::span<const sym_t> x, std::uint64_t sigma) {
  std::uint64_t off = 0, pw = 1, v = 0;
  for (sym_t c : x) {
    off += pw;
    pw *= sigma;
    v = v * sigma + c;
  }
  return off + v;
}

void check_key_space(unsigned ell, std::uint64_t sigma) {
  long double total = std::pow(static_cast<long double>(sigma), static_cast<long double>(ell + 1));
  if (total >= 1.8e19L) throw ParamError("prefix rmq: sigma^(ell+1) exceeds 64 bits");
}

struct Group {
  std::uint64_t key;
  std::vector<std::uint32_t> idx;  // 1-based, ascending
};

// Visits every occurring prefix of length 0..max_len with its members, refining the
// previous length's groups one character at a time.
template <class F>
void for_each_group(const PrefixRmqInput& in, unsigned max_len, F&& f) {
  const std::uint64_t m = in.flat.size() / std::max(1u, in.ell);
  std::vector<Group> cur(1);
  cur[0].key = 0;
  cur[0].idx.resize(m);
  std::iota(cur[0].idx.begin(), cur[0].idx.end(), 1u);
  std::uint64_t pw = 1, off = 0;  // sigma^k, key offset of length k
  for (unsigned k = 0;; ++k) {
    for (const auto& g : cur) f(k, g);
    if (k == max_len) break;
    off += pw;
    const std::uint64_t next_off = off;
    std::vector<Group> next;
    std::vector<std::vector<std::uint32_t>> buckets(in.sigma);
    for (auto& g : cur) {
      for (std::uint32_t i : g.idx) buckets[in.flat[(i - 1) * static_cast<std::uint64_t>(in.ell) + k]].push_back(i);
      const std::uint64_t code = g.key - (off - pw);
      for (std::uint64_t c = 0; c < in.sigma; ++c) {
        if (buckets[c].empty()) continue;
        next.push_back({next_off + code * in.sigma + c, std::move(buckets[c])});
        buckets[c].clear();
      }
      std::vector<std::uint32_t>().swap(g.idx);
    }
    pw *= in.sigma;
    cur = std::move(next);
  }
}

std::vector<std::uint64_t> gather(std::span<const std::uint64_t> order, const std::vector<std::uint32_t>& idx) {
  std::vector<std::uint64_t> v(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) v[r] = order[idx[r] - 1];
  return v;
}

class SimpleLayer : public PrefixRmqLayer {
 public:
  explicit SimpleLayer(const PrefixRmqInput& in) : src_(in.source), sigma_(in.sigma) {
    for_each_group(in, in.ell, [&](unsigned, const Group& g) { comps_.emplace(g.key, RmqIndex(gather(in.order, g.idx))); });
  }
  std::optional<pos_t> query(pos_t b, pos_t e, std::span<const sym_t> z) const override {
    auto it = comps_.find(prefix_key(z, sigma_));
    if (it == comps_.end()) return std::nullopt;
    std::uint64_t bq = src_->rank(b, z), eq = src_->rank(e, z);
    if (bq >= eq) return std::nullopt;
    pos_t a = it->second.query(static_cast<pos_t>(bq), static_cast<pos_t>(eq));
    return static_cast<pos_t>(src_->select(a, z));
  }
  std::size_t memory_bytes() const override {
    std::size_t s = 0;
    for (const auto& [k, r] : comps_) s += 16 + r.memory_bytes();
    return s;
  }

 private:
  const PrefixRmqSource* src_;
  std::uint64_t sigma_;
  std::unordered_map<std::uint64_t, RmqIndex> comps_;
};

class PackedLayer : public PrefixRmqLayer {
 public:
  explicit PackedLayer(const PrefixRmqInput& in) : src_(in.source), sigma_(in.sigma) {
    for_each_group(in, in.ell, [&](unsigned, const Group& g) { comps_.emplace(g.key, SystematicRmq(gather(in.order, g.idx))); });
  }
  std::optional<pos_t> query(pos_t b, pos_t e, std::span<const sym_t> z) const override {
    auto it = comps_.find(prefix_key(z, sigma_));
    if (it == comps_.end()) return std::nullopt;
    std::uint64_t bq = src_->rank(b, z), eq = src_->rank(e, z);
    if (bq >= eq) return std::nullopt;
    auto less = [&](pos_t i, pos_t k) { return src_->less(src_->select(i, z), src_->select(k, z)); };
    pos_t a = it->second.query(static_cast<pos_t>(bq), static_cast<pos_t>(eq), less);
    return static_cast<pos_t>(src_->select(a, z));
  }
  std::size_t memory_bytes() const override {
    std::size_t s = 0;
    for (const auto& [k, r] : comps_) s += 16 + r.memory_bytes();
    return s;
  }

 private:
  const PrefixRmqSource* src_;
  std::uint64_t sigma_;
  std::unordered_map<std::uint64_t, SystematicRmq> comps_;
};

class ShallowLayer : public PrefixRmqLayer {
 public:
  ShallowLayer(const PrefixRmqInput& in, std::uint64_t block) : src_(in.source), sigma_(in.sigma), tau_(block) {
    const std::uint64_t m = in.order.size();
    nblocks_ = (m + tau_ - 1) / tau_;
    for_each_group(in, in.ell, [&](unsigned, const Group& g) {
      PerPrefix pp;
      pp.blocks.resize(nblocks_);
      pp.before.assign(nblocks_ + 1, 0);
      std::vector<std::uint64_t> mins(nblocks_, kInf);
      std::size_t r = 0;
      for (std::uint64_t j = 0; j < nblocks_; ++j) {
        pp.before[j] = r;
        std::vector<std::uint64_t> vals;
        while (r < g.idx.size() && (g.idx[r] - 1) / tau_ == j) vals.push_back(in.order[g.idx[r++] - 1]);
        if (vals.empty()) continue;
        mins[j] = *std::min_element(vals.begin(), vals.end());
        pp.blocks[j] = SystematicRmq(vals);
      }
      pp.before[nblocks_] = r;
      pp.block_min = RmqIndex(std::move(mins));
      comps_.emplace(g.key, std::move(pp));
    });
  }

  std::optional<pos_t> query(pos_t b, pos_t e, std::span<const sym_t> z) const override {
    if (b >= e) return std::nullopt;
    auto it = comps_.find(prefix_key(z, sigma_));
    if (it == comps_.end()) return std::nullopt;
    const PerPrefix& pp = it->second;
    const std::uint64_t ub = static_cast<std::uint64_t>(b), ue = static_cast<std::uint64_t>(e);
    const std::uint64_t bq = (ub + tau_ - 1) / tau_, eq = ue / tau_;
    if (bq > eq) return in_block(pp, bq - 1, ub, ue, z);
    std::optional<pos_t> best;
    auto take = [&](std::optional<pos_t> c) {
      if (c && (!best || src_->less(*c, *best))) best = c;
    };
    if (ub < bq * tau_) take(in_block(pp, bq - 1, ub, bq * tau_, z));
    if (bq < eq) {
      pos_t blk = pp.block_min.query(static_cast<pos_t>(bq), static_cast<pos_t>(eq));
      if (pp.block_min.value(blk) != kInf)
        take(in_block(pp, blk - 1, (blk - 1) * tau_, std::min<std::uint64_t>(blk * tau_, src_->size()), z));
    }
    if (eq * tau_ < ue) take(in_block(pp, eq, eq * tau_, ue, z));
    return best;
  }

  std::size_t memory_bytes() const override {
    std::size_t s = 0;
    for (const auto& [k, pp] : comps_) {
      s += 16 + pp.before.size() * 8 + pp.block_min.memory_bytes();
      for (const auto& r : pp.blocks) s += sizeof(r) + r.memory_bytes();
    }
    return s;
  }

 private:
  struct PerPrefix {
    std::vector<SystematicRmq> blocks;
    std::vector<std::uint64_t> before;  // prefix rank at each block start
    RmqIndex block_min;
  };

  // (lo..hi] inside 0-based block j
  std::optional<pos_t> in_block(const PerPrefix& pp, std::uint64_t j, std::uint64_t lo, std::uint64_t hi,
                                std::span<const sym_t> z) const {
    const std::uint64_t base = pp.before[j];
    std::uint64_t bl = src_->rank(lo, z) - base, el = src_->rank(hi, z) - base;
    if (bl >= el) return std::nullopt;
    auto less = [&](pos_t i, pos_t k) {
      return src_->less(src_->select(base + i, z), src_->select(base + k, z));
    };
    pos_t a = pp.blocks[j].query(static_cast<pos_t>(bl), static_cast<pos_t>(el), less);
    return static_cast<pos_t>(src_->select(base + a, z));
  }

  const PrefixRmqSource* src_;
  std::uint64_t sigma_;
  std::uint64_t tau_;
  std::uint64_t nblocks_ = 0;
  std::unordered_map<std::uint64_t, PerPrefix> comps_;
};

void check_input(const PrefixRmqInput& in) {
  if (!in.source) throw ParamError("prefix rmq: no source");
  if (in.ell == 0 && !in.flat.empty()) throw InputError("prefix rmq: zero-length strings with payload");
  if (in.ell > 0 && in.flat.size() != in.order.size() * in.ell) throw InputError("prefix rmq: ragged strings");
  for (sym_t c : in.flat)
    if (c >= in.sigma) throw InputError("prefix rmq: symbol outside alphabet");
  check_key_space(in.ell, in.sigma);
}

}  // namespace

// ---------------------------------------------------------------------------

PrefixRankSelect::PrefixRankSelect(std::span<const sym_t> flat, unsigned ell, std::uint64_t sigma)
    : ell_(ell), w_(bits_for(sigma)), sigma_(sigma) {
  if (sigma < 2) throw ParamError("prefix rank/select: sigma < 2");
  if (ell == 0) throw ParamError("prefix rank/select: empty strings");
  if (flat.size() % ell != 0) throw InputError("prefix rank/select: ragged strings");
  m_ = flat.size() / ell;
  for (sym_t c : flat)
    if (c >= sigma) throw InputError("prefix rank/select: symbol outside alphabet");
  const unsigned depth = ell * w_;
  std::vector<std::uint32_t> cur(m_), nxt(m_);
  std::iota(cur.begin(), cur.end(), 0u);
  levels_.reserve(depth);
  zeros_.reserve(depth);
  for (unsigned d = 0; d < depth; ++d) {
    Bitvector bv(m_);
    std::uint64_t z = 0;
    for (std::uint64_t p = 0; p < m_; ++p) {
      unsigned bit = bit_at(flat.subspan(static_cast<std::size_t>(cur[p]) * ell, ell), d);
      if (bit) bv.set(p + 1, true);
      else ++z;
    }
    std::uint64_t zi = 0, oi = z;
    for (std::uint64_t p = 0; p < m_; ++p) {
      if (bv.get(p + 1)) nxt[oi++] = cur[p];
      else nxt[zi++] = cur[p];
    }
    bv.build_directories();
    levels_.push_back(std::move(bv));
    zeros_.push_back(z);
    cur.swap(nxt);
  }
}

void PrefixRankSelect::descend(std::span<const sym_t> x, std::uint64_t& start, std::uint64_t& j) const {
  const unsigned k = static_cast<unsigned>(x.size()) * w_;
  for (unsigned d = 0; d < k; ++d) {
    const Bitvector& bv = levels_[d];
    if (bit_at(x, d)) {
      start = zeros_[d] + bv.rank1(start);
      j = zeros_[d] + bv.rank1(j);
    } else {
      start = bv.rank0(start);
      j = bv.rank0(j);
    }
  }
}

std::uint64_t PrefixRankSelect::rank(std::uint64_t j, std::span<const sym_t> x) const {
  if (x.size() > ell_) throw ParamError("prefix rank: pattern longer than strings");
  if (j > m_) throw ParamError("prefix rank: position out of range");
  for (sym_t c : x)
    if (c >= sigma_) return 0;
  std::uint64_t start = 0;
  descend(x, start, j);
  return j - start;
}

std::uint64_t PrefixRankSelect::select(std::uint64_t r, std::span<const sym_t> x) const {
  if (x.size() > ell_) throw ParamError("prefix select: pattern longer than strings");
  if (r == 0 || r > count(x)) throw QueryError("prefix select: rank out of range");
  std::uint64_t start = 0, end = 0;
  descend(x, start, end);
  std::uint64_t p = start + r - 1;
  for (unsigned d = static_cast<unsigned>(x.size()) * w_; d-- > 0;) {
    const Bitvector& bv = levels_[d];
    if (bit_at(x, d)) p = bv.select1(p - zeros_[d] + 1) - 1;
    else p = bv.select0(p + 1) - 1;
  }
  return p + 1;
}

std::size_t PrefixRankSelect::memory_bytes() const {
  std::size_t s = zeros_.size() * 8;
  for (const auto& bv : levels_) s += bv.memory_bytes();
  return s;
}

// ---------------------------------------------------------------------------

std::unique_ptr<PrefixRmqLayer> build_simple(const PrefixRmqInput& in) {
  check_input(in);
  return std::make_unique<SimpleLayer>(in);
}

std::unique_ptr<PrefixRmqLayer> build_packed(const PrefixRmqInput& in) {
  check_input(in);
  return std::make_unique<PackedLayer>(in);
}

std::unique_ptr<PrefixRmqLayer> build_shallow(const PrefixRmqInput& in) {
  check_input(in);
  const std::uint64_t m = in.order.size();
  const std::uint64_t logm = std::max<std::uint64_t>(1, std::bit_width(m > 1 ? m - 1 : 1));
  long double cells = std::pow(static_cast<long double>(in.sigma), static_cast<long double>(in.ell)) * logm;
  if (cells > static_cast<long double>(m)) return std::make_unique<PackedLayer>(in);
  return std::make_unique<ShallowLayer>(in, static_cast<std::uint64_t>(cells));
}

struct PrefixRmqIndex::Source : PrefixRmqSource {
  const PrefixRankSelect* prs;
  const std::vector<std::uint64_t>* a;
  std::uint64_t size() const override { return prs->size(); }
  std::uint64_t rank(std::uint64_t j, std::span<const sym_t> z) const override { return prs->rank(j, z); }
  std::uint64_t select(std::uint64_t r, std::span<const sym_t> z) const override { return prs->select(r, z); }
  bool less(std::uint64_t i, std::uint64_t k) const override {
    std::uint64_t x = (*a)[i - 1], y = (*a)[k - 1];
    return x < y || (x == y && i < k);
  }
};

// The subsequence S_Y with every string cut to the characters after Y.
struct PrefixRmqIndex::View : PrefixRmqSource {
  const PrefixRmqSource* parent;
  const PrefixRankSelect* prs;
  std::vector<sym_t> y;
  std::uint64_t m = 0;

  std::span<const sym_t> join(std::span<const sym_t> z) const {
    thread_local std::vector<sym_t> yz;
    yz.assign(y.begin(), y.end());
    yz.insert(yz.end(), z.begin(), z.end());
    return yz;
  }
  std::uint64_t size() const override { return m; }
  std::uint64_t rank(std::uint64_t j, std::span<const sym_t> z) const override {
    if (j == 0) return 0;
    std::uint64_t i = prs->select(j, y);
    return prs->rank(i, join(z));
  }
  std::uint64_t select(std::uint64_t r, std::span<const sym_t> z) const override {
    std::uint64_t i = prs->select(r, join(z));
    return prs->rank(i, y);
  }
  bool less(std::uint64_t i, std::uint64_t k) const override {
    return parent->less(prs->select(i, y), prs->select(k, y));
  }
};

PrefixRmqIndex::PrefixRmqIndex(PrefixRmqIndex&& o) noexcept { *this = std::move(o); }

PrefixRmqIndex& PrefixRmqIndex::operator=(PrefixRmqIndex&& o) noexcept {
  a_ = std::move(o.a_);
  ell_ = o.ell_;
  sigma_ = o.sigma_;
  kind_ = o.kind_;
  alpha_ = o.alpha_;
  prs_ = std::move(o.prs_);
  source_ = std::move(o.source_);
  flat_layer_ = std::move(o.flat_layer_);
  views_ = std::move(o.views_);
  view_layers_ = std::move(o.view_layers_);
  view_of_ = std::move(o.view_of_);
  // the source and views address prs_ and a_ by pointer
  if (source_) {
    source_->prs = &prs_;
    source_->a = &a_;
  }
  for (auto& v : views_) v->prs = &prs_;
  return *this;
}
PrefixRmqIndex::PrefixRmqIndex() = default;
PrefixRmqIndex::~PrefixRmqIndex() = default;

namespace {
std::vector<sym_t> flatten(const std::vector<std::vector<sym_t>>& strings, unsigned ell) {
  std::vector<sym_t> flat;
  flat.reserve(strings.size() * ell);
  for (const auto& s : strings) {
    if (s.size() != ell) throw InputError("prefix rmq: ragged strings");
    flat.insert(flat.end(), s.begin(), s.end());
  }
  return flat;
}
}  // namespace

PrefixRmqIndex::PrefixRmqIndex(std::vector<std::uint64_t> a, const std::vector<std::vector<sym_t>>& strings,
                               unsigned ell, std::uint64_t sigma, PrefixRmqKind kind)
    : PrefixRmqIndex(std::move(a), flatten(strings, ell), ell, sigma, kind) {}

PrefixRmqIndex::PrefixRmqIndex(std::vector<std::uint64_t> a, std::span<const sym_t> flat, unsigned ell,
                               std::uint64_t sigma, PrefixRmqKind kind)
    : a_(std::move(a)), ell_(ell), sigma_(sigma), kind_(kind) {
  const std::uint64_t m = a_.size();
  if (m == 0) throw ParamError("prefix rmq: empty input");
  if (flat.size() != m * ell) throw InputError("prefix rmq: ragged strings");
  check_key_space(ell, sigma);
  prs_ = PrefixRankSelect(flat, ell, sigma);
  source_ = std::make_unique<Source>();
  source_->prs = &prs_;
  source_->a = &a_;

  std::vector<std::uint64_t> order(m);
  {
    std::vector<std::uint32_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t p, std::uint32_t q) { return a_[p] < a_[q]; });
    for (std::uint64_t r = 0; r < m; ++r) order[idx[r]] = r;
  }
  const double logm = std::log2(static_cast<double>(std::max<std::uint64_t>(m, 2)));
  if (kind_ == PrefixRmqKind::automatic)
    kind_ = ell_ <= std::sqrt(logm) ? PrefixRmqKind::simple : PrefixRmqKind::layered;

  PrefixRmqInput in{source_.get(), order, flat, ell_, sigma_};
  switch (kind_) {
    case PrefixRmqKind::simple: flat_layer_ = build_simple(in); return;
    case PrefixRmqKind::packed: flat_layer_ = build_packed(in); return;
    case PrefixRmqKind::shallow: flat_layer_ = build_shallow(in); return;
    default: break;
  }

  alpha_ = std::max(1u, static_cast<unsigned>(std::floor(std::sqrt(logm) / std::log2(static_cast<double>(sigma_)))));
  for_each_group(in, ell_ - 1, [&](unsigned k, const Group& g) {
    if (k % alpha_ != 0) return;
    const unsigned sub = std::min(alpha_, ell_ - k);
    auto view = std::make_unique<View>();
    view->parent = source_.get();
    view->prs = &prs_;
    const std::uint64_t first = g.idx[0] - 1;
    view->y.assign(flat.begin() + first * ell_, flat.begin() + first * ell_ + k);
    view->m = g.idx.size();
    std::vector<sym_t> sub_flat;
    sub_flat.reserve(g.idx.size() * sub);
    for (std::uint32_t i : g.idx) {
      auto s = flat.subspan((i - 1) * static_cast<std::size_t>(ell_) + k, sub);
      sub_flat.insert(sub_flat.end(), s.begin(), s.end());
    }
    std::vector<std::uint64_t> sub_order = gather(order, g.idx);
    PrefixRmqInput vin{view.get(), sub_order, sub_flat, sub, sigma_};
    view_of_.emplace(g.key, static_cast<std::uint32_t>(views_.size()));
    view_layers_.push_back(build_shallow(vin));
    views_.push_back(std::move(view));
  });
}

std::optional<pos_t> PrefixRmqIndex::query(pos_t b, pos_t e, std::span<const sym_t> x) const {
  if (x.size() > ell_) throw ParamError("prefix rmq: pattern longer than strings");
  if (b < 0 || e > static_cast<pos_t>(a_.size()) || b > e) throw ParamError("prefix rmq: invalid range");
  if (b == e) return std::nullopt;
  for (sym_t c : x)
    if (c >= sigma_) return std::nullopt;
  if (flat_layer_) return flat_layer_->query(b, e, x);
  std::size_t zlen = x.size() % alpha_;
  if (x.size() - zlen == ell_) zlen = alpha_;
  auto y = x.first(x.size() - zlen);
  auto z = x.subspan(x.size() - zlen);
  auto it = view_of_.find(prefix_key(y, sigma_));
  if (it == view_of_.end()) return std::nullopt;
  std::uint64_t bq = prs_.rank(b, y), eq = prs_.rank(e, y);
  if (bq >= eq) return std::nullopt;
  auto a = view_layers_[it->second]->query(static_cast<pos_t>(bq), static_cast<pos_t>(eq), z);
  if (!a) return std::nullopt;
  return static_cast<pos_t>(prs_.select(*a, y));
}

std::size_t PrefixRmqIndex::memory_bytes() const {
  std::size_t s = a_.size() * 8 + prs_.memory_bytes();
  if (flat_layer_) s += flat_layer_->memory_bytes();
  for (const auto& l : view_layers_) s += l->memory_bytes();
  for (const auto& v : views_) s += sizeof(*v) + v->y.size() * 4;
  return s;
}

}  // namespace slz
