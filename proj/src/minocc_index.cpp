#include "slz/minocc_index.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "slz/bitpack.hpp"
#include "slz/errors.hpp"
#include "slz/range_count.hpp"

namespace slz {

namespace {

constexpr char kMagic[8] = {'S', 'L', 'Z', 'I', 'X', '0', '1', '\0'};
constexpr std::uint64_t kVersion = 1;

enum Section : std::uint64_t { kMeta = 1, kText = 2, kCore = 3, kNonper = 4, kPer = 5, kFallback = 6 };

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// sigma^e <= limit without overflow
bool pow_at_most(std::uint64_t sigma, std::uint64_t e, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (v > limit / sigma) return false;
    v *= sigma;
  }
  return v <= limit;
}

}  // namespace

pos_t MinOccIndex::default_tau(pos_t n, std::uint64_t sigma) {
  const double s = static_cast<double>(std::max<std::uint64_t>(sigma, 2));
  const double lg = std::log(static_cast<double>(std::max<pos_t>(n, 2))) / std::log(s);
  pos_t tau = std::max<pos_t>(2, static_cast<pos_t>(std::floor(lg / 8.0)));
  while (tau > 2 && (3 * tau - 1 > n || !pow_at_most(sigma + 1, 6 * static_cast<std::uint64_t>(tau),
                                                     CoreTables::kDenseBudget)))
    --tau;
  return tau;
}

bool MinOccIndex::regime_ok(pos_t n, std::uint64_t sigma) {
  if (n < kMinN) return false;
  return pow_at_most(std::max<std::uint64_t>(sigma, 2), 7, static_cast<std::uint64_t>(n) - 1);
}

bool MinOccIndex::tau_fits(pos_t tau, pos_t n, std::uint64_t sigma_ext) {
  return tau >= 2 && 3 * tau - 1 <= n && padded_fits(3 * tau - 1, sigma_ext);
}

MinOccIndex MinOccIndex::build(std::span<const sym_t> symbols, std::uint64_t sigma, const MinOccConfig& cfg) {
  return build(pack_text(symbols, sigma, true), cfg);
}

MinOccIndex MinOccIndex::build(PackedText t, const MinOccConfig& cfg) {
  if (!t.has_sentinel()) throw ContractError("minocc index: text must carry a sentinel");
  MinOccIndex x;
  x.text_ = std::make_unique<PackedText>(std::move(t));
  x.prefix_kind_ = cfg.prefix_kind;
  const PackedText& tx = *x.text_;
  const pos_t n = tx.n_total();
  const std::uint64_t sigma = tx.sigma() - 1;

  auto t0 = std::chrono::steady_clock::now();
  auto sc = std::make_unique<SuffixScaffold>(build_scaffold(tx));
  x.times_.scaffold = seconds_since(t0);

  if (cfg.tau != 0) {
    if (!tau_fits(cfg.tau, n, tx.sigma())) throw ConfigError("minocc index: tau override does not fit this text");
    x.tau_ = cfg.tau;
  } else if (cfg.allow_fallback && !regime_ok(n, sigma)) {
    x.fallback_ = true;
  } else {
    x.tau_ = default_tau(n, sigma);
    if (!tau_fits(x.tau_, n, tx.sigma())) {
      if (!cfg.allow_fallback) throw ConfigError("minocc index: no admissible tau for this text");
      x.fallback_ = true;
      x.tau_ = 0;
    }
  }

  if (x.fallback_) {
    x.fb_sa_.assign(sc->sa.begin() + 1, sc->sa.end());
    std::vector<std::uint64_t> v(x.fb_sa_.begin(), x.fb_sa_.end());
    x.fb_rmq_ = RmqIndex(std::move(v));
    return x;
  }

  t0 = std::chrono::steady_clock::now();
  x.core_ = CoreTables::build(tx, x.tau_);
  x.times_.core = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  x.nonper_ = NonperiodicIndex::build(tx, *sc, x.tau_, cfg.prefix_kind);
  x.times_.nonperiodic = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  x.per_ = PeriodicIndex::build(tx, *sc, x.tau_, cfg.memory_relaxed);
  x.times_.periodic = seconds_since(t0);
  if (cfg.memory_relaxed) {
    x.scaffold_ = std::move(sc);
    x.per_.attach_full_sa(&x.scaffold_->sa);
  }
  return x;
}

std::pair<pos_t, pos_t> MinOccIndex::fb_range(const PackedText& src, pos_t j, pos_t len) const {
  auto cmp = [&](pos_t s) { return compare_suffix(*text_, s, src, j, len); };
  auto b = std::partition_point(fb_sa_.begin(), fb_sa_.end(), [&](pos_t s) { return cmp(s) < 0; });
  auto e = std::partition_point(b, fb_sa_.end(), [&](pos_t s) { return cmp(s) == 0; });
  return {b - fb_sa_.begin(), e - fb_sa_.begin()};
}

pos_t MinOccIndex::fb_min(pos_t b, pos_t e) const {
  if (b >= e) throw NotFoundError("pattern does not occur");
  return fb_sa_[fb_rmq_.query(b, e) - 1];
}

pos_t MinOccIndex::minocc_window(pos_t j, pos_t len) const {
  if (!text_) throw ContractError("minocc index: not built");
  if (j < 1 || len < 1 || j + len > text_->n_total() + 1) throw ParamError("minocc window outside the text");
  if (fallback_) {
    auto [b, e] = fb_range(*text_, j, len);
    return fb_min(b, e);
  }
  if (len < 3 * tau_ - 1) return core_.minocc_window(j, len);
  if (core_.is_periodic_window(j)) return per_.minocc_window(j, len);
  return nonper_.minocc_window(j, len);
}

pos_t MinOccIndex::minocc_pattern(std::span<const sym_t> p) const {
  if (!text_) throw ContractError("minocc index: not built");
  if (p.empty()) throw ParamError("minocc pattern: empty pattern");
  const std::uint64_t sigma = text_->sigma() - 1;
  for (sym_t c : p)
    if (c >= sigma) throw NotFoundError("pattern symbol outside the alphabet");
  if (static_cast<pos_t>(p.size()) > text_->n()) throw NotFoundError("pattern longer than the text");
  if (fallback_) {
    PackedText packed = pack_pattern(p, *text_);
    auto [b, e] = fb_range(packed, 1, static_cast<pos_t>(p.size()));
    return fb_min(b, e);
  }
  if (static_cast<pos_t>(p.size()) < 3 * tau_ - 1) return core_.minocc_pattern(p);
  if (core_.is_periodic_pattern(p)) return per_.minocc_pattern(p);
  return nonper_.minocc_pattern(p);
}

std::size_t MinOccIndex::memory_bytes() const {
  std::size_t s = text_ ? text_->memory_bytes() : 0;
  if (fallback_) return s + fb_sa_.size() * 8 + fb_rmq_.memory_bytes();
  s += core_.memory_bytes() + nonper_.memory_bytes() + per_.memory_bytes();
  if (scaffold_) s += (scaffold_->sa.size() + scaffold_->isa.size()) * 8;
  return s;
}

std::string MinOccIndex::serialize() const {
  if (!text_) throw ContractError("minocc index: not built");
  std::vector<std::pair<std::uint64_t, std::string>> sec;
  {
    std::string m;
    put_u64(m, static_cast<std::uint64_t>(text_->n()));
    put_u64(m, text_->sigma() - 1);
    put_u64(m, static_cast<std::uint64_t>(tau_));
    put_u64(m, fallback_ ? 1 : 0);
    put_u64(m, static_cast<std::uint64_t>(prefix_kind_));
    sec.emplace_back(kMeta, std::move(m));
  }
  {
    std::string m;
    put_u64s(m, text_->words());
    sec.emplace_back(kText, std::move(m));
  }
  if (fallback_) {
    std::string m;
    put_i64s(m, fb_sa_);
    sec.emplace_back(kFallback, std::move(m));
  } else {
    std::string a, b, c;
    core_.save(a);
    nonper_.save(b);
    per_.save(c);
    sec.emplace_back(kCore, std::move(a));
    sec.emplace_back(kNonper, std::move(b));
    sec.emplace_back(kPer, std::move(c));
  }
  std::string out(kMagic, sizeof(kMagic));
  put_u64(out, kVersion);
  put_u64(out, sec.size());
  std::uint64_t off = out.size() + sec.size() * 24;
  for (auto& [id, body] : sec) {
    put_u64(out, id);
    put_u64(out, off);
    put_u64(out, body.size());
    off += body.size();
  }
  for (auto& [id, body] : sec) out += body;
  return out;
}

MinOccIndex MinOccIndex::deserialize(std::string_view data) {
  if (data.size() < 24 || data.substr(0, 8) != std::string_view(kMagic, 8))
    throw FormatError("minocc index: bad magic");
  std::string_view in = data.substr(8);
  if (get_u64(in) != kVersion) throw FormatError("minocc index: unsupported version");
  const std::uint64_t count = get_u64(in);
  if (count > 16) throw FormatError("minocc index: bad section table");
  std::map<std::uint64_t, std::string_view> sec;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t id = get_u64(in), off = get_u64(in), len = get_u64(in);
    if (off > data.size() || len > data.size() - off) throw FormatError("minocc index: section out of bounds");
    if (!sec.emplace(id, data.substr(off, len)).second) throw FormatError("minocc index: duplicate section");
  }
  auto take = [&](std::uint64_t id) {
    auto it = sec.find(id);
    if (it == sec.end()) throw FormatError("minocc index: missing section");
    return it->second;
  };
  auto done = [](std::string_view s) {
    if (!s.empty()) throw FormatError("minocc index: trailing bytes in section");
  };

  MinOccIndex x;
  std::string_view meta = take(kMeta);
  const pos_t n = static_cast<pos_t>(get_u64(meta));
  const std::uint64_t sigma = get_u64(meta);
  x.tau_ = static_cast<pos_t>(get_u64(meta));
  x.fallback_ = get_u64(meta) != 0;
  const std::uint64_t kind = get_u64(meta);
  if (kind > static_cast<std::uint64_t>(PrefixRmqKind::layered)) throw FormatError("minocc index: bad prefix kind");
  x.prefix_kind_ = static_cast<PrefixRmqKind>(kind);
  done(meta);

  std::string_view tx = take(kText);
  x.text_ = std::make_unique<PackedText>(restore_text(n, sigma, true, get_u64s(tx)));
  done(tx);

  if (x.fallback_) {
    std::string_view fb = take(kFallback);
    x.fb_sa_ = get_i64s(fb);
    done(fb);
    if (static_cast<pos_t>(x.fb_sa_.size()) != x.text_->n_total())
      throw FormatError("minocc index: suffix array size differs from the text");
    std::vector<std::uint64_t> v(x.fb_sa_.begin(), x.fb_sa_.end());
    x.fb_rmq_ = RmqIndex(std::move(v));
    return x;
  }
  if (!tau_fits(x.tau_, x.text_->n_total(), x.text_->sigma())) throw FormatError("minocc index: bad tau");
  std::string_view c = take(kCore), np = take(kNonper), pe = take(kPer);
  x.core_ = CoreTables::load(c, *x.text_);
  x.nonper_ = NonperiodicIndex::load(np, *x.text_, x.prefix_kind_);
  x.per_ = PeriodicIndex::load(pe, *x.text_);
  done(c);
  done(np);
  done(pe);
  if (x.core_.tau() != x.tau_ || x.nonper_.tau() != x.tau_ || x.per_.tau() != x.tau_)
    throw FormatError("minocc index: tau differs between sections");
  return x;
}

void MinOccIndex::save(const std::string& path) const { write_file(path, serialize()); }

MinOccIndex MinOccIndex::load(const std::string& path) { return deserialize(read_file(path)); }

}  // namespace slz
