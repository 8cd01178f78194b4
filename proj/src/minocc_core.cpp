#include "slz/minocc_core.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "slz/bitpack.hpp"
#include "slz/errors.hpp"
#include "slz/range_count.hpp"
#include "slz/sync_set.hpp"

namespace slz {

bool CoreTables::dense_fits(std::uint64_t sigma, pos_t tau) {
  unsigned __int128 v = 1;
  for (pos_t k = 0; k < 6 * tau; ++k) {
    v *= sigma;
    if (v > kDenseBudget) return false;
  }
  return true;
}

CoreTables CoreTables::build(const PackedText& t, pos_t tau) {
  const pos_t n = t.n_total();
  const std::uint64_t sigma = t.sigma();
  if (tau < 1 || 3 * tau - 1 > n) throw ParamError("core tables: tau outside [1, (n+1)/3]");
  const pos_t ell = 3 * tau - 2;
  if (!padded_fits(ell, sigma)) throw ConfigError("core tables: patterns of length 3tau-2 do not fit a 64-bit key");
  if (n >= static_cast<pos_t>(UINT32_MAX) - 1) throw ConfigError("core tables: text too long");

  CoreTables c;
  c.text_ = &t;
  c.tau_ = tau;
  c.dense_ = dense_fits(sigma, tau);
  c.absent_ = static_cast<std::uint32_t>(n + 1);
  if (c.dense_) {
    std::uint64_t size = 1;
    for (pos_t k = 0; k < 2 * ell; ++k) size *= sigma;
    c.flat_.assign(size, c.absent_);
  }

  // Blocks T[i..i+2ell-1) for i = 1, 1+ell, ...; every substring of length <= ell
  // starting in [i..i+ell) lies inside. A block equal to an earlier one adds nothing.
  std::unordered_set<std::string> seen;
  std::vector<sym_t> sym;
  for (pos_t i = 1; i <= n; i += ell) {
    const pos_t end = std::min<pos_t>(n + 1, i + 2 * ell - 1);
    sym = t.extract(i, end - i);
    if (end - i == 2 * ell - 1) {
      std::string key(reinterpret_cast<const char*>(sym.data()), sym.size() * sizeof(sym_t));
      if (!seen.insert(std::move(key)).second) continue;
    }
    for (pos_t s = i; s < i + ell && s < end; ++s) {
      for (pos_t len = 1; len <= ell && s + len <= end; ++len) {
        std::uint64_t key = encode_padded(std::span<const sym_t>(sym.data() + (s - i), len), ell, sigma);
        if (c.dense_) {
          if (c.flat_[key] == c.absent_) c.flat_[key] = static_cast<std::uint32_t>(s);
        } else {
          c.map_.try_emplace(key, static_cast<std::uint32_t>(s));
        }
      }
    }
  }

  if (c.dense_) c.fill_periods();
  return c;
}

void CoreTables::fill_periods() {
  const std::uint64_t sigma = text_->sigma();
  const pos_t w = 3 * tau_ - 1;
  std::uint64_t size = 1;
  for (pos_t k = 0; k < w; ++k) size *= sigma;
  per_.assign(size, 0);
  std::vector<sym_t> x(w);
  for (std::uint64_t v = 0; v < size; ++v) {
    std::uint64_t r = v;
    for (pos_t k = w; k-- > 0;) {
      x[k] = static_cast<sym_t>(r % sigma);
      r /= sigma;
    }
    pos_t p = period_of(x);
    if (p <= tau_ / 3) per_[v] = static_cast<std::uint8_t>(p);
  }
}

std::size_t CoreTables::entries() const { return dense_ ? flat_.size() : map_.size(); }

pos_t CoreTables::lookup(std::uint64_t key) const {
  if (dense_) {
    std::uint32_t v = flat_[key];
    if (v == absent_) throw NotFoundError("pattern does not occur");
    return v;
  }
  auto it = map_.find(key);
  if (it == map_.end()) throw NotFoundError("pattern does not occur");
  return it->second;
}

pos_t CoreTables::minocc_pattern(std::span<const sym_t> p) const {
  const pos_t len = static_cast<pos_t>(p.size());
  if (len < 1 || len > max_len()) throw ParamError("core lookup: pattern length outside [1..3tau-2]");
  for (sym_t c : p)
    if (c >= text_->sigma()) throw NotFoundError("pattern symbol outside the alphabet");
  return lookup(encode_padded(p, max_len(), text_->sigma()));
}

pos_t CoreTables::minocc_window(pos_t j, pos_t len) const {
  if (len < 1 || len > max_len()) throw ParamError("core lookup: length outside [1..3tau-2]");
  if (j < 1 || j + len > text_->n_total() + 1) throw ParamError("core lookup: window outside the text");
  return lookup(encode_padded(*text_, j, len, max_len()));
}

std::uint64_t CoreTables::window_value(pos_t j) const {
  std::uint64_t v = 0;
  for (pos_t k = 0; k < 3 * tau_ - 1; ++k) v = v * text_->sigma() + (*text_)[j + k];
  return v;
}

pos_t CoreTables::window_period(pos_t j) const {
  if (j < 1 || j > text_->n_total() - 3 * tau_ + 2) return 0;
  if (dense_) return per_[window_value(j)];
  return period_at_most(*text_, j, 3 * tau_ - 1, tau_ / 3);
}

bool CoreTables::is_periodic_window(pos_t j) const { return window_period(j) != 0; }

bool CoreTables::is_periodic_pattern(std::span<const sym_t> p) const {
  const pos_t w = 3 * tau_ - 1;
  if (static_cast<pos_t>(p.size()) < w) throw ParamError("periodicity test: pattern shorter than 3tau-1");
  if (dense_) {
    std::uint64_t v = 0;
    for (pos_t k = 0; k < w; ++k) {
      if (p[k] >= text_->sigma()) return period_of(p.first(w)) <= tau_ / 3;
      v = v * text_->sigma() + p[k];
    }
    return per_[v] != 0;
  }
  return period_of(p.first(w)) <= tau_ / 3;
}

std::size_t CoreTables::memory_bytes() const {
  return flat_.size() * 4 + map_.size() * 24 + per_.size();
}

void CoreTables::save(std::string& out) const {
  put_u64(out, static_cast<std::uint64_t>(tau_));
  put_u64(out, dense_ ? 1 : 0);
  if (dense_) {
    // Only the occupied cells; the rest of the array is implied.
    std::vector<std::uint64_t> cells;
    for (std::uint64_t k = 0; k < flat_.size(); ++k)
      if (flat_[k] != absent_) {
        cells.push_back(k);
        cells.push_back(flat_[k]);
      }
    put_u64s(out, cells);
  } else {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> kv(map_.begin(), map_.end());
    std::sort(kv.begin(), kv.end());
    std::vector<std::uint64_t> cells;
    cells.reserve(kv.size() * 2);
    for (auto& [k, v] : kv) {
      cells.push_back(k);
      cells.push_back(v);
    }
    put_u64s(out, cells);
  }
}

CoreTables CoreTables::load(std::string_view& in, const PackedText& t) {
  CoreTables c;
  c.text_ = &t;
  c.tau_ = static_cast<pos_t>(get_u64(in));
  c.dense_ = get_u64(in) != 0;
  c.absent_ = static_cast<std::uint32_t>(t.n_total() + 1);
  auto cells = get_u64s(in);
  if (cells.size() % 2 != 0) throw FormatError("core tables: odd cell list");
  if (c.dense_ != dense_fits(t.sigma(), c.tau_)) throw FormatError("core tables: mode does not match tau");
  if (c.dense_) {
    std::uint64_t size = 1;
    for (pos_t k = 0; k < 2 * c.max_len(); ++k) size *= t.sigma();
    c.flat_.assign(size, c.absent_);
    for (std::size_t i = 0; i < cells.size(); i += 2) {
      if (cells[i] >= size) throw FormatError("core tables: key out of range");
      c.flat_[cells[i]] = static_cast<std::uint32_t>(cells[i + 1]);
    }
    c.fill_periods();
  } else {
    c.map_.reserve(cells.size() / 2);
    for (std::size_t i = 0; i < cells.size(); i += 2) c.map_.emplace(cells[i], static_cast<std::uint32_t>(cells[i + 1]));
  }
  return c;
}

}  // namespace slz
