#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slz/minocc_core.hpp"
#include "slz/minocc_nonperiodic.hpp"
#include "slz/minocc_periodic.hpp"
#include "slz/prefix_rmq.hpp"
#include "slz/rmq.hpp"
#include "slz/text_core.hpp"

namespace slz {

struct MinOccConfig {
  pos_t tau = 0;  // 0: max(2, floor(log_sigma(n) / 8)); an explicit value also forces the full index
  bool memory_relaxed = false;  // keep the scaffold SA/ISA alive
  bool allow_fallback = true;
  PrefixRmqKind prefix_kind = PrefixRmqKind::automatic;
};

struct BuildTimes {
  double scaffold = 0, core = 0, nonperiodic = 0, periodic = 0;
};

// Leftmost occurrence of any substring or explicit pattern. Short patterns go to the
// core tables, longer ones to the periodic or nonperiodic part depending on their
// (3tau-1)-prefix. Small texts and large alphabets (n < 64 or sigma^7 >= n) get a
// suffix array with RMQ instead.
class MinOccIndex {
 public:
  static constexpr pos_t kMinN = 64;

  MinOccIndex() = default;
  MinOccIndex(MinOccIndex&&) noexcept = default;
  MinOccIndex& operator=(MinOccIndex&&) noexcept = default;

  // `t` must carry a sentinel.
  static MinOccIndex build(PackedText t, const MinOccConfig& cfg = {});
  static MinOccIndex build(std::span<const sym_t> symbols, std::uint64_t sigma, const MinOccConfig& cfg = {});
  static pos_t default_tau(pos_t n, std::uint64_t sigma);
  // n >= 64 and sigma < n^(1/7).
  static bool regime_ok(pos_t n, std::uint64_t sigma);
  static bool tau_fits(pos_t tau, pos_t n, std::uint64_t sigma_ext);

  const PackedText& text() const { return *text_; }
  pos_t n() const { return text_->n(); }
  pos_t tau() const { return tau_; }
  bool fallback() const { return fallback_; }
  const BuildTimes& build_times() const { return times_; }

  // min Occ(T[j..j+len), T); ParamError unless 1 <= j, len >= 1, j + len <= n_total + 1
  // (the window may include the sentinel).
  pos_t minocc_window(pos_t j, pos_t len) const;
  // NotFoundError when P does not occur.
  pos_t minocc_pattern(std::span<const sym_t> p) const;

  const CoreTables& core() const { return core_; }
  const NonperiodicIndex& nonperiodic() const { return nonper_; }
  const PeriodicIndex& periodic() const { return per_; }
  const SuffixScaffold* scaffold() const { return scaffold_.get(); }

  std::size_t memory_bytes() const;
  std::string serialize() const;
  static MinOccIndex deserialize(std::string_view data);
  void save(const std::string& path) const;
  static MinOccIndex load(const std::string& path);

 private:
  std::pair<pos_t, pos_t> fb_range(const PackedText& src, pos_t j, pos_t len) const;
  pos_t fb_min(pos_t b, pos_t e) const;

  std::unique_ptr<PackedText> text_;
  pos_t tau_ = 0;
  bool fallback_ = false;
  PrefixRmqKind prefix_kind_ = PrefixRmqKind::automatic;
  CoreTables core_;
  NonperiodicIndex nonper_;
  PeriodicIndex per_;
  std::unique_ptr<SuffixScaffold> scaffold_;  // memory-relaxed mode only
  std::vector<pos_t> fb_sa_;                  // fallback: 1-based SA
  RmqIndex fb_rmq_;
  BuildTimes times_;
};

}  // namespace slz
