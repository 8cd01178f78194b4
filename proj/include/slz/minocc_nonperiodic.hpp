#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "slz/prefix_rmq.hpp"
#include "slz/sync_set.hpp"
#include "slz/text_core.hpp"

namespace slz {

// Leftmost occurrences of patterns whose (3tau-1)-prefix is not tau-periodic. Samples
// are the sync positions in suffix order (A_S); sample i carries the 3tau symbols
// T^inf[s_i-tau .. s_i+2tau) reversed (A_str). A pattern P with distinguishing prefix D
// (up to 2tau past the next sync position) occurs at s_i - delta for exactly those
// samples whose suffix starts with P[delta+1..] and whose context ends with D.
class NonperiodicIndex {
 public:
  NonperiodicIndex() = default;
  static NonperiodicIndex build(const PackedText& t, const SuffixScaffold& sc, pos_t tau,
                                PrefixRmqKind kind = PrefixRmqKind::automatic);

  pos_t tau() const { return tau_; }
  const SyncSet& sync() const { return sync_; }
  std::size_t samples() const { return a_s_.size(); }
  // 1-based
  pos_t sample(std::size_t i) const { return static_cast<pos_t>(a_s_[i - 1]); }
  std::vector<sym_t> context(std::size_t i) const;
  std::size_t dist_prefix_count() const { return dist_.size(); }
  const PrefixRmqIndex& prefix_rmq() const { return prmq_; }

  // successor(S, j) - j for j outside R; ContractError otherwise.
  pos_t dist_offset(pos_t j) const;
  // D = T[j..successor(S, j)+2tau).
  std::vector<sym_t> dist_prefix(pos_t j) const;
  // Offset of the distinguishing prefix of an explicit pattern, or -1 when no prefix of
  // P is one.
  pos_t dist_offset_of(std::span<const sym_t> p) const;

  // (b, e): b samples sort below P', e - b have P' as a prefix.
  std::pair<pos_t, pos_t> suffix_range(pos_t j, pos_t len) const;
  std::pair<pos_t, pos_t> suffix_range(const PackedText& p, pos_t from) const;

  // Window T[j..j+len) with len >= 3tau-1 and j outside R.
  pos_t minocc_window(pos_t j, pos_t len) const;
  // Explicit pattern; NotFoundError when it does not occur.
  pos_t minocc_pattern(std::span<const sym_t> p) const;

  std::size_t memory_bytes() const;
  void save(std::string& out) const;
  static NonperiodicIndex load(std::string_view& in, const PackedText& t, PrefixRmqKind kind);

 private:
  template <class Cmp>
  std::pair<pos_t, pos_t> range_by(Cmp cmp) const;
  void finish(PrefixRmqKind kind);
  std::uint64_t key(std::span<const sym_t> d) const;

  const PackedText* text_ = nullptr;
  pos_t tau_ = 0;
  SyncSet sync_;
  std::vector<std::uint64_t> a_s_;
  std::vector<sym_t> a_str_;  // samples() x 3tau symbols
  PrefixRmqIndex prmq_;
  std::unordered_set<std::uint64_t> dist_;  // encode_padded(D, 3tau-1)
};

}  // namespace slz
