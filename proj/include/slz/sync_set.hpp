#pragma once

#include <cstdint>
#include <vector>

#include "slz/bitpack.hpp"
#include "slz/text_core.hpp"

namespace slz {

// Smallest p in [1..pmax] with per(T[i..i+len)) = p, or 0 if the period exceeds pmax.
pos_t period_at_most(const PackedText& t, pos_t i, pos_t len, pos_t pmax);

// j in R(tau, T): j <= n - 3tau + 2 and per(T[j..j+3tau-1)) <= tau/3, with n = n_total.
bool in_R(const PackedText& t, pos_t tau, pos_t j);

// tau-synchronizing set over a sentinel-terminated text. A position j in [1..n-2tau+1]
// is sampled when the smallest id among the windows T[k..k+tau), k in [j..j+tau], is
// finite and sits at k = j or k = j + tau; a window's id is its lexicographic rank, or
// infinite when its period is at most tau/3.
class SyncSet {
 public:
  SyncSet() = default;

  static SyncSet build(const PackedText& t, const SuffixScaffold& sc, pos_t tau);
  // Rebuild from stored positions (deserialization); lex order from the scaffold ISA.
  static SyncSet from_positions(const PackedText& t, const SuffixScaffold& sc, pos_t tau, std::vector<pos_t> s);
  // Rebuild from stored positions and their stored lex order.
  static SyncSet from_parts(pos_t n, pos_t tau, std::vector<pos_t> s, std::vector<pos_t> lex);

  pos_t tau() const { return tau_; }
  pos_t text_length() const { return n_; }
  const std::vector<pos_t>& positions() const { return pos_; }
  const std::vector<pos_t>& lex_sorted() const { return lex_; }
  std::size_t size() const { return pos_.size(); }
  bool contains(pos_t j) const { return j >= 1 && j <= n_ && member_.get(static_cast<std::uint64_t>(j)); }
  // min{s in S : s >= j}; ContractError unless it exists and lies within [j..j+tau).
  pos_t successor(pos_t j) const;
  // Same without the distance requirement; 0 if none.
  pos_t next(pos_t j) const;

  // Definitional check of density, consistency, nonemptiness and the end condition.
  // Throws ConstructionError naming the first violated property.
  void verify(const PackedText& t, const SuffixScaffold& sc) const;
  std::size_t memory_bytes() const;

 private:
  pos_t tau_ = 0;
  pos_t n_ = 0;
  std::vector<pos_t> pos_;
  std::vector<pos_t> lex_;
  Bitvector member_;
};

}  // namespace slz
