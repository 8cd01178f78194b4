#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slz/text_core.hpp"

namespace slz {

// One maximal block [a..e-3tau+1] of R(tau, T). T[a..e) = H'H^kH'' with H the minimal
// rotation of the period (the root), H' its suffix of length s (the head) and
// |H''| = e - efull < p (the tail).
struct Run {
  pos_t a = 0, e = 0, efull = 0;
  pos_t p = 0;
  pos_t s = 0;  // head of a
  std::uint32_t root = 0;
  int type = -1;

  pos_t last(pos_t tau) const { return e - 3 * tau + 1; }
  pos_t tail() const { return e - efull; }
  pos_t full_len() const { return efull - a; }
  pos_t exponent() const { return (efull - a - s) / p; }
  // Head of any j in the block.
  pos_t head(pos_t j) const { return (efull - j) % p; }
};

struct Root {
  pos_t pos = 0;  // one occurrence in T
  pos_t p = 0;
};

class RunsTable {
 public:
  RunsTable() = default;
  static RunsTable build(const PackedText& t, const SuffixScaffold& sc, pos_t tau);

  pos_t tau() const { return tau_; }
  const std::vector<Run>& runs() const { return runs_; }  // by start
  const std::vector<Root>& roots() const { return roots_; }  // lexicographic
  // Run indices of one type ordered by (root, T[efull..]).
  const std::vector<std::uint32_t>& lex(int type) const { return type < 0 ? lex_minus_ : lex_plus_; }
  // [lo, hi) of `lex(type)` holding the runs with the given root.
  std::pair<std::size_t, std::size_t> root_range(int type, std::uint32_t root) const;

  // Index of the run whose block contains j, or -1.
  std::int64_t find(pos_t j) const;
  // Root id of the string H, or -1.
  std::int64_t root_id(std::span<const sym_t> h) const;
  std::vector<sym_t> root_string(std::uint32_t id) const;

  // Run-count and run-length sums for the |R'| <= 2n/tau and sum(e(j) - j) <= 2n bounds.
  std::uint64_t total_extent() const;

  std::size_t memory_bytes() const;
  void save(std::string& out) const;
  static RunsTable load(std::string_view& in, const PackedText& t);

 private:
  void index_roots();
  void complete(Run& r) const;
  void fill_starts();

  const PackedText* text_ = nullptr;
  pos_t tau_ = 0;
  std::vector<Run> runs_;
  std::vector<Root> roots_;
  std::vector<std::uint32_t> lex_minus_, lex_plus_;
  std::vector<std::size_t> start_minus_, start_plus_;  // per root, into lex lists
  std::map<std::vector<sym_t>, std::uint32_t> root_of_;
};

// Smallest t in [0, p) with H[t..] H[..t) minimal among the rotations of H.
pos_t min_rotation(std::span<const sym_t> h);

}  // namespace slz
