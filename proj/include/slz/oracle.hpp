#pragma once

// Brute-force references. Everything here works on plain symbol vectors and
// restates definitions directly; nothing is shared with the indexed code.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slz/text_core.hpp"

namespace slz::oracle {

using Text = std::vector<sym_t>;  // 0-based storage; APIs use 1-based positions

// Leftmost occurrence of P in T (1-based), or nullopt.
std::optional<pos_t> minocc(const Text& t, const Text& p);
pos_t minocc_window(const Text& t, pos_t j, pos_t len);
std::vector<pos_t> occurrences(const Text& t, const Text& p);

struct LpfArrays {
  std::vector<pos_t> len;  // len[j-1] = LPF[j]
  std::vector<pos_t> src;  // leftmost occurrence, or the letter when len = 0
};
// O(n^2) diagonal sweep; `parallel` splits diagonals across OpenMP threads.
LpfArrays lpf(const Text& t, bool overlap, bool parallel = false);

struct Phrase {
  pos_t len = 0;  // 0 for a literal
  pos_t src = 0;  // symbol for a literal
  bool operator==(const Phrase&) const = default;
};
std::vector<Phrase> parse(const Text& t, bool overlap);

pos_t rmq(const std::vector<std::uint64_t>& a, pos_t b, pos_t e);
std::optional<pos_t> prefix_rmq(const std::vector<std::uint64_t>& a, const std::vector<Text>& s,
                                pos_t b, pos_t e, const Text& x);
std::optional<pos_t> tsrmq(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& bv,
                           pos_t b, pos_t e, std::uint64_t v);
std::uint64_t count_two_sided(const std::vector<std::uint64_t>& a, pos_t pos, std::uint64_t v);
std::uint64_t count_three_sided(const std::vector<std::uint64_t>& a, pos_t beg, pos_t end, std::uint64_t v);
unsigned __int128 encode_padded(const Text& x, pos_t m, std::uint64_t sigma);

std::vector<pos_t> suffix_array(const Text& t);  // 1-based values, comparison sort

// Periodicity structure of a sentinel-terminated text.
pos_t smallest_period(const Text& t, pos_t i, pos_t len);
bool in_R(const Text& t, pos_t tau, pos_t j);
pos_t run_end(const Text& t, pos_t tau, pos_t j);  // e(j) for j in R
int run_type(const Text& t, pos_t tau, pos_t j);   // -1 / +1 for j in R
// RMin- (sign=-1) or RMin+ (sign=+1) as a sorted position list.
std::vector<pos_t> rmin(const Text& t, pos_t tau, int sign);
// e_min for every run start of the given type: (start, e_min) pairs.
std::vector<std::pair<pos_t, pos_t>> emin(const Text& t, pos_t tau, int sign);

struct SyncReport {
  bool density = true;
  bool consistency = true;
  bool nonempty = true;
  bool reaches_end = true;
  bool size_ok = true;
  double size_constant = 0;  // |S| * tau / n
  std::string detail;
  bool ok() const { return density && consistency && nonempty && reaches_end && size_ok; }
};
SyncReport check_sync_set(const Text& t, pos_t tau, const std::vector<pos_t>& s);

// Suffix-array oracle for large texts: comparison-sorted SA and a sparse table
// over it. Independent of the library index.
class LargeOracle {
 public:
  explicit LargeOracle(const Text& t, bool parallel = false);
  pos_t minocc(const Text& p) const;  // 0 when absent
  pos_t minocc_window(pos_t j, pos_t len) const;
  std::pair<pos_t, pos_t> lpf_at(pos_t j, bool overlap) const;
  pos_t n() const { return static_cast<pos_t>(t_.size()); }

 private:
  std::pair<std::size_t, std::size_t> range(const sym_t* p, std::size_t len) const;
  pos_t range_min(std::size_t lo, std::size_t hi) const;
  Text t_;
  std::vector<std::uint32_t> sa_;  // 0-based suffix starts
  std::vector<std::vector<std::uint32_t>> sparse_;
};

// Batch helpers used by the verification sweeps; serial and OpenMP flavours.
std::vector<pos_t> batch_minocc(const LargeOracle& o, const std::vector<std::pair<pos_t, pos_t>>& q,
                                bool parallel);

}  // namespace slz::oracle
