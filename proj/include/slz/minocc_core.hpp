#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "slz/text_core.hpp"

namespace slz {

// Leftmost occurrences of all patterns shorter than 3tau-1 and periods of all
// (3tau-1)-windows. Dense mode (sigma^(6tau) <= 2^22) keeps flat arrays indexed by
// encode_padded and by the base-sigma window value; sparse mode keeps a hash map for
// the occurrences and checks periods directly.
class CoreTables {
 public:
  static constexpr std::uint64_t kDenseBudget = std::uint64_t{1} << 22;

  CoreTables() = default;
  static CoreTables build(const PackedText& t, pos_t tau);
  static bool dense_fits(std::uint64_t sigma, pos_t tau);

  pos_t tau() const { return tau_; }
  bool dense() const { return dense_; }
  // Longest pattern the tables cover, 3tau-2.
  pos_t max_len() const { return 3 * tau_ - 2; }
  std::size_t entries() const;

  // NotFoundError when P does not occur; ParamError unless 0 < |P| < 3tau-1.
  pos_t minocc_pattern(std::span<const sym_t> p) const;
  pos_t minocc_window(pos_t j, pos_t len) const;
  // per(P[1..3tau-1]) <= tau/3; ParamError if |P| < 3tau-1.
  bool is_periodic_pattern(std::span<const sym_t> p) const;
  // j in R(tau, T); false outside [1..n-3tau+2].
  bool is_periodic_window(pos_t j) const;
  // per(T[j..j+3tau-1)) when it is at most tau/3, else 0.
  pos_t window_period(pos_t j) const;

  std::size_t memory_bytes() const;
  void save(std::string& out) const;
  static CoreTables load(std::string_view& in, const PackedText& t);

 private:
  pos_t lookup(std::uint64_t key) const;
  std::uint64_t window_value(pos_t j) const;
  void fill_periods();

  const PackedText* text_ = nullptr;
  pos_t tau_ = 0;
  bool dense_ = false;
  std::uint32_t absent_ = 0;
  std::vector<std::uint32_t> flat_;                     // dense L_minocc
  std::unordered_map<std::uint64_t, std::uint32_t> map_;  // sparse L_minocc
  std::vector<std::uint8_t> per_;                        // dense per_table, 0 = above tau/3
};

}  // namespace slz
