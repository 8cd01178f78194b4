#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "slz/bitpack.hpp"
#include "slz/text_core.hpp"

namespace slz {

// Base-sigma value of X . 0^(2m-2|X|) . (sigma-1)^|X|. Order preserving for strings
// of length <= m, proper prefixes first. ParamError if |X| > m or sigma^(2m) overflows.
std::uint64_t encode_padded(std::span<const sym_t> x, pos_t m, std::uint64_t sigma);
std::uint64_t encode_padded(const PackedText& t, pos_t j, pos_t len, pos_t m);
bool padded_fits(pos_t m, std::uint64_t sigma);

struct TwoSidedQuery {
  pos_t pos = 0;
  std::uint64_t val = 0;
};
struct ThreeSidedQuery {
  pos_t beg = 0;
  pos_t end = 0;
  std::uint64_t val = 0;
};

// Level decomposition: P_k lists positions with A[j] >= k*y (y = 64); level k keeps,
// for every member, 64 threshold bits (bit t set iff A[j] >= k*y + t) stored bit-major
// so one rank answers a whole level.
class OfflineCountEngine {
 public:
  static constexpr std::uint64_t kY = 64;

  explicit OfflineCountEngine(std::span<const std::uint64_t> a);

  std::vector<std::uint64_t> two_sided(std::span<const TwoSidedQuery> q) const;
  std::vector<std::uint64_t> three_sided(std::span<const ThreeSidedQuery> q) const;

  std::size_t levels() const { return pos_.size(); }
  const std::vector<std::uint32_t>& level_positions(std::size_t k) const { return pos_[k]; }
  std::uint64_t total_level_size() const;
  // {j : A[j] >= v}, rebuilt from the level bits alone.
  std::vector<pos_t> reconstruct(std::uint64_t v) const;

 private:
  std::uint64_t m_ = 0;
  std::vector<std::vector<std::uint32_t>> pos_;  // 1-based positions per level
  std::vector<Bitvector> bits_;                  // 64 rows of |P_k| bits each
};

std::vector<std::uint64_t> count_two_sided(std::span<const std::uint64_t> a, std::span<const TwoSidedQuery> q);
std::vector<std::uint64_t> count_three_sided(std::span<const std::uint64_t> a, std::span<const ThreeSidedQuery> q);

}  // namespace slz
