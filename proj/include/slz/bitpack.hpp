#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slz {

// Plain bitvector, 1-based bit positions. rank/select need build_directories()
// after the last modification.
class Bitvector {
 public:
  Bitvector() = default;
  explicit Bitvector(std::uint64_t m, bool value = false);
  static Bitvector from_string(std::string_view s);

  std::uint64_t size() const { return m_; }
  bool empty() const { return m_ == 0; }
  bool get(std::uint64_t i) const { return (words_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1u; }
  bool operator[](std::uint64_t i) const { return get(i); }
  void set(std::uint64_t i, bool v);
  void push_back(bool v);
  // Appends src[from+1 .. from+len] (1-based) word at a time.
  void append_range(const Bitvector& src, std::uint64_t from, std::uint64_t len);
  void append(const Bitvector& src) { append_range(src, 0, src.size()); }
  void append_fill(bool v, std::uint64_t len);

  // 64 raw bits starting at 0-based offset off (zero padded past the end).
  std::uint64_t raw_bits(std::uint64_t off) const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  void build_directories();
  bool has_directories() const { return built_; }
  std::uint64_t ones() const;  // popcount scan until the directories exist
  std::uint64_t rank1(std::uint64_t j) const;
  std::uint64_t rank0(std::uint64_t j) const { return j - rank1(j); }
  std::uint64_t select1(std::uint64_t r) const;
  std::uint64_t select0(std::uint64_t r) const;

  std::string to_string() const;
  std::size_t memory_bytes() const;
  bool operator==(const Bitvector& o) const;

  // Serialization helpers (payload only; directories are rebuilt).
  void save(std::string& out) const;
  static Bitvector load(std::string_view& in);

 private:
  std::uint64_t select_impl(std::uint64_t r, bool one) const;

  std::uint64_t m_ = 0;
  std::vector<std::uint64_t> words_;
  bool built_ = false;
  std::uint64_t ones_ = 0;
  std::vector<std::uint64_t> super_;      // absolute rank before each 512-bit block
  std::vector<std::uint64_t> sub_;        // 7 x 9-bit in-block word offsets
  std::vector<std::uint32_t> hint1_;      // block of every 512th one
  std::vector<std::uint32_t> hint0_;      // block of every 512th zero
};

// min{t in (i..j] : B[t] = 1}, or j+1 when there is none.
std::uint64_t succ_one(const Bitvector& b, std::uint64_t i, std::uint64_t j);
// B repeated k times (k = 0 gives the empty bitvector).
Bitvector repeat(const Bitvector& b, std::uint64_t k);
// Removes the listed 1-based positions (strictly increasing).
Bitvector delete_positions(const Bitvector& b, std::span<const std::uint64_t> positions);
// Result S' with S'[p_i] = c_i such that deleting {p_i} gives back B.
Bitvector insert_pairs(const Bitvector& b, std::span<const std::pair<std::uint64_t, bool>> pairs);

// Minimal little-endian writer/reader shared by the serializers.
void put_u64(std::string& out, std::uint64_t v);
std::uint64_t get_u64(std::string_view& in);
void put_u64s(std::string& out, std::span<const std::uint64_t> v);
std::vector<std::uint64_t> get_u64s(std::string_view& in);
void put_i64s(std::string& out, std::span<const std::int64_t> v);
std::vector<std::int64_t> get_i64s(std::string_view& in);

}  // namespace slz
