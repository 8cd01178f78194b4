#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slz {

using pos_t = std::int64_t;
using sym_t = std::uint32_t;

// Bit-packed string over [0, sigma). Positions are 1-based. When built with a
// sentinel the alphabet is extended by one and the symbol sigma-1 is appended.
class PackedText {
 public:
  PackedText() = default;

  pos_t n() const { return n_; }
  pos_t n_total() const { return n_ + (has_sentinel_ ? 1 : 0); }
  std::uint64_t sigma() const { return sigma_; }
  unsigned bits_per_symbol() const { return bps_; }
  bool has_sentinel() const { return has_sentinel_; }
  sym_t sentinel() const { return static_cast<sym_t>(sigma_ - 1); }
  unsigned symbols_per_word() const { return 64 / bps_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  sym_t operator[](pos_t i) const {
    std::uint64_t off = static_cast<std::uint64_t>(i - 1) * bps_;
    return static_cast<sym_t>(bits(off, bps_));
  }
  sym_t at(pos_t i) const;
  // T^inf: the text repeated in both directions, T^inf[i] = T[((i-1) mod n_total) + 1].
  sym_t cyclic(pos_t i) const;

  // Raw bit extraction, LSB-first layout; k <= 64.
  std::uint64_t bits(std::uint64_t off, unsigned k) const {
    std::uint64_t w = off >> 6, b = off & 63;
    std::uint64_t lo = words_[w] >> b;
    if (b != 0) lo |= words_[w + 1] << (64 - b);
    return k == 64 ? lo : (lo & ((std::uint64_t{1} << k) - 1));
  }
  // k symbols starting at i, first symbol in the lowest bits. k*bps <= 64.
  std::uint64_t lsb_window(pos_t i, unsigned k) const {
    return bits(static_cast<std::uint64_t>(i - 1) * bps_, k * bps_);
  }
  // k symbols starting at i, first symbol most significant: equal-length
  // windows compare like their strings.
  std::uint64_t msb_window(pos_t i, unsigned k) const;

  std::vector<sym_t> extract(pos_t i, pos_t len) const;
  std::vector<sym_t> unpack() const { return extract(1, n_total()); }

  std::size_t memory_bytes() const { return words_.size() * 8; }

  friend PackedText pack_text(std::span<const sym_t>, std::uint64_t, bool);
  friend PackedText pack_pattern(std::span<const sym_t>, const PackedText&);
  friend PackedText restore_text(pos_t, std::uint64_t, bool, std::vector<std::uint64_t>);

 private:
  pos_t n_ = 0;
  std::uint64_t sigma_ = 0;
  unsigned bps_ = 1;
  bool has_sentinel_ = false;
  std::vector<std::uint64_t> words_;  // one zero word of padding at the end
};

PackedText pack_text(std::span<const sym_t> symbols, std::uint64_t sigma, bool add_sentinel);
PackedText pack_bytes(std::string_view bytes, std::uint64_t sigma, bool add_sentinel);
// Packs P with the same symbol width and alphabet as `like`, no sentinel.
// Symbols must lie in the original alphabet of `like`.
PackedText pack_pattern(std::span<const sym_t> symbols, const PackedText& like);

// Inverse of words(): n symbols (sentinel excluded) over the original sigma.
PackedText restore_text(pos_t n, std::uint64_t sigma, bool has_sentinel, std::vector<std::uint64_t> words);

unsigned bits_for(std::uint64_t sigma);

// Longest common extension of T[i..] and T[j..], word at a time.
pos_t lce(const PackedText& t, pos_t i, pos_t j);
// LCE between T[i..] and U[j..] for two texts of equal symbol width, capped at limit.
pos_t lce2(const PackedText& t, pos_t i, const PackedText& u, pos_t j, pos_t limit);

// Smallest period of T[i..i+len).
pos_t period(const PackedText& t, pos_t i, pos_t len);
pos_t period_of(std::span<const sym_t> s);

struct SuffixScaffold {
  const PackedText* text = nullptr;
  std::vector<pos_t> sa;   // sa[1..n_total]; sa[0] unused
  std::vector<pos_t> isa;  // isa[1..n_total]; isa[0] unused

  pos_t size() const { return static_cast<pos_t>(sa.size()) - 1; }
  pos_t lce(pos_t i, pos_t j) const;
};

SuffixScaffold build_scaffold(const PackedText& t);
// Suffix array of an integer string (values < K) via induced sorting; 0-based output.
std::vector<std::int32_t> suffix_array(std::span<const std::int32_t> s, std::int32_t K);

// Three-way comparison of T[i..] against U[j..j+len): negative if the suffix
// is smaller, 0 if U[j..j+len) is a prefix of it, positive otherwise.
int compare_suffix(const PackedText& t, pos_t i, const PackedText& u, pos_t j, pos_t len);

// File formats: raw bytes, or "SLZ2" + u64 LE n + 2-bit packed payload.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);
std::vector<sym_t> decode_packed2(std::string_view data);
std::string encode_packed2(std::span<const sym_t> symbols);
bool is_packed2(std::string_view data);

}  // namespace slz
