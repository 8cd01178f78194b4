#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slz/lpf.hpp"
#include "slz/minocc_index.hpp"
#include "slz/text_core.hpp"

namespace slz {

enum class Variant { overlap, nonoverlap };
enum class Engine { indexed, oracle };

struct Phrase {
  pos_t len = 0;  // 0: literal
  pos_t src = 0;  // source position, or the symbol for a literal
  bool literal() const { return len == 0; }
  bool operator==(const Phrase&) const = default;
};

struct Factorization {
  Variant variant = Variant::overlap;
  pos_t n = 0;
  std::vector<Phrase> phrases;
  std::size_t size() const { return phrases.size(); }
};

// Greedy parse of T[1..n] from an LPF/LPnF index; the variant follows the index.
Factorization factorize(const LpfIndex& lpf);
Factorization factorize(std::span<const sym_t> text, std::uint64_t sigma, Variant v,
                        Engine engine = Engine::indexed, const MinOccConfig& cfg = {});

// FormatError on copies that reach forward, overrun n, or break the variant.
std::vector<sym_t> decode(const Factorization& f, std::uint64_t sigma);

struct BoundReport {
  pos_t n = 0;
  std::size_t z = 0;
  double log_sigma_n = 0;
  double ratio = 0;  // z * log_sigma(n) / n
};
BoundReport phrase_count_bound(const Factorization& f, std::uint64_t sigma);

// TSV: "L\t<sym>" or "C\t<len>\t<src>" per line. Printable ASCII other than '#' is
// written as itself, anything else as "#<decimal>".
std::string format_symbol(sym_t c);
std::string to_tsv(const Factorization& f);
Factorization from_tsv(std::string_view data, Variant v);

// "SLZ77v1", u64 n, u64 z, then u64 len per phrase followed by u64 symbol (len 0)
// or u64 src; all little-endian.
std::string to_binary(const Factorization& f);
Factorization from_binary(std::string_view data, Variant v);

}  // namespace slz
