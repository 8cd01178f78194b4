#include "slz/text_core.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "slz/errors.hpp"

namespace slz {

unsigned bits_for(std::uint64_t sigma) {
  if (sigma <= 2) return 1;
  return static_cast<unsigned>(std::bit_width(sigma - 1));
}

PackedText pack_text(std::span<const sym_t> symbols, std::uint64_t sigma, bool add_sentinel) {
  if (sigma < 2) throw ParamError("sigma must be at least 2");
  for (sym_t c : symbols)
    if (c >= sigma) throw InputError("symbol " + std::to_string(c) + " outside alphabet of size " + std::to_string(sigma));
  PackedText t;
  t.n_ = static_cast<pos_t>(symbols.size());
  t.has_sentinel_ = add_sentinel;
  t.sigma_ = add_sentinel ? sigma + 1 : sigma;
  t.bps_ = bits_for(t.sigma_);
  std::uint64_t total = static_cast<std::uint64_t>(t.n_total()) * t.bps_;
  t.words_.assign(total / 64 + 2, 0);
  std::uint64_t off = 0;
  auto put = [&](std::uint64_t v) {
    std::uint64_t w = off >> 6, b = off & 63;
    t.words_[w] |= v << b;
    if (b + t.bps_ > 64) t.words_[w + 1] |= v >> (64 - b);
    off += t.bps_;
  };
  for (sym_t c : symbols) put(c);
  if (add_sentinel) put(sigma);
  return t;
}

PackedText restore_text(pos_t n, std::uint64_t sigma, bool has_sentinel, std::vector<std::uint64_t> words) {
  PackedText t;
  t.n_ = n;
  t.has_sentinel_ = has_sentinel;
  t.sigma_ = has_sentinel ? sigma + 1 : sigma;
  t.bps_ = bits_for(t.sigma_);
  std::uint64_t total = static_cast<std::uint64_t>(t.n_total()) * t.bps_;
  if (words.size() != total / 64 + 2) throw FormatError("packed text: word count does not match n");
  t.words_ = std::move(words);
  for (pos_t i = 1; i <= t.n_total(); ++i)
    if (t[i] >= t.sigma_) throw FormatError("packed text: symbol outside the alphabet");
  if (has_sentinel && t[t.n_total()] != t.sentinel()) throw FormatError("packed text: missing sentinel");
  return t;
}

PackedText pack_bytes(std::string_view bytes, std::uint64_t sigma, bool add_sentinel) {
  std::vector<sym_t> s(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) s[i] = static_cast<unsigned char>(bytes[i]);
  return pack_text(s, sigma, add_sentinel);
}

PackedText pack_pattern(std::span<const sym_t> symbols, const PackedText& like) {
  std::uint64_t limit = like.has_sentinel() ? like.sigma() - 1 : like.sigma();
  for (sym_t c : symbols)
    if (c >= limit) throw InputError("pattern symbol outside alphabet");
  PackedText p;
  p.n_ = static_cast<pos_t>(symbols.size());
  p.has_sentinel_ = false;
  p.sigma_ = like.sigma();
  p.bps_ = like.bits_per_symbol();
  std::uint64_t total = static_cast<std::uint64_t>(p.n_) * p.bps_;
  p.words_.assign(total / 64 + 2, 0);
  std::uint64_t off = 0;
  for (sym_t c : symbols) {
    std::uint64_t w = off >> 6, b = off & 63;
    p.words_[w] |= std::uint64_t{c} << b;
    if (b + p.bps_ > 64) p.words_[w + 1] |= std::uint64_t{c} >> (64 - b);
    off += p.bps_;
  }
  return p;
}

sym_t PackedText::at(pos_t i) const {
  if (i < 1 || i > n_total()) throw ParamError("position out of range");
  return (*this)[i];
}

sym_t PackedText::cyclic(pos_t i) const {
  pos_t m = n_total();
  pos_t r = ((i - 1) % m + m) % m;
  return (*this)[r + 1];
}

std::uint64_t PackedText::msb_window(pos_t i, unsigned k) const {
  std::uint64_t v = 0;
  for (unsigned t = 0; t < k; ++t) v = (v << bps_) | (*this)[i + t];
  return v;
}

std::vector<sym_t> PackedText::extract(pos_t i, pos_t len) const {
  std::vector<sym_t> out(static_cast<std::size_t>(len));
  for (pos_t t = 0; t < len; ++t) out[t] = (*this)[i + t];
  return out;
}

pos_t lce2(const PackedText& t, pos_t i, const PackedText& u, pos_t j, pos_t limit) {
  const unsigned bps = t.bits_per_symbol();
  limit = std::min({limit, t.n_total() - i + 1, u.n_total() - j + 1});
  if (limit <= 0) return 0;
  const unsigned per = 64 / bps;
  const unsigned chunk_bits = per * bps;
  std::uint64_t oi = static_cast<std::uint64_t>(i - 1) * bps;
  std::uint64_t oj = static_cast<std::uint64_t>(j - 1) * bps;
  pos_t done = 0;
  while (done < limit) {
    std::uint64_t x = t.bits(oi, chunk_bits) ^ u.bits(oj, chunk_bits);
    if (x != 0) {
      pos_t k = std::countr_zero(x) / bps;
      return std::min(limit, done + k);
    }
    done += per;
    oi += chunk_bits;
    oj += chunk_bits;
  }
  return limit;
}

pos_t lce(const PackedText& t, pos_t i, pos_t j) {
  if (i < 1 || j < 1 || i > t.n_total() || j > t.n_total()) throw ParamError("lce position out of range");
  if (i == j) return t.n_total() - i + 1;
  return lce2(t, i, t, j, t.n_total());
}

pos_t period_of(std::span<const sym_t> s) {
  const std::size_t m = s.size();
  if (m == 0) return 0;
  std::vector<std::size_t> fail(m, 0);
  for (std::size_t q = 1, k = 0; q < m; ++q) {
    while (k > 0 && s[q] != s[k]) k = fail[k - 1];
    if (s[q] == s[k]) ++k;
    fail[q] = k;
  }
  return static_cast<pos_t>(m - fail[m - 1]);
}

pos_t period(const PackedText& t, pos_t i, pos_t len) {
  if (len < 1 || i < 1 || i + len > t.n_total() + 1) throw ParamError("period window out of range");
  auto s = t.extract(i, len);
  return period_of(s);
}

int compare_suffix(const PackedText& t, pos_t i, const PackedText& u, pos_t j, pos_t len) {
  pos_t l = lce2(t, i, u, j, len);
  if (l >= len) return 0;
  if (i + l > t.n_total()) return -1;
  return t[i + l] < u[j + l] ? -1 : 1;
}

// ---------------------------------------------------------------------------
// Induced sorting. Expects s[n-1] == 0 to be the unique smallest symbol.

namespace {

using i32 = std::int32_t;

void sais_rec(const i32* s, i32* sa, i32 n, i32 K) {
  std::vector<std::uint8_t> t(n);  // 1 = S-type
  t[n - 1] = 1;
  for (i32 i = n - 2; i >= 0; --i)
    t[i] = (s[i] < s[i + 1] || (s[i] == s[i + 1] && t[i + 1])) ? 1 : 0;
  auto lms = [&](i32 i) { return i > 0 && t[i] && !t[i - 1]; };
  std::vector<i32> bkt(K + 1);
  auto buckets = [&](bool end) {
    std::fill(bkt.begin(), bkt.end(), 0);
    for (i32 i = 0; i < n; ++i) ++bkt[s[i]];
    i32 sum = 0;
    for (i32 c = 0; c <= K; ++c) {
      sum += bkt[c];
      bkt[c] = end ? sum : sum - bkt[c];
    }
  };
  auto induce = [&]() {
    buckets(false);
    for (i32 i = 0; i < n; ++i) {
      i32 j = sa[i] - 1;
      if (j >= 0 && !t[j]) sa[bkt[s[j]]++] = j;
    }
    buckets(true);
    for (i32 i = n - 1; i >= 0; --i) {
      i32 j = sa[i] - 1;
      if (j >= 0 && t[j]) sa[--bkt[s[j]]] = j;
    }
  };

  buckets(true);
  std::fill(sa, sa + n, -1);
  for (i32 i = 1; i < n; ++i)
    if (lms(i)) sa[--bkt[s[i]]] = i;
  induce();

  i32 n1 = 0;
  for (i32 i = 0; i < n; ++i)
    if (lms(sa[i])) sa[n1++] = sa[i];
  std::fill(sa + n1, sa + n, -1);
  i32 name = 0, prev = -1;
  for (i32 i = 0; i < n1; ++i) {
    i32 pos = sa[i];
    bool diff = false;
    for (i32 d = 0; d < n; ++d) {
      if (prev == -1 || s[pos + d] != s[prev + d] || t[pos + d] != t[prev + d]) {
        diff = true;
        break;
      }
      if (d > 0 && (lms(pos + d) || lms(prev + d))) break;
    }
    if (diff) {
      ++name;
      prev = pos;
    }
    sa[n1 + pos / 2] = name - 1;
  }
  for (i32 i = n - 1, j = n - 1; i >= n1; --i)
    if (sa[i] >= 0) sa[j--] = sa[i];

  i32* s1 = sa + n - n1;
  i32* sa1 = sa;
  if (name < n1) {
    sais_rec(s1, sa1, n1, name - 1);
  } else {
    for (i32 i = 0; i < n1; ++i) sa1[s1[i]] = i;
  }

  buckets(true);
  for (i32 i = 1, j = 0; i < n; ++i)
    if (lms(i)) s1[j++] = i;
  for (i32 i = 0; i < n1; ++i) sa1[i] = s1[sa1[i]];
  std::fill(sa + n1, sa + n, -1);
  for (i32 i = n1 - 1; i >= 0; --i) {
    i32 j = sa[i];
    sa[i] = -1;
    sa[--bkt[s[j]]] = j;
  }
  induce();
}

}  // namespace

std::vector<std::int32_t> suffix_array(std::span<const std::int32_t> s, std::int32_t K) {
  const i32 n = static_cast<i32>(s.size());
  if (n == 0) return {};
  // Shift symbols up by one and append a virtual terminator 0.
  std::vector<i32> buf(n + 1);
  for (i32 i = 0; i < n; ++i) buf[i] = s[i] + 1;
  buf[n] = 0;
  std::vector<i32> sa(n + 1);
  sais_rec(buf.data(), sa.data(), n + 1, K + 1);
  return std::vector<i32>(sa.begin() + 1, sa.end());
}

SuffixScaffold build_scaffold(const PackedText& t) {
  if (!t.has_sentinel()) throw ContractError("suffix scaffold requires a sentinel-terminated text");
  const pos_t m = t.n_total();
  std::vector<i32> s(m);
  for (pos_t i = 1; i <= m; ++i) s[i - 1] = static_cast<i32>(t[i]);
  auto sa0 = suffix_array(s, static_cast<i32>(t.sigma()));
  SuffixScaffold sc;
  sc.text = &t;
  sc.sa.assign(m + 1, 0);
  sc.isa.assign(m + 1, 0);
  for (pos_t r = 1; r <= m; ++r) {
    sc.sa[r] = sa0[r - 1] + 1;
    sc.isa[sc.sa[r]] = r;
  }
#ifndef NDEBUG
  for (pos_t r = 1; r < m; ++r) {
    pos_t a = sc.sa[r], b = sc.sa[r + 1];
    pos_t l = lce(t, a, b);
    if (!(a + l <= m && b + l <= m && t[a + l] < t[b + l]))
      throw ConstructionError("suffix array not sorted");
  }
#endif
  return sc;
}

pos_t SuffixScaffold::lce(pos_t i, pos_t j) const { return slz::lce(*text, i, j); }

// ---------------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return std::move(ss).str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed: " + path);
}

bool is_packed2(std::string_view data) { return data.size() >= 12 && data.substr(0, 4) == "SLZ2"; }

std::vector<sym_t> decode_packed2(std::string_view data) {
  if (!is_packed2(data)) throw FormatError("missing SLZ2 header");
  std::uint64_t n = 0;
  for (int b = 0; b < 8; ++b) n |= std::uint64_t{static_cast<unsigned char>(data[4 + b])} << (8 * b);
  std::size_t need = 12 + (n + 3) / 4;
  if (data.size() < need) throw FormatError("truncated SLZ2 payload");
  std::vector<sym_t> out(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    unsigned char byte = static_cast<unsigned char>(data[12 + i / 4]);
    out[i] = (byte >> (2 * (i % 4))) & 3u;
  }
  return out;
}

std::string encode_packed2(std::span<const sym_t> symbols) {
  std::string out = "SLZ2";
  std::uint64_t n = symbols.size();
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((n >> (8 * b)) & 0xff));
  std::string payload((n + 3) / 4, '\0');
  for (std::uint64_t i = 0; i < n; ++i) {
    if (symbols[i] > 3) throw InputError("symbol does not fit in 2 bits");
    payload[i / 4] = static_cast<char>(static_cast<unsigned char>(payload[i / 4]) | (symbols[i] << (2 * (i % 4))));
  }
  return out + payload;
}

}  // namespace slz
