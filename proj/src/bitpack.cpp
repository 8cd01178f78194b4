#include "slz/bitpack.hpp"

#include <algorithm>
#include <bit>

#include "slz/errors.hpp"

namespace slz {

namespace {

constexpr std::uint64_t kBlockBits = 512;
constexpr std::uint64_t kWordsPerBlock = 8;
constexpr std::uint64_t kHintStep = 512;

std::uint64_t select_in_word(std::uint64_t w, unsigned r) {  // r is 0-based
  for (unsigned byte = 0; byte < 8; ++byte) {
    unsigned c = std::popcount((w >> (8 * byte)) & 0xffu);
    if (r < c) {
      std::uint64_t x = (w >> (8 * byte)) & 0xffu;
      for (unsigned b = 0;; ++b, x >>= 1)
        if ((x & 1u) && r-- == 0) return 8 * byte + b;
    }
    r -= c;
  }
  return 64;
}

}  // namespace

Bitvector::Bitvector(std::uint64_t m, bool value) : m_(m), words_(m / 64 + 1, value ? ~0ull : 0ull) {
  if (value && (m & 63)) words_[m >> 6] = (1ull << (m & 63)) - 1;
  if (value && !(m & 63)) words_[m >> 6] = 0;
}

Bitvector Bitvector::from_string(std::string_view s) {
  Bitvector b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw InputError("bitvector literal must be 0/1");
    if (s[i] == '1') b.set(i + 1, true);
  }
  return b;
}

void Bitvector::set(std::uint64_t i, bool v) {
  std::uint64_t w = (i - 1) >> 6, b = (i - 1) & 63;
  if (v) words_[w] |= 1ull << b;
  else words_[w] &= ~(1ull << b);
  built_ = false;
}

void Bitvector::push_back(bool v) {
  if ((m_ >> 6) + 1 >= words_.size()) words_.push_back(0);
  if (words_.empty()) words_.push_back(0);
  ++m_;
  set(m_, v);
}

std::uint64_t Bitvector::raw_bits(std::uint64_t off) const {
  std::uint64_t w = off >> 6, b = off & 63;
  if (w >= words_.size()) return 0;
  std::uint64_t lo = words_[w] >> b;
  if (b != 0 && w + 1 < words_.size()) lo |= words_[w + 1] << (64 - b);
  return lo;
}

void Bitvector::append_range(const Bitvector& src, std::uint64_t from, std::uint64_t len) {
  if (len == 0) return;
  std::uint64_t new_m = m_ + len;
  words_.resize(new_m / 64 + 1, 0);
  std::uint64_t done = 0;
  while (done < len) {
    unsigned take = static_cast<unsigned>(std::min<std::uint64_t>(64, len - done));
    std::uint64_t v = src.raw_bits(from + done);
    if (take < 64) v &= (1ull << take) - 1;
    std::uint64_t off = m_ + done;
    std::uint64_t w = off >> 6, b = off & 63;
    words_[w] |= v << b;
    if (b != 0 && b + take > 64) words_[w + 1] |= v >> (64 - b);
    done += take;
  }
  m_ = new_m;
  built_ = false;
}

void Bitvector::append_fill(bool v, std::uint64_t len) {
  if (!v) {
    m_ += len;
    words_.resize(m_ / 64 + 1, 0);
    built_ = false;
    return;
  }
  Bitvector ones(64, true);
  while (len > 0) {
    std::uint64_t t = std::min<std::uint64_t>(64, len);
    append_range(ones, 0, t);
    len -= t;
  }
}

std::uint64_t Bitvector::ones() const {
  if (built_) return ones_;
  std::uint64_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

void Bitvector::build_directories() {
  std::uint64_t nblocks = m_ / kBlockBits + 1;
  super_.assign(nblocks, 0);
  sub_.assign(nblocks, 0);
  hint1_.clear();
  hint0_.clear();
  std::uint64_t total = 0;
  for (std::uint64_t blk = 0; blk < nblocks; ++blk) {
    super_[blk] = total;
    std::uint64_t inner = 0, packed = 0;
    for (std::uint64_t k = 0; k < kWordsPerBlock; ++k) {
      std::uint64_t w = blk * kWordsPerBlock + k;
      if (k > 0) packed |= inner << (9 * (k - 1));
      if (w < words_.size()) inner += std::popcount(words_[w]);
    }
    sub_[blk] = packed;
    total += inner;
  }
  ones_ = total;
  // Hints: block containing the (k*512+1)-th one / zero.
  std::uint64_t zeros_total = m_ - ones_;
  for (std::uint64_t r = 1; r <= ones_; r += kHintStep) {
    std::uint64_t lo = 0, hi = nblocks - 1;
    while (lo < hi) {
      std::uint64_t mid = (lo + hi + 1) / 2;
      if (super_[mid] < r) lo = mid; else hi = mid - 1;
    }
    hint1_.push_back(static_cast<std::uint32_t>(lo));
  }
  for (std::uint64_t r = 1; r <= zeros_total; r += kHintStep) {
    std::uint64_t lo = 0, hi = nblocks - 1;
    while (lo < hi) {
      std::uint64_t mid = (lo + hi + 1) / 2;
      if (mid * kBlockBits - super_[mid] < r) lo = mid; else hi = mid - 1;
    }
    hint0_.push_back(static_cast<std::uint32_t>(lo));
  }
  built_ = true;
}

std::uint64_t Bitvector::rank1(std::uint64_t j) const {
  if (!built_) throw ContractError("rank on bitvector without directories");
  if (j > m_) throw ParamError("rank position out of range");
  if (j == 0) return 0;
  std::uint64_t blk = j / kBlockBits;
  std::uint64_t w = j >> 6;
  std::uint64_t k = w - blk * kWordsPerBlock;
  std::uint64_t r = super_[blk];
  if (k > 0) r += (sub_[blk] >> (9 * (k - 1))) & 0x1ff;
  if (j & 63) r += std::popcount(words_[w] & ((1ull << (j & 63)) - 1));
  return r;
}

std::uint64_t Bitvector::select_impl(std::uint64_t r, bool one) const {
  if (!built_) throw ContractError("select on bitvector without directories");
  std::uint64_t avail = one ? ones_ : m_ - ones_;
  if (r == 0 || r > avail) throw QueryError("select rank out of range");
  const auto& hint = one ? hint1_ : hint0_;
  auto before = [&](std::uint64_t blk) { return one ? super_[blk] : blk * kBlockBits - super_[blk]; };
  std::uint64_t h = (r - 1) / kHintStep;
  std::uint64_t lo = hint[h];
  std::uint64_t hi = (h + 1 < hint.size()) ? hint[h + 1] : super_.size() - 1;
  while (lo < hi) {
    std::uint64_t mid = (lo + hi + 1) / 2;
    if (before(mid) < r) lo = mid; else hi = mid - 1;
  }
  std::uint64_t rem = r - before(lo);
  for (std::uint64_t k = 0; k < kWordsPerBlock; ++k) {
    std::uint64_t wi = lo * kWordsPerBlock + k;
    std::uint64_t w = wi < words_.size() ? words_[wi] : 0;
    if (!one) {
      w = ~w;
      std::uint64_t base = wi * 64;
      if (base + 64 > m_) w &= (m_ > base) ? ((m_ - base) >= 64 ? ~0ull : ((1ull << (m_ - base)) - 1)) : 0;
    }
    std::uint64_t c = std::popcount(w);
    if (rem <= c) return wi * 64 + select_in_word(w, static_cast<unsigned>(rem - 1)) + 1;
    rem -= c;
  }
  throw ConstructionError("select directory inconsistent");
}

std::uint64_t Bitvector::select1(std::uint64_t r) const { return select_impl(r, true); }
std::uint64_t Bitvector::select0(std::uint64_t r) const { return select_impl(r, false); }

std::string Bitvector::to_string() const {
  std::string s(m_, '0');
  for (std::uint64_t i = 1; i <= m_; ++i)
    if (get(i)) s[i - 1] = '1';
  return s;
}

std::size_t Bitvector::memory_bytes() const {
  return words_.size() * 8 + super_.size() * 8 + sub_.size() * 8 + (hint0_.size() + hint1_.size()) * 4;
}

bool Bitvector::operator==(const Bitvector& o) const {
  if (m_ != o.m_) return false;
  for (std::uint64_t off = 0; off < m_; off += 64) {
    std::uint64_t take = std::min<std::uint64_t>(64, m_ - off);
    std::uint64_t mask = take == 64 ? ~0ull : ((1ull << take) - 1);
    if ((raw_bits(off) & mask) != (o.raw_bits(off) & mask)) return false;
  }
  return true;
}

void Bitvector::save(std::string& out) const {
  put_u64(out, m_);
  std::vector<std::uint64_t> w(words_.begin(), words_.begin() + (m_ + 63) / 64);
  put_u64s(out, w);
}

Bitvector Bitvector::load(std::string_view& in) {
  Bitvector b;
  b.m_ = get_u64(in);
  b.words_ = get_u64s(in);
  if (b.words_.size() != (b.m_ + 63) / 64) throw FormatError("bitvector payload size mismatch");
  b.words_.push_back(0);
  b.build_directories();
  return b;
}

std::uint64_t succ_one(const Bitvector& b, std::uint64_t i, std::uint64_t j) {
  if (i > j || j > b.size()) throw ParamError("succ_one range out of bounds");
  std::uint64_t off = i;  // 0-based offset of bit i+1
  while (off < j) {
    std::uint64_t w = b.raw_bits(off);
    if (w != 0) {
      std::uint64_t t = off + std::countr_zero(w) + 1;
      return t <= j ? t : j + 1;
    }
    off += 64;
  }
  return j + 1;
}

Bitvector repeat(const Bitvector& b, std::uint64_t k) {
  Bitvector out;
  if (k == 0 || b.size() == 0) return out;
  const std::uint64_t total = b.size() * k;
  out.append(b);
  while (out.size() < total) {
    std::uint64_t take = std::min(out.size(), total - out.size());
    Bitvector copy = out;
    out.append_range(copy, 0, take);
  }
  return out;
}

Bitvector delete_positions(const Bitvector& b, std::span<const std::uint64_t> positions) {
  std::uint64_t prev = 0;
  for (auto p : positions) {
    if (p <= prev || p > b.size()) throw ParamError("delete positions must be strictly increasing and in range");
    prev = p;
  }
  Bitvector out;
  std::uint64_t cur = 0;  // bits [1..cur] consumed
  for (auto p : positions) {
    out.append_range(b, cur, p - 1 - cur);
    cur = p;
  }
  out.append_range(b, cur, b.size() - cur);
  return out;
}

Bitvector insert_pairs(const Bitvector& b, std::span<const std::pair<std::uint64_t, bool>> pairs) {
  const std::uint64_t total = b.size() + pairs.size();
  std::uint64_t prev = 0;
  for (auto& [p, c] : pairs) {
    if (p <= prev || p > total) throw ParamError("insert positions must be strictly increasing and within m+k");
    prev = p;
  }
  Bitvector out;
  std::uint64_t src = 0;
  for (auto& [p, c] : pairs) {
    std::uint64_t gap = p - 1 - out.size();
    out.append_range(b, src, gap);
    src += gap;
    out.push_back(c);
  }
  out.append_range(b, src, b.size() - src);
  return out;
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

std::uint64_t get_u64(std::string_view& in) {
  if (in.size() < 8) throw FormatError("unexpected end of data");
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= std::uint64_t{static_cast<unsigned char>(in[b])} << (8 * b);
  in.remove_prefix(8);
  return v;
}

void put_u64s(std::string& out, std::span<const std::uint64_t> v) {
  put_u64(out, v.size());
  for (auto x : v) put_u64(out, x);
}

std::vector<std::uint64_t> get_u64s(std::string_view& in) {
  std::uint64_t n = get_u64(in);
  if (n > in.size() / 8) throw FormatError("array length exceeds data");
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) x = get_u64(in);
  return v;
}

void put_i64s(std::string& out, std::span<const std::int64_t> v) {
  put_u64(out, v.size());
  for (auto x : v) put_u64(out, static_cast<std::uint64_t>(x));
}

std::vector<std::int64_t> get_i64s(std::string_view& in) {
  std::uint64_t n = get_u64(in);
  if (n > in.size() / 8) throw FormatError("array length exceeds data");
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = static_cast<std::int64_t>(get_u64(in));
  return v;
}

}  // namespace slz
