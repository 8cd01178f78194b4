#include "slz/lz77.hpp"

#include <charconv>
#include <cmath>

#include "slz/bitpack.hpp"
#include "slz/errors.hpp"
#include "slz/oracle.hpp"

namespace slz {

namespace {

constexpr std::string_view kBinMagic = "SLZ77v1";

pos_t parse_int(std::string_view s) {
  pos_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw FormatError("phrase file: bad number '" + std::string(s) + "'");
  return v;
}

sym_t parse_symbol(std::string_view s) {
  if (s.size() == 1 && s[0] != '#') return static_cast<unsigned char>(s[0]);
  if (s.size() >= 2 && s[0] == '#') {
    pos_t v = parse_int(s.substr(1));
    if (v < 0 || v > 0xffffffffLL) throw FormatError("phrase file: symbol out of range");
    return static_cast<sym_t>(v);
  }
  throw FormatError("phrase file: bad symbol '" + std::string(s) + "'");
}

}  // namespace

Factorization factorize(const LpfIndex& lpf) {
  Factorization f;
  f.variant = lpf.overlap() ? Variant::overlap : Variant::nonoverlap;
  f.n = lpf.n();
  for (pos_t j = 1; j <= f.n;) {
    LpfEntry e = lpf.lpf_at(j);
    f.phrases.push_back({e.len, e.src});
    j += e.len == 0 ? 1 : e.len;
  }
  return f;
}

Factorization factorize(std::span<const sym_t> text, std::uint64_t sigma, Variant v, Engine engine,
                        const MinOccConfig& cfg) {
  if (engine == Engine::oracle) {
    Factorization f;
    f.variant = v;
    f.n = static_cast<pos_t>(text.size());
    oracle::Text t(text.begin(), text.end());
    for (const auto& p : oracle::parse(t, v == Variant::overlap)) f.phrases.push_back({p.len, p.src});
    return f;
  }
  MinOccIndex mo = MinOccIndex::build(text, sigma, cfg);
  return factorize(LpfIndex::build(mo, v == Variant::overlap));
}

std::vector<sym_t> decode(const Factorization& f, std::uint64_t sigma) {
  std::vector<sym_t> out;
  out.reserve(static_cast<std::size_t>(std::max<pos_t>(f.n, 0)));
  for (const Phrase& p : f.phrases) {
    const pos_t j = static_cast<pos_t>(out.size()) + 1;
    if (p.len < 0) throw FormatError("decode: negative phrase length");
    if (p.len == 0) {
      if (p.src < 0 || static_cast<std::uint64_t>(p.src) >= sigma) throw FormatError("decode: literal outside the alphabet");
      out.push_back(static_cast<sym_t>(p.src));
      continue;
    }
    if (p.src < 1 || p.src >= j) throw FormatError("decode: copy source not before the phrase");
    if (f.variant == Variant::nonoverlap && p.src + p.len > j) throw FormatError("decode: copy overlaps its phrase");
    if (p.len > f.n - j + 1) throw FormatError("decode: phrase runs past the end");
    for (pos_t k = 0; k < p.len; ++k) out.push_back(out[p.src - 1 + k]);
  }
  if (static_cast<pos_t>(out.size()) != f.n) throw FormatError("decode: phrase lengths do not add up to n");
  return out;
}

BoundReport phrase_count_bound(const Factorization& f, std::uint64_t sigma) {
  BoundReport r;
  r.n = f.n;
  r.z = f.size();
  if (f.n > 1) r.log_sigma_n = std::log(static_cast<double>(f.n)) / std::log(static_cast<double>(std::max<std::uint64_t>(sigma, 2)));
  if (f.n > 0) r.ratio = static_cast<double>(r.z) * r.log_sigma_n / static_cast<double>(f.n);
  return r;
}

std::string format_symbol(sym_t c) {
  if (c >= 0x21 && c <= 0x7e && c != '#') return std::string(1, static_cast<char>(c));
  return "#" + std::to_string(c);
}

std::string to_tsv(const Factorization& f) {
  std::string out;
  for (const Phrase& p : f.phrases) {
    if (p.literal()) out += "L\t" + format_symbol(static_cast<sym_t>(p.src)) + "\n";
    else out += "C\t" + std::to_string(p.len) + "\t" + std::to_string(p.src) + "\n";
  }
  return out;
}

Factorization from_tsv(std::string_view data, Variant v) {
  Factorization f;
  f.variant = v;
  while (!data.empty()) {
    std::size_t nl = data.find('\n');
    std::string_view line = data.substr(0, nl);
    data = nl == std::string_view::npos ? std::string_view() : data.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string_view> col;
    for (std::size_t s = 0;;) {
      std::size_t t = line.find('\t', s);
      col.push_back(line.substr(s, t == std::string_view::npos ? std::string_view::npos : t - s));
      if (t == std::string_view::npos) break;
      s = t + 1;
    }
    if (col[0] == "L" && col.size() == 2) {
      f.phrases.push_back({0, static_cast<pos_t>(parse_symbol(col[1]))});
      f.n += 1;
    } else if (col[0] == "C" && col.size() == 3) {
      Phrase p{parse_int(col[1]), parse_int(col[2])};
      if (p.len < 1) throw FormatError("phrase file: copy of length < 1");
      f.phrases.push_back(p);
      f.n += p.len;
    } else {
      throw FormatError("phrase file: bad line '" + std::string(line) + "'");
    }
  }
  return f;
}

std::string to_binary(const Factorization& f) {
  std::string out(kBinMagic);
  put_u64(out, static_cast<std::uint64_t>(f.n));
  put_u64(out, f.size());
  for (const Phrase& p : f.phrases) {
    put_u64(out, static_cast<std::uint64_t>(p.len));
    put_u64(out, static_cast<std::uint64_t>(p.src));
  }
  return out;
}

Factorization from_binary(std::string_view data, Variant v) {
  if (data.substr(0, kBinMagic.size()) != kBinMagic) throw FormatError("phrase file: bad magic");
  data.remove_prefix(kBinMagic.size());
  Factorization f;
  f.variant = v;
  if (data.size() < 16) throw FormatError("phrase file: truncated header");
  f.n = static_cast<pos_t>(get_u64(data));
  const std::uint64_t z = get_u64(data);
  if (z > data.size() / 16 || data.size() != z * 16) throw FormatError("phrase file: size does not match the phrase count");
  f.phrases.resize(z);
  for (auto& p : f.phrases) {
    p.len = static_cast<pos_t>(get_u64(data));
    p.src = static_cast<pos_t>(get_u64(data));
  }
  return f;
}

}  // namespace slz
