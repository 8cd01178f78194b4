#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slz/errors.hpp"
#include "slz/lpf.hpp"
#include "slz/lz77.hpp"
#include "slz/minocc_index.hpp"
#include "slz/oracle.hpp"

using json = nlohmann::json;
using namespace slz;

namespace {

constexpr int kOk = 0, kMismatch = 1, kIoError = 2;
constexpr std::size_t kVerifyLimit = std::size_t{1} << 20;
constexpr pos_t kNaiveLimit = 4000;

struct Options {
  std::string input, output;
  std::string variant = "overlap";
  std::string format = "tsv";
  std::string engine = "indexed";
  std::uint64_t sigma = 0;  // 0: 256 for raw bytes, 4 for packed input
  pos_t tau = 0;
  bool packed = false;
  bool verify = false;
  bool memory_relaxed = false;
  int reps = 1;
  std::uint64_t queries = 100000;
};

struct Input {
  std::vector<sym_t> text;
  std::uint64_t sigma = 0;
  std::size_t bytes = 0;
};

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

long peak_rss_kb() {
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  return ru.ru_maxrss;
}

void check_flags(const Options& o) {
  if (o.packed && o.sigma > 4) throw ConfigError("--packed holds 2-bit symbols; --sigma must be at most 4");
  if (o.sigma == 1) throw ConfigError("--sigma must be at least 2");
  if (o.tau < 0) throw ConfigError("--tau must be positive");
  if (o.reps < 1) throw ConfigError("--reps must be at least 1");
}

Variant variant_of(const Options& o) { return o.variant == "overlap" ? Variant::overlap : Variant::nonoverlap; }

MinOccConfig config_of(const Options& o) {
  MinOccConfig c;
  c.tau = o.tau;
  c.memory_relaxed = o.memory_relaxed;
  return c;
}

Input load_input(const Options& o) {
  Input in;
  std::string data = read_file(o.input);
  in.bytes = data.size();
  if (o.packed) {
    if (!is_packed2(data)) throw FormatError("input is not a packed 2-bit file");
    in.text = decode_packed2(data);
    in.sigma = o.sigma ? o.sigma : 4;
  } else {
    in.text.assign(reinterpret_cast<const unsigned char*>(data.data()),
                   reinterpret_cast<const unsigned char*>(data.data()) + data.size());
    in.sigma = o.sigma ? o.sigma : 256;
  }
  if (in.text.empty()) throw InputError("empty input");
  for (sym_t c : in.text)
    if (c >= in.sigma) throw InputError("symbol " + std::to_string(c) + " outside the alphabet of size " + std::to_string(in.sigma));
  return in;
}

void emit(const Options& o, const std::string& data) {
  if (o.output.empty() || o.output == "-") std::cout << data << std::flush;
  else write_file(o.output, data);
}

// Greedy parse from the independent references: quadratic scan for small inputs,
// the suffix-sorting oracle otherwise.
Factorization oracle_parse(const std::vector<sym_t>& text, std::uint64_t sigma, Variant v) {
  if (static_cast<pos_t>(text.size()) <= kNaiveLimit) return factorize(text, sigma, v, Engine::oracle);
  Factorization f;
  f.variant = v;
  f.n = static_cast<pos_t>(text.size());
  oracle::LargeOracle lo(oracle::Text(text.begin(), text.end()));
  for (pos_t j = 1; j <= f.n;) {
    auto [len, src] = lo.lpf_at(j, v == Variant::overlap);
    f.phrases.push_back({len, src});
    j += len == 0 ? 1 : len;
  }
  return f;
}

int cmd_factorize(const Options& o) {
  Input in = load_input(o);
  const double t0 = now_s();
  Factorization f;
  json stats;
  if (o.engine == "oracle") {
    f = oracle_parse(in.text, in.sigma, variant_of(o));
  } else {
    MinOccIndex mo = MinOccIndex::build(in.text, in.sigma, config_of(o));
    LpfIndex lpf = LpfIndex::build(mo, variant_of(o) == Variant::overlap);
    f = factorize(lpf);
    stats["tau"] = mo.tau();
    stats["fallback"] = mo.fallback();
  }
  const double wall = now_s() - t0;
  emit(o, o.format == "bin" ? to_binary(f) : to_tsv(f));
  BoundReport br = phrase_count_bound(f, in.sigma);
  stats["n"] = br.n;
  stats["z"] = br.z;
  stats["ratio"] = br.ratio;
  stats["wall_s"] = wall;
  stats["peak_rss_kb"] = peak_rss_kb();
  int rc = kOk;
  if (o.verify) {
    if (in.text.size() > kVerifyLimit) {
      stats["verify"] = "skipped";
    } else {
      Factorization want = oracle_parse(in.text, in.sigma, variant_of(o));
      const bool same = want.phrases == f.phrases && decode(f, in.sigma) == in.text;
      stats["verify"] = same ? "ok" : "mismatch";
      if (!same) rc = kMismatch;
    }
  }
  std::cerr << stats.dump() << "\n";
  return rc;
}

int cmd_lpf(const Options& o) {
  Input in = load_input(o);
  MinOccIndex mo = MinOccIndex::build(in.text, in.sigma, config_of(o));
  LpfIndex lpf = LpfIndex::build(mo, variant_of(o) == Variant::overlap);
  std::string out;
  pos_t j = 1;
  for (const LpfEntry& e : lpf.all()) {
    out += std::to_string(j++) + "\t" + std::to_string(e.len) + "\t";
    out += e.len == 0 ? format_symbol(static_cast<sym_t>(e.src)) : std::to_string(e.src);
    out += "\n";
  }
  emit(o, out);
  int rc = kOk;
  if (o.verify && in.text.size() <= kVerifyLimit) {
    oracle::LargeOracle lo(oracle::Text(in.text.begin(), in.text.end()));
    auto all = lpf.all();
    for (pos_t k = 1; k <= static_cast<pos_t>(in.text.size()); ++k) {
      auto [len, src] = lo.lpf_at(k, variant_of(o) == Variant::overlap);
      if (all[k - 1].len != len || all[k - 1].src != src) rc = kMismatch;
    }
    std::cerr << json{{"verify", rc == kOk ? "ok" : "mismatch"}}.dump() << "\n";
  }
  return rc;
}

int cmd_decode(const Options& o) {
  std::string data = read_file(o.input);
  Factorization f = data.rfind("SLZ77v1", 0) == 0 ? from_binary(data, variant_of(o)) : from_tsv(data, variant_of(o));
  const std::uint64_t sigma = o.sigma ? o.sigma : (o.packed ? 4 : 256);
  std::vector<sym_t> text = decode(f, sigma);
  if (o.packed) {
    emit(o, encode_packed2(text));
  } else {
    if (sigma > 256) throw ConfigError("raw output needs --sigma at most 256");
    emit(o, std::string(text.begin(), text.end()));
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  Input in = load_input(o);
  int rc = kOk;
  json rep;
  for (Variant v : {Variant::overlap, Variant::nonoverlap}) {
    MinOccIndex mo = MinOccIndex::build(in.text, in.sigma, config_of(o));
    Factorization f = factorize(LpfIndex::build(mo, v == Variant::overlap));
    Factorization want = oracle_parse(in.text, in.sigma, v);
    const bool same = want.phrases == f.phrases && decode(f, in.sigma) == in.text;
    rep[v == Variant::overlap ? "overlap" : "nonoverlap"] = {{"z", f.size()}, {"ok", same}};
    if (!same) rc = kMismatch;
  }
  std::cout << rep.dump() << "\n";
  return rc;
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  return v[std::min(v.size() - 1, static_cast<std::size_t>(q * static_cast<double>(v.size())))];
}

int cmd_bench(const Options& o) {
  Input in = load_input(o);
  const pos_t n = static_cast<pos_t>(in.text.size());
  json samples = json::array();
  std::mt19937_64 rng(12345);
  for (int r = 0; r < o.reps; ++r) {
    double t0 = now_s();
    MinOccIndex mo = MinOccIndex::build(in.text, in.sigma, config_of(o));
    const double build_s = now_s() - t0;
    t0 = now_s();
    LpfIndex lpf = LpfIndex::build(mo, variant_of(o) == Variant::overlap);
    const double lpf_s = now_s() - t0;
    t0 = now_s();
    Factorization f = factorize(lpf);
    const double fact_s = now_s() - t0;
    std::vector<double> lat;
    lat.reserve(o.queries);
    pos_t sink = 0;
    for (std::uint64_t q = 0; q < o.queries; ++q) {
      const pos_t j = 1 + static_cast<pos_t>(rng() % static_cast<std::uint64_t>(n));
      const pos_t len = 1 + static_cast<pos_t>(rng() % static_cast<std::uint64_t>(std::min<pos_t>(n - j + 1, 256)));
      const auto a = std::chrono::steady_clock::now();
      sink += mo.minocc_window(j, len);
      lat.push_back(std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - a).count());
    }
    const auto& bt = mo.build_times();
    const double total = build_s + lpf_s + fact_s;
    samples.push_back({{"build_s", {{"scaffold", bt.scaffold}, {"core", bt.core}, {"nonperiodic", bt.nonperiodic},
                                    {"periodic", bt.periodic}, {"minocc_total", build_s}, {"lpf", lpf_s}}},
                       {"factorize_s", fact_s},
                       {"end_to_end_s", total},
                       {"throughput_mb_s", static_cast<double>(in.bytes) / 1e6 / total},
                       {"z", f.size()},
                       {"tau", mo.tau()},
                       {"fallback", mo.fallback()},
                       {"index_bytes", mo.memory_bytes()},
                       {"query_us", {{"p50", percentile(lat, 0.50)}, {"p90", percentile(lat, 0.90)},
                                     {"p99", percentile(lat, 0.99)}, {"max", percentile(lat, 1.0)}}},
                       {"checksum", sink}});
  }
  auto summary = [&](auto get) {
    std::vector<double> v;
    for (const auto& s : samples) v.push_back(get(s));
    std::sort(v.begin(), v.end());
    return json{{"min", v.front()}, {"median", v[v.size() / 2]}};
  };
  json rep{{"input", o.input},
           {"n", n},
           {"sigma", in.sigma},
           {"variant", o.variant},
           {"reps", o.reps},
           {"queries", o.queries},
           {"samples", samples},
           {"end_to_end_s", summary([](const json& s) { return s["end_to_end_s"].get<double>(); })},
           {"query_p99_us", summary([](const json& s) { return s["query_us"]["p99"].get<double>(); })},
           {"peak_rss_kb", peak_rss_kb()}};
  std::cout << rep.dump(2) << "\n";
  return kOk;
}

json describe(const MinOccIndex& mo) {
  json j{{"n", mo.n()},
         {"sigma", mo.text().sigma() - 1},
         {"tau", mo.tau()},
         {"fallback", mo.fallback()},
         {"memory_bytes", mo.memory_bytes()}};
  if (!mo.fallback()) {
    j["core"] = {{"dense", mo.core().dense()}, {"entries", mo.core().entries()}};
    j["nonperiodic"] = {{"sync_positions", mo.nonperiodic().sync().size()},
                        {"dist_prefixes", mo.nonperiodic().dist_prefix_count()}};
    j["periodic"] = {{"runs", mo.periodic().runs().runs().size()},
                     {"roots", mo.periodic().runs().roots().size()},
                     {"bmin_minus_ones", mo.periodic().bmin(-1).ones()},
                     {"bmin_plus_ones", mo.periodic().bmin(1).ones()}};
  }
  return j;
}

int cmd_index_serialize(const Options& o) {
  Input in = load_input(o);
  MinOccIndex mo = MinOccIndex::build(in.text, in.sigma, config_of(o));
  if (o.output.empty()) throw ConfigError("index serialize needs -o");
  mo.save(o.output);
  std::cerr << describe(mo).dump() << "\n";
  return kOk;
}

int cmd_index_inspect(const Options& o) {
  MinOccIndex mo = MinOccIndex::load(o.input);
  std::cout << describe(mo).dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slz: LZ77 factorization through a leftmost-occurrence index"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c, bool text_input) {
    c->add_option("input", o.input, text_input ? "input text" : "input file")->required();
    c->add_option("-o,--output", o.output, "output path (default stdout)");
    c->add_option("--variant", o.variant)->check(CLI::IsMember({"overlap", "nonoverlap"}));
    c->add_option("--sigma", o.sigma, "alphabet size (default 256, or 4 with --packed)");
    c->add_flag("--packed", o.packed, "input/output in the SLZ2 2-bit format");
    if (text_input) {
      c->add_option("--tau", o.tau, "force the full index with this tau");
      c->add_flag("--memory-relaxed", o.memory_relaxed, "keep the suffix array alive");
    }
  };

  auto* fact = app.add_subcommand("factorize", "write the LZ77 phrases");
  add_common(fact, true);
  fact->add_option("--format", o.format)->check(CLI::IsMember({"tsv", "bin"}));
  fact->add_option("--engine", o.engine)->check(CLI::IsMember({"indexed", "oracle"}));
  fact->add_flag("--verify", o.verify, "compare with the reference parser (inputs up to 1 MB)");

  auto* lpf = app.add_subcommand("lpf", "dump LPF or LPnF as j<TAB>len<TAB>src");
  add_common(lpf, true);
  lpf->add_flag("--verify", o.verify);

  auto* dec = app.add_subcommand("decode", "rebuild the text from a phrase file");
  add_common(dec, false);

  auto* ver = app.add_subcommand("verify", "factorize both variants and compare with the reference");
  add_common(ver, true);

  auto* bench = app.add_subcommand("bench", "timing report as JSON");
  add_common(bench, true);
  bench->add_option("--reps", o.reps);
  bench->add_option("--queries", o.queries);

  auto* index = app.add_subcommand("index", "build, save and inspect the leftmost-occurrence index");
  index->require_subcommand(1);
  auto* ser = index->add_subcommand("serialize", "build the index and save it");
  add_common(ser, true);
  auto* insp = index->add_subcommand("inspect", "print a summary of a saved index");
  insp->add_option("input", o.input)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kIoError;
  }

  try {
    check_flags(o);
    if (*fact) return cmd_factorize(o);
    if (*lpf) return cmd_lpf(o);
    if (*dec) return cmd_decode(o);
    if (*ver) return cmd_verify(o);
    if (*bench) return cmd_bench(o);
    if (*ser) return cmd_index_serialize(o);
    if (*insp) return cmd_index_inspect(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}
