#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slz/bitpack.hpp"
#include "slz/bmin.hpp"
#include "slz/runs.hpp"
#include "slz/text_core.hpp"
#include "slz/tsrmq.hpp"

namespace slz {

// Periodic structure of a pattern P with per(P[1..3tau-1]) <= tau/3.
struct PeriodicShape {
  pos_t p = 0;
  pos_t s = 0;            // head
  std::int64_t root = -1;  // id in the runs table, -1 if the text has no run with this root
  pos_t run_end = 0;      // 1 + p + lcp(P, P[1+p..]); |P| + 1 when fully periodic
  pos_t full_end = 0;     // RunEndFull - 1 = s + kp
  int type = 0;           // 0 when fully periodic
  bool full() const { return type == 0; }
};

class PeriodicIndex {
 public:
  PeriodicIndex() = default;
  static PeriodicIndex build(const PackedText& t, const SuffixScaffold& sc, pos_t tau, bool use_isa = false);

  pos_t tau() const { return tau_; }
  const RunsTable& runs() const { return runs_; }
  const Bitvector& bmin(int type) const { return type < 0 ? minus_ : plus_; }
  const std::map<std::pair<std::uint32_t, pos_t>, BminBlock>& blocks() const { return blocks_; }
  const std::vector<pos_t>& emin() const { return emin_; }
  std::uint64_t sweep_events() const { return sweep_events_; }
  // Keep a full suffix array for SA access at 1-bits instead of the samples.
  void attach_full_sa(const std::vector<pos_t>* sa) { full_sa_ = sa; }

  PeriodicShape shape_of_window(pos_t j, pos_t len) const;
  PeriodicShape shape_of(std::span<const sym_t> p) const;

  // Window T[j..j+len), j in R, len >= 3tau-1.
  pos_t minocc_window(pos_t j, pos_t len) const;
  // Explicit pattern with a tau-periodic (3tau-1)-prefix; NotFoundError if absent.
  pos_t minocc_pattern(std::span<const sym_t> p) const;

  // Building blocks, exposed for tests. `src` is either the text (window at j) or a
  // packed pattern (from position 1).
  std::optional<pos_t> partially(const PeriodicShape& sh, const PackedText& src, pos_t j, pos_t len) const;
  std::optional<pos_t> fully(std::uint32_t root, pos_t s, pos_t len) const;

  std::size_t memory_bytes() const;
  void save(std::string& out) const;
  static PeriodicIndex load(std::string_view& in, const PackedText& t);

 private:
  struct Side {
    std::vector<std::uint64_t> a_pos, a_len;  // in lex(type) order
    ThreeSidedRmqIndex ts;
  };
  void finish();
  pos_t pow_len(pos_t p) const { return p * ((tau_ + p - 1) / p); }
  pos_t run_extent(pos_t j) const;
  pos_t sa_at(int type, std::uint64_t r) const;

  const PackedText* text_ = nullptr;
  pos_t tau_ = 0;
  RunsTable runs_;
  Side side_[2];  // 0: type -1, 1: type +1
  Bitvector minus_, plus_;
  std::vector<pos_t> minus_sa_, plus_sa_;
  std::map<std::pair<std::uint32_t, pos_t>, BminBlock> blocks_;
  std::vector<pos_t> emin_;
  std::uint64_t sweep_events_ = 0;
  const std::vector<pos_t>* full_sa_ = nullptr;
};

}  // namespace slz
