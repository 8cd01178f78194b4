#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "slz/bitpack.hpp"
#include "slz/runs.hpp"
#include "slz/text_core.hpp"

namespace slz {

// e_min(a) for every run, indexed like runs.runs(): [a..e_min) is the part of the
// block whose positions are the leftmost same-type occurrence of T[j..e(j)).
// Runs of one root and type are processed in text order with one NarrowRangeMax
// over (tail, efull - a) and a running maximum of efull - a - p.
std::vector<pos_t> compute_emin(const RunsTable& runs);

// SA interval of R(s, H): (x..z], with the type -1 part first, (x..y].
struct BminBlock {
  pos_t x = 0, y = 0, z = 0;
};

struct BminParts {
  Bitvector minus, plus;              // over SA positions [1..n]
  std::vector<pos_t> minus_sa, plus_sa;  // SA value at each 1-bit, in SA order
  std::map<std::pair<std::uint32_t, pos_t>, BminBlock> blocks;  // (root, head)
  std::vector<pos_t> emin;
  std::uint64_t sweep_events = 0;
};

// Per root and type: B(0, H) by sweeping exponents, then B(s+1, H) from B(s, H) by one
// delete/insert pass; each B(s, H) is copied to its SA interval. With use_isa the SA
// values at 1-bits come from the scaffold ISA; otherwise from the block layout, with
// the scaffold only used as a check.
BminParts build_bmin(const PackedText& t, const SuffixScaffold& sc, const RunsTable& runs, bool use_isa = false);

// Direct construction from the scaffold ISA: bit ISA[j] set for j in [a..e_min).
std::pair<Bitvector, Bitvector> bmin_from_isa(const SuffixScaffold& sc, const RunsTable& runs,
                                              const std::vector<pos_t>& emin);

}  // namespace slz
