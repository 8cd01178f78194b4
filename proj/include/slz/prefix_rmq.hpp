#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "slz/bitpack.hpp"
#include "slz/rmq.hpp"
#include "slz/text_core.hpp"

namespace slz {

// Strings of a fixed length ell over [0, sigma), viewed as bit strings of ell*w bits and
// stored as a wavelet matrix: rank and select for any prefix X cost O(|X| w) bitvector ops.
class PrefixRankSelect {
 public:
  PrefixRankSelect() = default;
  // `flat` holds m strings back to back.
  PrefixRankSelect(std::span<const sym_t> flat, unsigned ell, std::uint64_t sigma);

  std::uint64_t size() const { return m_; }
  unsigned length() const { return ell_; }
  std::uint64_t sigma() const { return sigma_; }
  // |{i in [1..j] : X prefixes S[i]}|
  std::uint64_t rank(std::uint64_t j, std::span<const sym_t> x) const;
  // r-th index (1-based) whose string starts with X; QueryError past the count.
  std::uint64_t select(std::uint64_t r, std::span<const sym_t> x) const;
  std::uint64_t count(std::span<const sym_t> x) const { return rank(m_, x); }
  std::size_t memory_bytes() const;

 private:
  unsigned bit_at(std::span<const sym_t> x, unsigned d) const {
    return (x[d / w_] >> (w_ - 1 - d % w_)) & 1u;
  }
  void descend(std::span<const sym_t> x, std::uint64_t& start, std::uint64_t& j) const;

  std::uint64_t m_ = 0;
  unsigned ell_ = 0, w_ = 1;
  std::uint64_t sigma_ = 2;
  std::vector<Bitvector> levels_;
  std::vector<std::uint64_t> zeros_;
};

// What a prefix-RMQ component sees of its (A, S) instance: prefix rank/select on S and a
// strict order on indices (by A, ties by index).
class PrefixRmqSource {
 public:
  virtual ~PrefixRmqSource() = default;
  virtual std::uint64_t size() const = 0;
  virtual std::uint64_t rank(std::uint64_t j, std::span<const sym_t> z) const = 0;
  virtual std::uint64_t select(std::uint64_t r, std::span<const sym_t> z) const = 0;
  virtual bool less(std::uint64_t i, std::uint64_t k) const = 0;
};

class PrefixRmqLayer {
 public:
  virtual ~PrefixRmqLayer() = default;
  // argmin over i in (b..e] with z prefixing S[i]; leftmost on ties.
  virtual std::optional<pos_t> query(pos_t b, pos_t e, std::span<const sym_t> z) const = 0;
  virtual std::size_t memory_bytes() const = 0;
};

// Instance data handed to the layer builders: `order` ranks A (distinct, consistent with
// source.less), `flat` holds the strings.
struct PrefixRmqInput {
  const PrefixRmqSource* source = nullptr;
  std::span<const std::uint64_t> order;
  std::span<const sym_t> flat;
  unsigned ell = 0;
  std::uint64_t sigma = 2;
};

// One plain RMQ per occurring prefix.
std::unique_ptr<PrefixRmqLayer> build_simple(const PrefixRmqInput& in);
// One comparison-only RMQ per occurring prefix.
std::unique_ptr<PrefixRmqLayer> build_packed(const PrefixRmqInput& in);
// Blocks of sigma^ell * ceil(log m) entries with packed components inside, per-prefix
// block minima and prefix counts across. Degrades to build_packed for small m.
std::unique_ptr<PrefixRmqLayer> build_shallow(const PrefixRmqInput& in);

enum class PrefixRmqKind { automatic, simple, packed, shallow, layered };

class PrefixRmqIndex {
 public:
  PrefixRmqIndex();
  PrefixRmqIndex(std::vector<std::uint64_t> a, std::span<const sym_t> flat, unsigned ell, std::uint64_t sigma,
                 PrefixRmqKind kind = PrefixRmqKind::automatic);
  PrefixRmqIndex(std::vector<std::uint64_t> a, const std::vector<std::vector<sym_t>>& strings, unsigned ell,
                 std::uint64_t sigma, PrefixRmqKind kind = PrefixRmqKind::automatic);
  PrefixRmqIndex(PrefixRmqIndex&&) noexcept;
  PrefixRmqIndex& operator=(PrefixRmqIndex&&) noexcept;
  ~PrefixRmqIndex();

  std::uint64_t size() const { return a_.size(); }
  unsigned length() const { return ell_; }
  PrefixRmqKind kind() const { return kind_; }
  unsigned alpha() const { return alpha_; }
  std::optional<pos_t> query(pos_t b, pos_t e, std::span<const sym_t> x) const;
  const PrefixRankSelect& rank_select() const { return prs_; }
  std::size_t memory_bytes() const;

 private:
  struct Source;
  struct View;

  std::vector<std::uint64_t> a_;
  unsigned ell_ = 0;
  std::uint64_t sigma_ = 2;
  PrefixRmqKind kind_ = PrefixRmqKind::automatic;
  unsigned alpha_ = 0;
  PrefixRankSelect prs_;
  std::unique_ptr<Source> source_;
  std::unique_ptr<PrefixRmqLayer> flat_layer_;
  // layered: one component per prefix Y with |Y| a multiple of alpha
  std::vector<std::unique_ptr<View>> views_;
  std::vector<std::unique_ptr<PrefixRmqLayer>> view_layers_;
  std::unordered_map<std::uint64_t, std::uint32_t> view_of_;  // prefix key -> slot
};

}  // namespace slz
