#include "slz/rmq.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>

#include "slz/errors.hpp"

namespace slz {

RmqIndex::RmqIndex(std::vector<std::uint64_t> values) : a_(std::move(values)) {
  const std::uint64_t m = a_.size();
  mask_.resize(m);
  std::uint64_t nblocks = (m + 63) / 64;
  for (std::uint64_t blk = 0; blk < nblocks; ++blk) {
    std::uint64_t base = blk * 64;
    std::uint64_t stack = 0;
    for (std::uint64_t k = 0; base + k < m && k < 64; ++k) {
      std::uint64_t x = a_[base + k];
      while (stack != 0) {
        unsigned top = 63 - std::countl_zero(stack);
        if (a_[base + top] > x) stack &= ~(std::uint64_t{1} << top);
        else break;
      }
      stack |= std::uint64_t{1} << k;
      mask_[base + k] = stack;
    }
  }
  if (nblocks == 0) return;
  std::vector<std::uint32_t> level(nblocks);
  for (std::uint64_t blk = 0; blk < nblocks; ++blk) {
    std::uint64_t last = std::min(m, (blk + 1) * 64) - 1;
    level[blk] = static_cast<std::uint32_t>(blk * 64 + std::countr_zero(mask_[last]));
  }
  sparse_.push_back(std::move(level));
  for (std::uint64_t w = 1; 2 * w <= nblocks; w *= 2) {
    const auto& prev = sparse_.back();
    std::vector<std::uint32_t> cur(nblocks - 2 * w + 1);
    for (std::uint64_t i = 0; i < cur.size(); ++i)
      cur[i] = static_cast<std::uint32_t>(better(prev[i], prev[i + w]));
    sparse_.push_back(std::move(cur));
  }
}

std::uint64_t RmqIndex::in_block(std::uint64_t l, std::uint64_t r) const {
  std::uint64_t m = mask_[r] >> (l & 63);
  return l + std::countr_zero(m);
}

pos_t RmqIndex::query(pos_t b, pos_t e) const {
  if (b < 0 || e > static_cast<pos_t>(a_.size()) || b >= e) throw QueryError("rmq: empty or invalid range");
  std::uint64_t l = static_cast<std::uint64_t>(b), r = static_cast<std::uint64_t>(e - 1);
  std::uint64_t bl = l / 64, br = r / 64;
  if (bl == br) return static_cast<pos_t>(in_block(l, r)) + 1;
  std::uint64_t best = in_block(l, bl * 64 + 63);
  if (bl + 1 < br) {
    std::uint64_t lo = bl + 1, hi = br;  // blocks [lo, hi)
    unsigned k = std::bit_width(hi - lo) - 1;
    std::uint64_t mid = better(sparse_[k][lo], sparse_[k][hi - (std::uint64_t{1} << k)]);
    best = better(best, mid);
  }
  best = better(best, in_block(br * 64, r));
  return static_cast<pos_t>(best) + 1;
}

std::size_t RmqIndex::memory_bytes() const {
  std::size_t s = a_.size() * 8 + mask_.size() * 8;
  for (const auto& l : sparse_) s += l.size() * 4;
  return s;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kTableBudget = std::uint64_t{1} << 20;

// Stack masks after each element of a block, replayed from its push/pop code.
void replay(std::uint64_t code, unsigned tau, std::uint64_t* masks) {
  std::uint64_t stack = 0;
  unsigned bit = 0;
  for (unsigned k = 0; k < tau; ++k) {
    while (bit < 2 * tau && ((code >> bit) & 1u) == 0 && stack != 0) {
      stack &= ~(std::uint64_t{1} << (63 - std::countl_zero(stack)));
      ++bit;
    }
    ++bit;  // the push
    stack |= std::uint64_t{1} << k;
    masks[k] = stack;
  }
}

const std::vector<std::uint8_t>* universal_table(unsigned tau) {
  if ((std::uint64_t{1} << (2 * tau)) * tau * tau > kTableBudget) return nullptr;
  static std::mutex mu;
  static std::map<unsigned, std::unique_ptr<std::vector<std::uint8_t>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[tau];
  if (!slot) {
    std::uint64_t codes = std::uint64_t{1} << (2 * tau);
    auto t = std::make_unique<std::vector<std::uint8_t>>(codes * tau * tau);
    std::uint64_t masks[64];
    for (std::uint64_t c = 0; c < codes; ++c) {
      replay(c, tau, masks);
      for (unsigned l = 0; l < tau; ++l)
        for (unsigned r = l; r < tau; ++r)
          (*t)[(c * tau + l) * tau + r] = static_cast<std::uint8_t>(l + std::countr_zero(masks[r] >> l));
    }
    slot = std::move(t);
  }
  return slot.get();
}

}  // namespace

PackedRmqIndex::PackedRmqIndex(std::span<const std::uint64_t> values, std::uint64_t sigma) : m_(values.size()) {
  if (sigma < 2) sigma = 2;
  w_ = bits_for(sigma);
  unsigned logm = m_ > 1 ? std::bit_width(m_ - 1) : 1;
  unsigned logs = std::bit_width(sigma - 1);
  tau_ = std::max(1u, logm / (2 * logs));
  if (tau_ > 32) tau_ = 32;
  packed_.assign((m_ * w_ + 63) / 64 + 1, 0);
  for (std::uint64_t i = 0; i < m_; ++i) {
    if (values[i] >= sigma) throw InputError("packed rmq: value outside alphabet");
    std::uint64_t off = i * w_;
    packed_[off >> 6] |= values[i] << (off & 63);
    if ((off & 63) + w_ > 64) packed_[(off >> 6) + 1] |= values[i] >> (64 - (off & 63));
  }
  std::uint64_t nblocks = (m_ + tau_ - 1) / tau_;
  codes_.assign(nblocks, 0);
  std::vector<std::uint64_t> mins(nblocks);
  std::vector<unsigned> stack;
  for (std::uint64_t blk = 0; blk < nblocks; ++blk) {
    std::uint64_t base = blk * tau_;
    std::uint64_t code = 0;
    unsigned bit = 0;
    stack.clear();
    for (unsigned k = 0; k < tau_ && base + k < m_; ++k) {
      std::uint64_t x = values[base + k];
      while (!stack.empty() && values[base + stack.back()] > x) {
        stack.pop_back();
        ++bit;  // pop = 0
      }
      code |= std::uint64_t{1} << bit;
      ++bit;
      stack.push_back(k);
    }
    codes_[blk] = code;
    mins[blk] = values[base + stack.front()];
  }
  block_min_ = RmqIndex(std::move(mins));
  table_ = universal_table(tau_);
}

std::uint64_t PackedRmqIndex::get(std::uint64_t i) const {
  std::uint64_t off = i * w_;
  std::uint64_t lo = packed_[off >> 6] >> (off & 63);
  if ((off & 63) + w_ > 64) lo |= packed_[(off >> 6) + 1] << (64 - (off & 63));
  return lo & ((std::uint64_t{1} << w_) - 1);
}

unsigned PackedRmqIndex::block_argmin(std::uint64_t blk, unsigned l, unsigned r) const {
  std::uint64_t code = codes_[blk];
  if (table_) return (*table_)[(code * tau_ + l) * tau_ + r];
  std::uint64_t masks[64];
  replay(code, r + 1, masks);
  // replay() with a shorter length reads the same prefix of the code
  return l + std::countr_zero(masks[r] >> l);
}

pos_t PackedRmqIndex::query(pos_t b, pos_t e, std::uint64_t* reads) const {
  if (b < 0 || e > static_cast<pos_t>(m_) || b >= e) throw QueryError("packed rmq: empty or invalid range");
  std::uint64_t l = static_cast<std::uint64_t>(b), r = static_cast<std::uint64_t>(e - 1);
  std::uint64_t bl = l / tau_, br = r / tau_;
  if (bl == br) return static_cast<pos_t>(bl * tau_ + block_argmin(bl, l % tau_, r % tau_)) + 1;
  std::uint64_t cand[3];
  unsigned nc = 0;
  cand[nc++] = bl * tau_ + block_argmin(bl, l % tau_, tau_ - 1);
  if (bl + 1 < br) {
    std::uint64_t blk = static_cast<std::uint64_t>(block_min_.query(static_cast<pos_t>(bl + 1), static_cast<pos_t>(br))) - 1;
    cand[nc++] = blk * tau_ + block_argmin(blk, 0, tau_ - 1);
  }
  cand[nc++] = br * tau_ + block_argmin(br, 0, r % tau_);
  std::uint64_t best = cand[0], bv = get(best);
  for (unsigned k = 1; k < nc; ++k) {
    std::uint64_t v = get(cand[k]);
    if (v < bv) {
      bv = v;
      best = cand[k];
    }
  }
  if (reads) *reads += nc;
  return static_cast<pos_t>(best) + 1;
}

SystematicRmq::SystematicRmq(std::span<const std::uint64_t> values, unsigned block) : m_(values.size()) {
  tau_ = std::clamp(block, 1u, 32u);
  std::uint64_t nblocks = (m_ + tau_ - 1) / tau_;
  codes_.assign(nblocks, 0);
  std::vector<std::uint64_t> mins(nblocks);
  std::vector<unsigned> stack;
  for (std::uint64_t blk = 0; blk < nblocks; ++blk) {
    std::uint64_t base = blk * tau_;
    std::uint64_t code = 0;
    unsigned bit = 0;
    stack.clear();
    for (unsigned k = 0; k < tau_ && base + k < m_; ++k) {
      while (!stack.empty() && values[base + stack.back()] > values[base + k]) {
        stack.pop_back();
        ++bit;
      }
      code |= std::uint64_t{1} << bit;
      ++bit;
      stack.push_back(k);
    }
    codes_[blk] = code;
    mins[blk] = values[base + stack.front()];
  }
  block_min_ = RmqIndex(std::move(mins));
  table_ = universal_table(tau_);
}

unsigned SystematicRmq::block_argmin(std::uint64_t blk, unsigned l, unsigned r) const {
  std::uint64_t code = codes_[blk];
  if (table_) return (*table_)[(code * tau_ + l) * tau_ + r];
  std::uint64_t masks[64];
  replay(code, r + 1, masks);
  return l + std::countr_zero(masks[r] >> l);
}

std::size_t PackedRmqIndex::memory_bytes() const {
  return packed_.size() * 8 + codes_.size() * 8 + block_min_.memory_bytes();
}

}  // namespace slz
