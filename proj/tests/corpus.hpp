#pragma once

// Test texts: random, unary, Fibonacci, de Bruijn and run-rich families.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "slz/text_core.hpp"

namespace slz::corpus {

struct Sample {
  std::string family;
  std::vector<sym_t> text;
  std::uint64_t sigma = 2;
};

inline std::vector<sym_t> random_text(std::mt19937_64& g, std::size_t n, std::uint64_t sigma) {
  std::vector<sym_t> t(n);
  for (auto& c : t) c = static_cast<sym_t>(g() % sigma);
  return t;
}

inline std::vector<sym_t> unary(std::size_t n) { return std::vector<sym_t>(n, 0); }

inline std::vector<sym_t> fibonacci(std::size_t n) {
  std::vector<sym_t> a{0}, b{0, 1};
  while (b.size() < n) {
    std::vector<sym_t> c = b;
    c.insert(c.end(), a.begin(), a.end());
    a = std::move(b);
    b = std::move(c);
  }
  b.resize(n);
  return b;
}

// De Bruijn sequence of order k (concatenated Lyndon words), repeated cyclically and cut to n.
inline std::vector<sym_t> de_bruijn(std::size_t n, std::uint64_t sigma, unsigned k) {
  std::vector<sym_t> out;
  std::vector<sym_t> a(k * sigma + 1, 0);
  auto db = [&](auto&& self, unsigned t, unsigned p) -> void {
    if (out.size() >= n) return;
    if (t > k) {
      if (k % p == 0)
        for (unsigned i = 1; i <= p; ++i) out.push_back(a[i]);
      return;
    }
    a[t] = a[t - p];
    self(self, t + 1, p);
    for (sym_t c = a[t - p] + 1; c < sigma; ++c) {
      a[t] = c;
      self(self, t + 1, t);
    }
  };
  while (out.size() < n) {
    std::size_t before = out.size();
    db(db, 1, 1);
    if (out.size() == before) break;
  }
  out.resize(std::min(out.size(), n));
  while (out.size() < n) out.push_back(0);
  return out;
}

// Concatenated powers of short random roots with occasional noise.
inline std::vector<sym_t> run_rich(std::mt19937_64& g, std::size_t n, std::uint64_t sigma, unsigned max_root,
                                   unsigned max_exp) {
  std::vector<sym_t> t;
  std::vector<std::vector<sym_t>> roots;
  while (t.size() < n) {
    std::vector<sym_t> root;
    if (!roots.empty() && g() % 2 == 0) {
      root = roots[g() % roots.size()];
    } else {
      root.resize(1 + g() % max_root);
      for (auto& c : root) c = static_cast<sym_t>(g() % sigma);
      roots.push_back(root);
    }
    const std::size_t len = root.size() * (1 + g() % max_exp) + g() % root.size();
    for (std::size_t i = 0; i < len && t.size() < n; ++i) t.push_back(root[i % root.size()]);
    if (g() % 3 == 0 && t.size() < n) t.push_back(static_cast<sym_t>(g() % sigma));
  }
  return t;
}

inline Sample mixed(std::mt19937_64& g, std::size_t max_n) {
  static const std::uint64_t sigmas[] = {2, 4, 16, 256};
  const std::size_t n = 1 + g() % max_n;
  switch (g() % 6) {
    case 0:
    case 1: {
      std::uint64_t s = sigmas[g() % 4];
      return {"random", random_text(g, n, s), s};
    }
    case 2:
      return {"unary", unary(n), 2};
    case 3:
      return {"fibonacci", fibonacci(n), 2};
    case 4: {
      std::uint64_t s = 2 + g() % 3;
      return {"debruijn", de_bruijn(n, s, 2 + static_cast<unsigned>(g() % 4)), s};
    }
    default: {
      std::uint64_t s = 2 + g() % 3;
      return {"runrich", run_rich(g, n, s, 5, 20), s};
    }
  }
}

}  // namespace slz::corpus
