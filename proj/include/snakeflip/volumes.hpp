#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "posets.hpp"
#include "words.hpp"

namespace snakeflip {

using Partition = std::vector<int>;

inline BigInt catalan(long m) {
  if (m < 0) throw PreconditionError("negative Catalan index");
  BigInt c = binomial(2 * m, m);
  mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(m + 1));
  return c;
}

inline BigInt volume_recursive(const SnakeWord& w) {
  const int n = w.length();
  std::vector<BigInt> v(static_cast<std::size_t>(n + 2));
  auto at = [&](int i) -> BigInt& { return v[static_cast<std::size_t>(i + 1)]; };
  at(-1) = 1;
  at(0) = 2;
  for (int m = 1; m <= n; ++m) {
    int k = m - 1;
    while (k >= 1 && w.at(k) == w.at(m)) --k;
    at(m) = catalan(m - k + 1) * at(k) + (catalan(m - k + 2) - 2 * catalan(m - k + 1)) * at(k - 1);
  }
  return at(n);
}

inline BigInt volume_brute(const SnakeWord& w, std::size_t max_states = 1u << 24) {
  return count_linear_extensions(build_snake_poset(w), max_states);
}

inline Partition trim(Partition p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline bool is_partition(const Partition& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0) return false;
    if (i && p[i] > p[i - 1]) return false;
  }
  return true;
}

inline bool contained_in(const Partition& mu, const Partition& lam) {
  for (std::size_t i = 0; i < mu.size(); ++i) {
    int l = i < lam.size() ? lam[i] : 0;
    if (mu[i] > l) return false;
  }
  return true;
}

// Number of partitions inside lam: det( C(lam_j + 1, j - i + 1) ).
inline BigInt partitions_inside(const Partition& lam_in) {
  Partition lam = trim(lam_in);
  const std::size_t k = lam.size();
  std::vector<std::vector<BigInt>> m(k, std::vector<BigInt>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      m[i][j] = binomial(lam[j] + 1, static_cast<long>(j) - static_cast<long>(i) + 1);
  return bareiss_det(m);
}

// Partitions nu with mu <= nu <= lam, i.e. lattice paths through the skew
// region: det( C(lam_j - mu_i + 1, j - i + 1) ). Reduces to partitions_inside
// when mu is empty.
inline BigInt skew_chain_count(const Partition& lam_in, const Partition& mu_in) {
  Partition lam = trim(lam_in), mu = trim(mu_in);
  if (!is_partition(lam) || !is_partition(mu)) throw PreconditionError("not a partition");
  if (!contained_in(mu, lam)) throw PreconditionError("mu is not contained in lambda");
  const std::size_t k = lam.size();
  mu.resize(k, 0);
  auto entry = [](long top, long r) -> BigInt {
    if (r < 0) return 0;
    if (r == 0) return 1;
    if (top < 0) return 0;
    return binomial(top, r);
  };
  std::vector<std::vector<BigInt>> m(k, std::vector<BigInt>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      m[i][j] = entry(lam[j] - mu[i] + 1, static_cast<long>(j) - static_cast<long>(i) + 1);
  return bareiss_det(m);
}

// Minimum chain cover of a width-two poset by bipartite matching.
inline std::vector<std::vector<int>> two_chain_cover(const Poset& p) {
  const int n = p.size;
  std::vector<int> matched_to(static_cast<std::size_t>(n), -1);  // successor -> predecessor
  std::function<bool(int, Mask&)> augment = [&](int a, Mask& seen) -> bool {
    for (int b : bits_of(p.above[static_cast<std::size_t>(a)])) {
      if (has(seen, b)) continue;
      seen |= bit(b);
      if (matched_to[static_cast<std::size_t>(b)] < 0 || augment(matched_to[static_cast<std::size_t>(b)], seen)) {
        matched_to[static_cast<std::size_t>(b)] = a;
        return true;
      }
    }
    return false;
  };
  for (int a = 0; a < n; ++a) {
    Mask seen = 0;
    augment(a, seen);
  }
  std::vector<int> next(static_cast<std::size_t>(n), -1);
  for (int b = 0; b < n; ++b)
    if (matched_to[static_cast<std::size_t>(b)] >= 0) next[static_cast<std::size_t>(matched_to[static_cast<std::size_t>(b)])] = b;
  std::vector<std::vector<int>> chains;
  for (int a = 0; a < n; ++a) {
    if (matched_to[static_cast<std::size_t>(a)] >= 0) continue;
    std::vector<int> c = {a};
    while (next[static_cast<std::size_t>(c.back())] >= 0) c.push_back(next[static_cast<std::size_t>(c.back())]);
    chains.push_back(c);  // bottom first
  }
  if (chains.size() > 2) throw PreconditionError("poset has width greater than two");
  while (chains.size() < 2) chains.push_back({});
  return chains;
}

struct SkewShape {
  Partition lambda, mu;
};

// The distributive lattice of down-sets of a width-two poset drawn in the
// plane: coordinates (i, j) count the elements taken from the two chains.
// For each i the admissible j form an interval [lo_i, hi_i]; lattice paths
// through the region are the maximal chains. The row chain is the one holding
// a global minimum when there is one, which draws the lattice of Q_w in the
// orientation of the ribbon diagrams.
inline SkewShape skew_shape_of(const Poset& p) {
  auto chains = two_chain_cover(p);
  Mask mins = p.minimal_elements();
  if (popcount(mins) == 1 && !chains[1].empty() && chains[1].front() == lowest(mins)) std::swap(chains[0], chains[1]);
  const auto& rows = chains[0];
  const auto& cols = chains[1];
  const int a = static_cast<int>(rows.size()), b = static_cast<int>(cols.size());
  auto is_ideal = [&](Mask s) {
    for (int x : bits_of(s))
      if ((p.below[static_cast<std::size_t>(x)] & ~s) != 0) return false;
    return true;
  };
  std::vector<int> lo(static_cast<std::size_t>(a + 1)), hi(static_cast<std::size_t>(a + 1));
  Mask rmask = 0;
  for (int i = 0; i <= a; ++i) {
    if (i) rmask |= bit(rows[static_cast<std::size_t>(i - 1)]);
    int first = -1, last = -1;
    Mask cmask = 0;
    for (int j = 0; j <= b; ++j) {
      if (j) cmask |= bit(cols[static_cast<std::size_t>(j - 1)]);
      if (is_ideal(rmask | cmask)) {
        if (first < 0) first = j;
        if (last >= 0 && last != j - 1) throw PreconditionError("non-interval column range");
        last = j;
      }
    }
    if (first < 0) throw PreconditionError("empty column range");
    lo[static_cast<std::size_t>(i)] = first;
    hi[static_cast<std::size_t>(i)] = last;
  }
  SkewShape s;
  for (int i = a - 1; i >= 0; --i) s.lambda.push_back(hi[static_cast<std::size_t>(i)]);
  for (int i = a; i >= 1; --i) s.mu.push_back(lo[static_cast<std::size_t>(i)]);
  s.lambda = trim(s.lambda);
  s.mu = trim(s.mu);
  return s;
}

inline BigInt volume_skew(const SnakeWord& w) {
  SkewShape s = skew_shape_of(build_snake_poset(w));
  return skew_chain_count(s.lambda, s.mu);
}

struct MinMaxReport {
  int n = 0;
  BigInt min_volume, max_volume;
  std::vector<SnakeWord> argmin, argmax;
  std::vector<SnakeWord> violations;  // words outside [snake, ladder]
  bool ok = true;
};

inline MinMaxReport verify_minmax(int n) {
  if (n < 0 || n > 20) throw PreconditionError("length out of range");
  MinMaxReport r;
  r.n = n;
  BigInt lo = volume_recursive(snake_word(n)), hi = volume_recursive(ladder_word(n));
  bool first = true;
  for (const auto& w : all_words(n)) {
    BigInt v = volume_recursive(w);
    if (v < lo || v > hi) r.violations.push_back(w);
    if (first || v < r.min_volume) {
      r.min_volume = v;
      r.argmin.clear();
    }
    if (first || v > r.max_volume) {
      r.max_volume = v;
      r.argmax.clear();
    }
    first = false;
    if (v == r.min_volume) r.argmin.push_back(w);
    if (v == r.max_volume) r.argmax.push_back(w);
  }
  auto expect = [](const SnakeWord& s) {
    std::vector<SnakeWord> e = {s};
    if (s.length() > 0) e.push_back(flip_letters(s));
    std::sort(e.begin(), e.end());
    return e;
  };
  auto sorted = [](std::vector<SnakeWord> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  r.ok = r.violations.empty() && r.min_volume == lo && r.max_volume == hi;
  if (n >= 2) r.ok = r.ok && sorted(r.argmin) == expect(snake_word(n)) && sorted(r.argmax) == expect(ladder_word(n));
  return r;
}

}  // namespace snakeflip
