#pragma once

#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "core.hpp"
#include "polytope.hpp"
#include "snake.hpp"
#include "words.hpp"

namespace snakeflip {

// Exact kernel of the homogenized columns, as a primitive integer vector;
// empty unless the kernel is one-dimensional.
inline std::vector<BigInt> kernel_vector(const PointConfiguration& cfg, const std::vector<int>& cols) {
  const int h = cfg.dim + 1;
  const int k = static_cast<int>(cols.size());
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(h), std::vector<Rational>(static_cast<std::size_t>(k)));
  for (int c = 0; c < k; ++c) {
    auto v = cfg.homogenized(cols[static_cast<std::size_t>(c)]);
    for (int r = 0; r < h; ++r) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v[static_cast<std::size_t>(r)];
  }
  std::vector<int> pivcol;
  int row = 0;
  for (int c = 0; c < k && row < h; ++c) {
    int p = row;
    while (p < h && m[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)] == 0) ++p;
    if (p == h) continue;
    std::swap(m[static_cast<std::size_t>(p)], m[static_cast<std::size_t>(row)]);
    Rational inv = 1 / m[static_cast<std::size_t>(row)][static_cast<std::size_t>(c)];
    for (auto& x : m[static_cast<std::size_t>(row)]) x *= inv;
    for (int r = 0; r < h; ++r) {
      if (r == row || m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == 0) continue;
      Rational f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      for (int j = 0; j < k; ++j) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -= f * m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
    }
    pivcol.push_back(c);
    ++row;
  }
  if (static_cast<int>(pivcol.size()) != k - 1) return {};
  int freec = 0;
  while (freec < k && std::find(pivcol.begin(), pivcol.end(), freec) != pivcol.end()) ++freec;
  std::vector<Rational> x(static_cast<std::size_t>(k), 0);
  x[static_cast<std::size_t>(freec)] = 1;
  for (std::size_t r = 0; r < pivcol.size(); ++r) x[static_cast<std::size_t>(pivcol[r])] = -m[r][static_cast<std::size_t>(freec)];
  BigInt l = 1;
  for (auto& v : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  std::vector<BigInt> out;
  BigInt g = 0;
  for (auto& v : x) {
    Rational s = v * l;
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
  }
  for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return out;
}

// Oriented circuit on a support, or an empty circuit if the support is not a
// minimal dependent set.
inline Circuit circuit_on_support(const PointConfiguration& cfg, Mask support) {
  auto cols = bits_of(support);
  auto ker = kernel_vector(cfg, cols);
  if (ker.empty()) return {};
  Circuit c;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (ker[i] == 0) return {};
    (ker[i] > 0 ? c.plus : c.minus) |= bit(cols[i]);
  }
  return normalize_circuit(c);
}

// Exact check that plus - minus is an affine dependence with unit coefficients.
inline bool unit_dependence(const PointConfiguration& cfg, const Circuit& c) {
  for (int r = 0; r <= cfg.dim; ++r) {
    long s = 0;
    for (int j : bits_of(c.plus)) s += r < cfg.dim ? cfg.columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] : 1;
    for (int j : bits_of(c.minus)) s -= r < cfg.dim ? cfg.columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] : 1;
    if (s != 0) return false;
  }
  return true;
}

// Gamma(H): columns lying in an odd number of the selected squares, signed by
// summing the square relations with signs that flip across each chord step.
inline Circuit circuit_from_subgraph(const SnakeContext& ctx, Mask h) {
  if (!is_in_V(ctx.word)) throw PreconditionError("word contains LRL or RLR");
  if (!is_connected_mask(ctx.graph, h)) throw PreconditionError("subgraph is empty or disconnected");
  std::vector<int> coef(static_cast<std::size_t>(ctx.cfg.size()), 0);
  int sign = 1, prev = -1;
  Mask odd = 0;
  for (int i : bits_of(h)) {
    if (prev >= 0 && i - prev == 2) sign = -sign;
    prev = i;
    const Square& s = ctx.squares[static_cast<std::size_t>(i)];
    auto col = [&](int e) { return ctx.element_column[static_cast<std::size_t>(e)]; };
    coef[static_cast<std::size_t>(col(s.top))] += sign;
    coef[static_cast<std::size_t>(col(s.bottom))] += sign;
    coef[static_cast<std::size_t>(col(s.left))] -= sign;
    coef[static_cast<std::size_t>(col(s.right))] -= sign;
    odd ^= ctx.square_columns(i);
  }
  Circuit c;
  bool units = true;
  for (int j = 0; j < ctx.cfg.size(); ++j) {
    int v = coef[static_cast<std::size_t>(j)];
    if (v == 1) c.plus |= bit(j);
    if (v == -1) c.minus |= bit(j);
    if (v < -1 || v > 1) units = false;
    if ((v != 0) != has(odd, j)) units = false;
  }
  c = normalize_circuit(c);
  if (units && unit_dependence(ctx.cfg, c) && !circuit_on_support(ctx.cfg, c.support()).support()) units = false;
  if (units && unit_dependence(ctx.cfg, c)) return c;
  // Signs re-derived from the exact kernel of the odd-count set.
  Circuit exact = circuit_on_support(ctx.cfg, odd);
  if (!exact.support()) throw PreconditionError("odd-count set is not a circuit");
  return exact;
}

inline std::vector<Mask> subgraphs_of(const SnakeContext& ctx) { return connected_induced_subgraphs(ctx.graph); }

inline std::vector<Circuit> all_circuits(const SnakeContext& ctx) {
  if (!is_in_V(ctx.word)) throw PreconditionError("word contains LRL or RLR");
  std::vector<Circuit> out;
  for (Mask h : subgraphs_of(ctx)) out.push_back(circuit_from_subgraph(ctx, h));
  return out;
}

namespace detail {
inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime), hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t r = lo + hi;
  return r >= kPrime ? r - kPrime : r;
}
inline std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }
inline std::uint64_t tomod(long v) { return v >= 0 ? static_cast<std::uint64_t>(v) % kPrime : kPrime - (static_cast<std::uint64_t>(-v) % kPrime); }
}  // namespace detail

// All minimal affinely dependent column sets. Each circuit Z is the
// fundamental circuit of Z minus its largest index, so a depth-first walk over
// independent sets in increasing index order meets every circuit. Rank is
// computed modulo 2^61-1, which is exact while every minor is below the
// modulus (guarded by Hadamard's bound); orientations come from the exact
// rational kernel.
inline std::vector<Circuit> circuits_brute(const PointConfiguration& cfg, std::size_t budget = 50'000'000) {
  using namespace detail;
  const int h = cfg.dim + 1, n = cfg.size();
  double logb = 0;
  for (int j = 0; j < n; ++j) {
    double s = 1;
    for (int v : cfg.columns[static_cast<std::size_t>(j)]) s += static_cast<double>(v) * v;
    logb = std::max(logb, 0.5 * std::log2(s));
  }
  if (logb * h >= 60) throw OverflowError("configuration too large for the modular rank oracle");
  struct Row {
    std::vector<std::uint64_t> v;     // reduced vector, length h
    std::vector<std::uint64_t> comb;  // combination over set positions
    int piv;
  };
  std::set<Mask> supports;
  std::vector<int> set;
  std::size_t steps = 0;
  std::function<void(const std::vector<Row>&, int)> dfs = [&](const std::vector<Row>& basis, int start) {
    for (int c = start; c < n; ++c) {
      if (++steps > budget) throw BudgetError("circuit enumeration budget exceeded");
      const std::size_t pos = set.size();
      std::vector<std::uint64_t> r(static_cast<std::size_t>(h));
      auto col = cfg.homogenized(c);
      for (int i = 0; i < h; ++i) r[static_cast<std::size_t>(i)] = tomod(col[static_cast<std::size_t>(i)]);
      std::vector<std::uint64_t> e(pos + 1, 0);
      e[pos] = 1;
      for (const Row& b : basis) {
        std::uint64_t x = r[static_cast<std::size_t>(b.piv)];
        if (!x) continue;
        std::uint64_t f = mulmod(x, invmod(b.v[static_cast<std::size_t>(b.piv)]));
        for (int i = 0; i < h; ++i) r[static_cast<std::size_t>(i)] = submod(r[static_cast<std::size_t>(i)], mulmod(f, b.v[static_cast<std::size_t>(i)]));
        for (std::size_t t = 0; t < b.comb.size(); ++t) e[t] = submod(e[t], mulmod(f, b.comb[t]));
      }
      int piv = -1;
      for (int i = 0; i < h; ++i)
        if (r[static_cast<std::size_t>(i)]) {
          piv = i;
          break;
        }
      if (piv < 0) {
        Mask z = bit(c);
        for (std::size_t t = 0; t < pos; ++t)
          if (e[t]) z |= bit(set[t]);
        supports.insert(z);
        continue;
      }
      std::vector<Row> next = basis;
      for (auto& b : next) b.comb.resize(pos + 1, 0);
      next.push_back({r, e, piv});
      set.push_back(c);
      dfs(next, c + 1);
      set.pop_back();
    }
  };
  dfs({}, 0);
  std::vector<Circuit> out;
  for (Mask z : supports) {
    Circuit ci = circuit_on_support(cfg, z);
    if (!ci.support()) throw PreconditionError("fundamental circuit failed exact check");
    out.push_back(ci);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::pair<int, int> circuit_size_bounds(const SnakeWord& w) {
  if (!is_in_V(w)) throw PreconditionError("word contains LRL or RLR");
  return {4, 4 + 2 * turns(w)};
}

inline std::vector<Circuit> sorted_circuits(std::vector<Circuit> c) {
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace snakeflip
