#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "circuits.hpp"
#include "core.hpp"
#include "lp.hpp"
#include "polytope.hpp"
#include "posets.hpp"
#include "snake.hpp"
#include "twists.hpp"

namespace snakeflip {

struct CanonicalOrder {
  std::vector<int> labels;  // x indices in order
  std::vector<int> rho;     // rho[x] = position of x
};

// x_0, x_2, x_1, x_4, x_3, ..., x_{2k+4}, x_{2k+3}, x_{2k+5}.
inline CanonicalOrder canonical_order(const LadderDecomposition& dec) {
  const int n = static_cast<int>(dec.x_to_element.size());
  if (n < 6 || n % 2) throw PreconditionError("lattice is not of snake type");
  CanonicalOrder o;
  o.labels.push_back(0);
  for (int j = 1; 2 * j < n - 1; ++j) {
    o.labels.push_back(2 * j);
    o.labels.push_back(2 * j - 1);
  }
  o.labels.push_back(n - 1);
  o.rho.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < o.labels.size(); ++i) o.rho[static_cast<std::size_t>(o.labels[i])] = static_cast<int>(i);
  return o;
}

inline std::string order_string(const CanonicalOrder& o) {
  std::string s;
  for (int x : o.labels) s += (s.empty() ? "x" : ",x") + std::to_string(x);
  return s;
}

struct HeightFunction {
  std::vector<BigInt> heights;  // per column
};

// omega_tau(x) = 2^rho(tau(x)); the identity twist gives the canonical heights.
inline HeightFunction height_function(const TwistSetup& s, const Twist& tau) {
  const SnakeContext& c = *s.ctx;
  CanonicalOrder o = canonical_order(s.dec);
  HeightFunction h;
  h.heights.assign(static_cast<std::size_t>(c.cfg.size()), 0);
  for (int e = 0; e < c.lattice.size; ++e) {
    int te = tau.perm[static_cast<std::size_t>(e)];
    int x = s.dec.element_to_x[static_cast<std::size_t>(te)];
    BigInt v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(o.rho[static_cast<std::size_t>(x)]));
    h.heights[static_cast<std::size_t>(c.element_column[static_cast<std::size_t>(e)])] = v;
  }
  return h;
}

namespace detail {
inline std::vector<std::vector<BigInt>> homogenized_matrix(const PointConfiguration& cfg, const std::vector<int>& cols) {
  std::vector<std::vector<BigInt>> m(static_cast<std::size_t>(cfg.dim + 1), std::vector<BigInt>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (int r = 0; r < cfg.dim; ++r)
      m[static_cast<std::size_t>(r)][c] = cfg.columns[static_cast<std::size_t>(cols[c])][static_cast<std::size_t>(r)];
    m[static_cast<std::size_t>(cfg.dim)][c] = 1;
  }
  return m;
}
}  // namespace detail

// Psi_{B,p}(omega) = sign det(A|_B) * det(A^omega|_B : (p, omega(p))).
inline BigInt folding_form(const PointConfiguration& cfg, Simplex b, int p, const HeightFunction& w) {
  if (has(b, p)) return 0;
  auto cols = bits_of(b);
  if (static_cast<int>(cols.size()) != cfg.dim + 1) throw PreconditionError("basis needs d+1 columns");
  BigInt d = bareiss_det(detail::homogenized_matrix(cfg, cols));
  if (d == 0) throw PreconditionError("degenerate basis");
  cols.push_back(p);
  auto m = detail::homogenized_matrix(cfg, cols);
  std::vector<BigInt> hrow;
  for (int c : cols) hrow.push_back(w.heights[static_cast<std::size_t>(c)]);
  m.push_back(hrow);
  BigInt l = bareiss_det(std::move(m));
  return sgn(d) * l;
}

struct Wall {
  Simplex s1 = 0, s2 = 0;
  int v1 = -1, v2 = -1;  // v1 in s1 \ s2, v2 in s2 \ s1
};

inline std::vector<Wall> walls(const Triangulation& t) {
  std::unordered_map<Mask, int> facet;
  std::vector<Wall> out;
  for (std::size_t i = 0; i < t.simplices.size(); ++i) {
    Simplex s = t.simplices[i];
    for (int v : bits_of(s)) {
      auto [it, fresh] = facet.emplace(s & ~bit(v), static_cast<int>(i));
      if (fresh) continue;
      Simplex o = t.simplices[static_cast<std::size_t>(it->second)];
      out.push_back({o, s, lowest(o & ~s), v});
    }
  }
  std::sort(out.begin(), out.end(), [](const Wall& a, const Wall& b) {
    return std::tie(a.s1, a.s2) < std::tie(b.s1, b.s2);
  });
  return out;
}

struct WallCheck {
  Wall wall;
  BigInt psi1, psi2;  // Psi_{s2, v1} and Psi_{s1, v2}
};

struct FoldingReport {
  std::vector<WallCheck> checks;
  bool ok = false;
  int first_violation = -1;
};

// Local folding condition: every wall's two folding forms are positive.
inline FoldingReport verify_local_folding(const PointConfiguration& cfg, const Triangulation& t, const HeightFunction& w) {
  FoldingReport r;
  r.ok = true;
  for (const Wall& x : walls(t)) {
    WallCheck c{x, folding_form(cfg, x.s2, x.v1, w), folding_form(cfg, x.s1, x.v2, w)};
    if ((c.psi1 <= 0 || c.psi2 <= 0) && r.ok) {
      r.ok = false;
      r.first_violation = static_cast<int>(r.checks.size());
    }
    r.checks.push_back(std::move(c));
  }
  return r;
}

// A linear form on heights, positive exactly when the wall folds upward.
struct WallForm {
  std::vector<std::pair<int, BigInt>> terms;  // (column, coefficient), sorted by column
  bool operator<(const WallForm& o) const { return terms < o.terms; }
  bool operator==(const WallForm& o) const { return terms == o.terms; }
};

// The unique circuit inside s1 u s2, oriented so that the opposite vertices
// carry positive coefficients. Psi_{s2,v1} is a positive multiple of it.
inline WallForm wall_form(const PointConfiguration& cfg, const Wall& x, const std::vector<Circuit>* circuits) {
  const Mask u = x.s1 | x.s2;
  WallForm f;
  if (circuits) {
    for (const Circuit& z : *circuits) {
      if ((z.support() & ~u) != 0) continue;
      if (!unit_dependence(cfg, z)) break;
      bool plus = has(z.plus, x.v1);
      for (int j : bits_of(z.support())) f.terms.push_back({j, BigInt(has(z.plus, j) == plus ? 1 : -1)});
      return f;
    }
  }
  auto cols = bits_of(u);
  auto ker = kernel_vector(cfg, cols);
  if (ker.empty()) throw PreconditionError("wall without a unique circuit");
  std::size_t at = 0;
  while (cols[at] != x.v1) ++at;
  int s = sgn(ker[at]);
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (ker[i] != 0) f.terms.push_back({cols[i], ker[i] * s});
  return f;
}

inline std::vector<WallForm> wall_forms(const PointConfiguration& cfg, const Triangulation& t,
                                        const std::vector<Circuit>* circuits) {
  std::vector<WallForm> out;
  for (const Wall& x : walls(t)) out.push_back(wall_form(cfg, x, circuits));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class H>
inline bool forms_positive(const std::vector<WallForm>& forms, const std::vector<H>& w) {
  for (const auto& f : forms) {
    H s = 0;
    for (auto& [c, a] : f.terms) s += a * w[static_cast<std::size_t>(c)];
    if (s <= 0) return false;
  }
  return true;
}

struct RegularityResult {
  bool regular = false;
  std::vector<BigInt> heights;      // integral witness, min 0, when regular
  std::vector<Rational> weights;    // y >= 0, sum 1, with sum y_k f_k = 0, when not
  std::size_t forms = 0;
  long pivots = 0;
  std::string method;
};

namespace detail {
inline std::vector<BigInt> integral_heights(const std::vector<Rational>& w) {
  BigInt l = 1;
  for (auto& v : w) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  std::vector<BigInt> h;
  for (auto& v : w) h.push_back(Rational(v * l).get_num());
  BigInt lo = *std::min_element(h.begin(), h.end());
  for (auto& v : h) v -= lo;
  return h;
}
}  // namespace detail

// Direct form of the test: maximize eps subject to f(omega) >= eps for every
// wall form, eps <= 1, omega >= 0. Regular iff the optimum is positive.
inline RegularityResult is_regular_primal(const PointConfiguration& cfg, const Triangulation& t,
                                          const std::vector<Circuit>* circuits = nullptr) {
  auto forms = wall_forms(cfg, t, circuits);
  const int n = cfg.size();
  LinearProgram lp;
  lp.num_vars = n + 1;
  lp.objective.assign(static_cast<std::size_t>(n + 1), 0);
  lp.objective[static_cast<std::size_t>(n)] = 1;
  for (auto& f : forms) {
    std::vector<Rational> row(static_cast<std::size_t>(n + 1), 0);
    for (auto& [c, a] : f.terms) row[static_cast<std::size_t>(c)] = -Rational(a);
    row[static_cast<std::size_t>(n)] = 1;
    lp.add_row(row, Sense::LE, 0);
  }
  std::vector<Rational> cap(static_cast<std::size_t>(n + 1), 0);
  cap[static_cast<std::size_t>(n)] = 1;
  lp.add_row(cap, Sense::LE, 1);
  LpResult res = solve_lp(lp);
  RegularityResult r;
  r.forms = forms.size();
  r.pivots = res.pivots;
  r.method = "primal";
  r.regular = res.status == LpStatus::Optimal && res.value > 0;
  if (r.regular) {
    std::vector<Rational> w(res.x.begin(), res.x.begin() + n);
    r.heights = detail::integral_heights(w);
    if (!forms_positive(forms, r.heights)) throw std::logic_error("LP witness fails the wall forms");
  }
  return r;
}

// Regularity through the alternative: either some omega makes every wall form
// positive, or a convex combination of the forms vanishes. Forms are unchanged
// by affine functions, so omega is fixed to zero on one simplex and only the
// remaining columns enter. The LP searches for the vanishing combination; when
// that fails its Farkas multipliers are the heights.
inline RegularityResult is_regular(const PointConfiguration& cfg, const Triangulation& t,
                                   const std::vector<Circuit>* circuits = nullptr) {
  auto forms = wall_forms(cfg, t, circuits);
  RegularityResult r;
  r.forms = forms.size();
  r.method = "alternative";
  const int n = cfg.size();
  if (forms.empty()) {
    r.regular = true;
    r.heights.assign(static_cast<std::size_t>(n), 0);
    return r;
  }
  const Mask base = t.simplices.front();
  std::vector<int> free_cols;
  std::vector<int> row_of(static_cast<std::size_t>(n), -1);
  for (int j = 0; j < n; ++j)
    if (!has(base, j)) {
      row_of[static_cast<std::size_t>(j)] = static_cast<int>(free_cols.size());
      free_cols.push_back(j);
    }
  const int k = static_cast<int>(forms.size());
  LinearProgram lp;
  lp.num_vars = k;
  lp.objective.assign(static_cast<std::size_t>(k), 0);
  std::vector<std::vector<Rational>> rows(free_cols.size() + 1, std::vector<Rational>(static_cast<std::size_t>(k), 0));
  for (int i = 0; i < k; ++i) {
    for (auto& [c, a] : forms[static_cast<std::size_t>(i)].terms)
      if (row_of[static_cast<std::size_t>(c)] >= 0) rows[static_cast<std::size_t>(row_of[static_cast<std::size_t>(c)])][static_cast<std::size_t>(i)] = a;
    rows.back()[static_cast<std::size_t>(i)] = 1;
  }
  for (std::size_t i = 0; i < free_cols.size(); ++i) lp.add_row(rows[i], Sense::EQ, 0);
  lp.add_row(rows.back(), Sense::EQ, 1);
  LpResult res = solve_lp(lp);
  r.pivots = res.pivots;
  if (res.status == LpStatus::Optimal) {
    r.regular = false;
    r.weights = res.x;
    return r;
  }
  std::vector<Rational> w(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < free_cols.size(); ++i) w[static_cast<std::size_t>(free_cols[i])] = res.farkas[i];
  r.heights = detail::integral_heights(w);
  if (!forms_positive(forms, r.heights)) {
    // Multipliers from a degenerate final basis; fall back to the slack LP.
    RegularityResult p = is_regular_primal(cfg, t, circuits);
    p.pivots += r.pivots;
    return p;
  }
  r.regular = true;
  return r;
}

}  // namespace snakeflip
