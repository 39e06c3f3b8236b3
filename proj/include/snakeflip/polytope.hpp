#pragma once

#include <cmath>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "core.hpp"
#include "lp.hpp"
#include "posets.hpp"

namespace snakeflip {

struct PointConfiguration {
  int dim = 0;
  std::vector<std::vector<int>> columns;  // affine coordinates
  std::vector<Mask> filters;              // filter per column, for order polytopes
  std::vector<std::string> labels;
  Poset poset;
  bool from_poset = false;

  int size() const { return static_cast<int>(columns.size()); }
  Mask all_columns() const { return size() == kMaskBits ? ~Mask{0} : bit(size()) - 1; }
  int index_of_filter(Mask f) const {
    for (int j = 0; j < size(); ++j)
      if (filters[static_cast<std::size_t>(j)] == f) return j;
    return -1;
  }
  // Homogenized column: coordinates followed by 1.
  std::vector<int> homogenized(int j) const {
    auto v = columns[static_cast<std::size_t>(j)];
    v.push_back(1);
    return v;
  }
};

inline PointConfiguration configuration_from_points(std::vector<std::vector<int>> pts) {
  PointConfiguration c;
  c.dim = pts.empty() ? 0 : static_cast<int>(pts[0].size());
  c.columns = std::move(pts);
  for (int j = 0; j < c.size(); ++j) c.labels.push_back(std::to_string(j));
  c.filters.assign(c.columns.size(), 0);
  if (c.size() > kMaskBits) throw OverflowError("too many columns");
  return c;
}

inline PointConfiguration order_polytope_vertices(const Poset& q) {
  FilterLattice L = filter_lattice(q);
  if (L.size() > kMaskBits) throw OverflowError("order polytope has more than 64 vertices");
  PointConfiguration c;
  c.dim = q.size;
  c.poset = q;
  c.from_poset = true;
  for (int i = 0; i < L.size(); ++i) {
    Mask f = L.filters[static_cast<std::size_t>(i)];
    std::vector<int> v(static_cast<std::size_t>(q.size), 0);
    for (int x : bits_of(f)) v[static_cast<std::size_t>(x)] = 1;
    c.columns.push_back(v);
    c.filters.push_back(f);
    c.labels.push_back(filter_label(q, L.generators[static_cast<std::size_t>(i)]));
  }
  return c;
}

using Simplex = Mask;

struct Triangulation {
  std::vector<Simplex> simplices;  // lexicographic by sorted index tuple

  void normalize() { std::sort(simplices.begin(), simplices.end(), LexLess{}); }
  std::size_t size() const { return simplices.size(); }
  bool operator==(const Triangulation& o) const { return simplices == o.simplices; }
  bool operator<(const Triangulation& o) const {
    return std::lexicographical_compare(simplices.begin(), simplices.end(), o.simplices.begin(), o.simplices.end(),
                                        LexLess{});
  }
};

inline Triangulation make_triangulation(std::vector<Simplex> s) {
  Triangulation t{std::move(s)};
  t.normalize();
  return t;
}

inline std::vector<int> simplex_vertices(Simplex s) { return bits_of(s); }

// One simplex per maximal chain of J(Q): the filters along the chain.
inline Triangulation canonical_triangulation(const PointConfiguration& cfg) {
  if (!cfg.from_poset) throw PreconditionError("configuration is not an order polytope");
  FilterLattice L = filter_lattice(cfg.poset);
  std::vector<Simplex> out;
  for_each_maximal_chain(L, [&](const std::vector<int>& chain) {
    Simplex s = 0;
    for (int f : chain) s |= bit(cfg.index_of_filter(L.filters[static_cast<std::size_t>(f)]));
    out.push_back(s);
    return true;
  });
  return make_triangulation(out);
}

inline BigInt det_of_columns(const PointConfiguration& cfg, const std::vector<int>& cols) {
  const std::size_t n = cols.size();
  const int h = cfg.dim + 1;
  if (static_cast<int>(n) != h) throw PreconditionError("determinant needs d+1 columns");
  double log_bound = 0;
  bool small = true;
  for (int j : cols) {
    double s = 1;
    for (int v : cfg.columns[static_cast<std::size_t>(j)]) {
      s += static_cast<double>(v) * v;
      if (std::abs(v) > (1 << 20)) small = false;
    }
    log_bound += 0.5 * std::log2(s);
  }
  if (small && log_bound < 61) {
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
    for (std::size_t c = 0; c < n; ++c) {
      const auto& v = cfg.columns[static_cast<std::size_t>(cols[c])];
      for (int r = 0; r < cfg.dim; ++r) m[static_cast<std::size_t>(r)][c] = v[static_cast<std::size_t>(r)];
      m[static_cast<std::size_t>(cfg.dim)][c] = 1;
    }
    return BigInt(static_cast<long>(bareiss_det_small(std::move(m))));
  }
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (std::size_t c = 0; c < n; ++c) {
    const auto& v = cfg.columns[static_cast<std::size_t>(cols[c])];
    for (int r = 0; r < cfg.dim; ++r) m[static_cast<std::size_t>(r)][c] = v[static_cast<std::size_t>(r)];
    m[static_cast<std::size_t>(cfg.dim)][c] = 1;
  }
  return bareiss_det(std::move(m));
}

inline BigInt simplex_volume(const PointConfiguration& cfg, Simplex s) {
  BigInt d = det_of_columns(cfg, bits_of(s));
  return abs(d);
}

inline bool is_unimodular(const PointConfiguration& cfg, const Triangulation& t) {
  for (Simplex s : t.simplices)
    if (simplex_volume(cfg, s) != 1) return false;
  return true;
}

struct Circuit {
  Mask plus = 0, minus = 0;
  Mask support() const { return plus | minus; }
  bool operator==(const Circuit&) const = default;
  bool operator<(const Circuit& o) const {
    return plus != o.plus ? plus < o.plus : minus < o.minus;
  }
};

// Stores the side holding the smallest column index as plus.
inline Circuit normalize_circuit(Circuit c) {
  if (c.plus == 0 || (c.minus != 0 && lowest(c.minus) < lowest(c.plus))) std::swap(c.plus, c.minus);
  return c;
}

inline Circuit reversed(Circuit c) { return {c.minus, c.plus}; }

struct TriangulationCheck {
  bool ok = false;
  bool union_ok = false;
  bool intersection_ok = false;
  bool full_dimensional = false;
  BigInt volume;
  std::string reason;
};

// Union by total volume; intersection of each pair by the circuit criterion:
// two simplices meet properly unless some oriented circuit has its positive
// part in one and its negative part in the other. Needs every circuit of the
// configuration.
inline TriangulationCheck check_triangulation(const PointConfiguration& cfg, const std::vector<Simplex>& simplices,
                                              const BigInt& target_volume, const std::vector<Circuit>& circuits) {
  TriangulationCheck r;
  r.volume = 0;
  r.full_dimensional = true;
  for (Simplex s : simplices) {
    if (popcount(s) != cfg.dim + 1) {
      r.full_dimensional = false;
      r.reason = "simplex of wrong cardinality";
      return r;
    }
    BigInt v = simplex_volume(cfg, s);
    if (v == 0) {
      r.full_dimensional = false;
      r.reason = "degenerate simplex";
      return r;
    }
    r.volume += v;
  }
  r.union_ok = r.volume == target_volume;
  r.intersection_ok = true;
  for (std::size_t a = 0; a < simplices.size() && r.intersection_ok; ++a) {
    if (std::count(simplices.begin(), simplices.end(), simplices[a]) > 1) {
      r.intersection_ok = false;
      r.reason = "repeated simplex";
      break;
    }
    for (std::size_t b = a + 1; b < simplices.size() && r.intersection_ok; ++b) {
      Simplex s = simplices[a], u = simplices[b];
      for (const auto& c : circuits) {
        if (((c.plus & ~s) == 0 && (c.minus & ~u) == 0) || ((c.minus & ~s) == 0 && (c.plus & ~u) == 0)) {
          r.intersection_ok = false;
          r.reason = "simplices " + std::to_string(a) + " and " + std::to_string(b) + " overlap";
          break;
        }
      }
    }
  }
  if (!r.union_ok && r.reason.empty()) r.reason = "volume mismatch";
  r.ok = r.union_ok && r.intersection_ok && r.full_dimensional;
  return r;
}

// Slow cross-check for one pair: the intersection of the two simplices lies in
// the convex hull of their shared vertices iff the LP below has optimum 0.
inline bool pair_meets_properly_lp(const PointConfiguration& cfg, Simplex s, Simplex u) {
  auto sv = bits_of(s), uv = bits_of(u);
  Mask shared = s & u;
  LinearProgram lp;
  lp.num_vars = static_cast<int>(sv.size() + uv.size());
  lp.objective.assign(static_cast<std::size_t>(lp.num_vars), 0);
  for (std::size_t i = 0; i < sv.size(); ++i)
    if (!has(shared, sv[i])) lp.objective[i] = 1;
  for (int r = 0; r <= cfg.dim; ++r) {
    std::vector<Rational> row(static_cast<std::size_t>(lp.num_vars), 0);
    for (std::size_t i = 0; i < sv.size(); ++i) row[i] = r < cfg.dim ? cfg.columns[static_cast<std::size_t>(sv[i])][static_cast<std::size_t>(r)] : 1;
    for (std::size_t i = 0; i < uv.size(); ++i)
      row[sv.size() + i] = -(r < cfg.dim ? cfg.columns[static_cast<std::size_t>(uv[i])][static_cast<std::size_t>(r)] : 1);
    lp.add_row(row, Sense::EQ, 0);
  }
  std::vector<Rational> norm(static_cast<std::size_t>(lp.num_vars), 0);
  for (std::size_t i = 0; i < sv.size(); ++i) norm[i] = 1;
  lp.add_row(norm, Sense::EQ, 1);
  LpResult res = solve_lp(lp);
  return res.status == LpStatus::Optimal && res.value == 0;
}

inline TriangulationCheck check_triangulation_lp(const PointConfiguration& cfg, const std::vector<Simplex>& simplices,
                                                 const BigInt& target_volume) {
  TriangulationCheck r = check_triangulation(cfg, simplices, target_volume, {});
  if (!r.full_dimensional) return r;
  r.intersection_ok = true;
  for (std::size_t a = 0; a < simplices.size() && r.intersection_ok; ++a)
    for (std::size_t b = a + 1; b < simplices.size() && r.intersection_ok; ++b)
      if (simplices[a] == simplices[b] || !pair_meets_properly_lp(cfg, simplices[a], simplices[b])) {
        r.intersection_ok = false;
        r.reason = "simplices " + std::to_string(a) + " and " + std::to_string(b) + " overlap";
      }
  r.ok = r.union_ok && r.intersection_ok;
  return r;
}

inline BigInt order_polytope_volume(const PointConfiguration& cfg) {
  if (!cfg.from_poset) throw PreconditionError("configuration is not an order polytope");
  return count_linear_extensions(cfg.poset);
}

inline std::vector<BigInt> gkz_vector(const PointConfiguration& cfg, const Triangulation& t) {
  std::vector<BigInt> g(static_cast<std::size_t>(cfg.size()), 0);
  for (Simplex s : t.simplices) {
    BigInt v = simplex_volume(cfg, s);
    for (int j : bits_of(s)) g[static_cast<std::size_t>(j)] += v;
  }
  return g;
}

// Cheaper variant for unimodular triangulations.
inline std::vector<int> incidence_vector(int ncols, const Triangulation& t) {
  std::vector<int> g(static_cast<std::size_t>(ncols), 0);
  for (Simplex s : t.simplices)
    for (int j : bits_of(s)) ++g[static_cast<std::size_t>(j)];
  return g;
}

}  // namespace snakeflip
