#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "circuits.hpp"
#include "flips.hpp"
#include "graphs.hpp"
#include "regularity.hpp"
#include "snake.hpp"
#include "volumes.hpp"

namespace snakeflip {

// Word whose meet-irreducible poset is the snake S_n: L followed by
// alternating pairs, LRRLLRR... of length 2n.
inline SnakeWord snake_q_word(int n) {
  std::string s;
  for (int i = 1; i <= 2 * n; ++i) s += (i == 1 || ((i - 2) / 2) % 2 == 1) ? 'L' : 'R';
  return SnakeWord(s);
}

// LR^{n-2}.
inline SnakeWord near_ladder_word(int n) {
  if (n < 3) throw PreconditionError("n must be at least 3");
  return SnakeWord("L" + std::string(static_cast<std::size_t>(n - 2), 'R'));
}

inline BigInt conjectured_regular_count(int n) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n + 1));
  return p * catalan(2 * n + 1);
}

inline BigInt conjectured_dual_count(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n - 2; ++i) f *= i;
  return 4 * n * f;
}

// Every triangulation of a configuration, found without flips: the simplex
// through a generic interior point is chosen first, then each open interior
// facet is closed by the one simplex across it. The next facet is a function of
// the chosen set, so each triangulation is produced exactly once.
inline std::vector<Triangulation> all_triangulations(const PointConfiguration& cfg, const std::vector<Circuit>& circuits,
                                                     const BigInt& volume, std::size_t max_results = 1'000'000) {
  const int n = cfg.size(), h = cfg.dim + 1;
  if (n > 24) throw OverflowError("configuration too large for exhaustive enumeration");
  std::vector<Simplex> simplices;
  std::vector<int> cur;
  std::function<void(int)> gen = [&](int from) {
    if (static_cast<int>(cur.size()) == h) {
      if (det_of_columns(cfg, cur) != 0) simplices.push_back(mask_of(cur));
      return;
    }
    for (int j = from; j < n && n - j >= h - static_cast<int>(cur.size()); ++j) {
      cur.push_back(j);
      gen(j + 1);
      cur.pop_back();
    }
  };
  gen(0);
  std::unordered_map<Mask, std::vector<Simplex>> by_facet;
  for (Simplex s : simplices)
    for (int v : bits_of(s)) by_facet[s & ~bit(v)].push_back(s);
  // Boundary facets: every column on one side of the hyperplane.
  std::unordered_map<Mask, bool> boundary;
  auto is_boundary = [&](Mask f) {
    auto it = boundary.find(f);
    if (it != boundary.end()) return it->second;
    bool pos = false, neg = false;
    auto cols = bits_of(f);
    for (int j = 0; j < n && !(pos && neg); ++j) {
      if (has(f, j)) continue;
      cols.push_back(j);
      int s = sgn(det_of_columns(cfg, cols));
      cols.pop_back();
      pos |= s > 0;
      neg |= s < 0;
    }
    return boundary[f] = !(pos && neg);
  };
  auto side = [&](Mask f, int j) {
    auto cols = bits_of(f);
    cols.push_back(j);
    return sgn(det_of_columns(cfg, cols));
  };
  auto compatible = [&](Simplex a, Simplex b) {
    for (const Circuit& z : circuits)
      if (((z.plus & ~a) == 0 && (z.minus & ~b) == 0) || ((z.minus & ~a) == 0 && (z.plus & ~b) == 0)) return false;
    return true;
  };
  // Generic point: strictly inside exactly one simplex of any triangulation.
  std::vector<Rational> p(static_cast<std::size_t>(h), 0);
  Rational total = 0;
  for (int j = 0; j < n; ++j) {
    Rational wgt(1, 7 + 3 * j + j * j);
    auto col = cfg.homogenized(j);
    for (int r = 0; r < h; ++r) p[static_cast<std::size_t>(r)] += wgt * col[static_cast<std::size_t>(r)];
    total += wgt;
  }
  for (auto& x : p) x /= total;
  auto contains_point = [&](Simplex s) -> int {
    // Barycentric coordinates by Cramer's rule: +1 inside, -1 outside, 0 degenerate.
    auto cols = bits_of(s);
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(h), std::vector<Rational>(static_cast<std::size_t>(h + 1)));
    for (int c = 0; c < h; ++c) {
      auto v = cfg.homogenized(cols[static_cast<std::size_t>(c)]);
      for (int r = 0; r < h; ++r) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = v[static_cast<std::size_t>(r)];
    }
    for (int r = 0; r < h; ++r) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(h)] = p[static_cast<std::size_t>(r)];
    for (int c = 0; c < h; ++c) {
      int piv = c;
      while (m[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)] == 0) ++piv;
      std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(c)]);
      for (int r = 0; r < h; ++r) {
        if (r == c || m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == 0) continue;
        Rational f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] / m[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
        for (int k = c; k <= h; ++k) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -= f * m[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
      }
    }
    int result = 1;
    for (int c = 0; c < h; ++c) {
      Rational x = m[static_cast<std::size_t>(c)][static_cast<std::size_t>(h)] / m[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
      if (x == 0) return 0;
      if (x < 0) result = -1;
    }
    return result;
  };
  std::vector<Simplex> start;
  for (Simplex s : simplices) {
    int c = contains_point(s);
    if (c == 0) throw std::logic_error("interior point is not generic");
    if (c > 0) start.push_back(s);
  }
  std::vector<Triangulation> out;
  std::vector<Simplex> chosen;
  std::unordered_set<Mask> chosen_set;
  std::function<void()> grow = [&]() {
    if (out.size() >= max_results) throw BudgetError("too many triangulations");
    // Smallest open interior facet of the chosen simplices.
    Mask open = 0;
    Simplex owner = 0;
    bool found = false;
    for (Simplex s : chosen)
      for (int v : bits_of(s)) {
        Mask f = s & ~bit(v);
        if (found && f >= open) continue;
        int inside = 0;
        for (Simplex t : by_facet[f]) inside += chosen_set.count(t) ? 1 : 0;
        if (inside >= 2 || is_boundary(f)) continue;
        open = f;
        owner = s;
        found = true;
      }
    if (!found) {
      BigInt vol = 0;
      for (Simplex s : chosen) vol += simplex_volume(cfg, s);
      if (vol == volume) out.push_back(make_triangulation(chosen));
      return;
    }
    const int apex = lowest(owner & ~open);
    const int apex_side = side(open, apex);
    for (Simplex t : by_facet[open]) {
      if (t == owner || side(open, lowest(t & ~open)) == apex_side) continue;
      bool ok = true;
      for (Simplex s : chosen)
        if (!compatible(s, t)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(t);
      chosen_set.insert(t);
      grow();
      chosen_set.erase(t);
      chosen.pop_back();
    }
  };
  for (Simplex s : start) {
    chosen = {s};
    chosen_set = {s};
    grow();
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ConjectureReport {
  std::string id;
  std::string subject;
  bool holds = false;
  bool partial = false;
  std::vector<std::pair<std::string, std::string>> facts;  // ordered key/value lines
  void add(const std::string& k, const std::string& v) { facts.push_back({k, v}); }
  template <class T>
  void addn(const std::string& k, const T& v) {
    std::ostringstream s;
    s << v;
    facts.push_back({k, s.str()});
  }
};

struct ConjectureOptions {
  Budget budget;
  int threads = 1;
};

struct ExploredWord {
  SnakeContext ctx;
  std::vector<Circuit> circuits;
  FlipGraph graph;
  std::vector<bool> regular;
};

inline ExploredWord explore_word(const SnakeWord& w, const ConjectureOptions& o, bool regularity) {
  ExploredWord e{make_context(w), {}, {}, {}};
  e.circuits = all_circuits(e.ctx);
  ExploreOptions opt;
  opt.budget = o.budget;
  opt.threads = o.threads;
  e.graph = explore_flip_graph(e.ctx.cfg, canonical_triangulation(e.ctx.cfg), e.circuits, opt);
  if (regularity) {
    e.regular.assign(e.graph.size(), false);
    std::vector<char> flag(e.graph.size(), 0);
    detail::parallel_for(e.graph.size(), o.threads, [&](std::size_t i) {
      flag[i] = is_regular(e.ctx.cfg, e.graph.nodes[i], &e.circuits).regular ? 1 : 0;
    });
    for (std::size_t i = 0; i < flag.size(); ++i) e.regular[i] = flag[i] != 0;
  }
  return e;
}

// Flip graph of regular triangulations is k-regular, k = #columns - d - 1.
inline ConjectureReport conjecture_k_regular(const SnakeWord& w, const ConjectureOptions& o) {
  ConjectureReport r;
  r.id = "6.1";
  r.subject = w.display();
  ExploredWord e = explore_word(w, o, true);
  const int k = e.ctx.cfg.size() - e.ctx.cfg.dim - 1;
  std::vector<int> deg(e.graph.size(), 0);
  for (auto& x : e.graph.edges)
    if (e.regular[static_cast<std::size_t>(x.a)] && e.regular[static_cast<std::size_t>(x.b)]) {
      ++deg[static_cast<std::size_t>(x.a)];
      ++deg[static_cast<std::size_t>(x.b)];
    }
  std::map<int, int> hist;
  std::size_t nreg = 0;
  for (std::size_t i = 0; i < deg.size(); ++i)
    if (e.regular[i]) {
      ++hist[deg[i]];
      ++nreg;
    }
  std::string hs;
  for (auto [d, c] : hist) hs += (hs.empty() ? "" : " ") + std::to_string(d) + ":" + std::to_string(c);
  r.addn("secondary_dimension", k);
  r.addn("nodes", e.graph.size());
  r.addn("regular_nodes", nreg);
  r.add("degree_histogram", hs);
  r.partial = e.graph.partial;
  r.holds = !r.partial && hist.size() == 1 && hist.begin()->first == k;
  return r;
}

// A regular triangulation whose dual graph differs from the canonical one.
inline ConjectureReport conjecture_dual_graph(const SnakeWord& w, const ConjectureOptions& o) {
  ConjectureReport r;
  r.id = "6.2";
  r.subject = w.display();
  ExploredWord e = explore_word(w, o, true);
  Graph can = dual_graph(e.graph.nodes[0]);
  auto inv = refinement_invariant(can);
  std::size_t witness = 0, differing = 0;
  bool found = false;
  for (std::size_t i = 0; i < e.graph.size(); ++i) {
    if (!e.regular[i]) continue;
    Graph g = dual_graph(e.graph.nodes[i]);
    if (refinement_invariant(g) == inv && graphs_isomorphic(g, can)) continue;
    ++differing;
    if (!found) witness = i;
    found = true;
  }
  r.addn("turns", turns(w));
  r.addn("nodes", e.graph.size());
  r.addn("non_isomorphic_regular", differing);
  if (found) r.add("witness", e.graph.name(static_cast<int>(witness)));
  r.partial = e.graph.partial;
  r.holds = turns(w) == 0 ? !found : found;
  return r;
}

// Triangulations of O(Q_w), w = eps L R^{n-2}, with dual graph isomorphic to
// the canonical one: 4n(n-2)!.
inline ConjectureReport conjecture_dual_count(int n, const ConjectureOptions& o) {
  ConjectureReport r;
  r.id = "6.3";
  SnakeWord w = near_ladder_word(n);
  r.subject = w.display();
  ExploredWord e = explore_word(w, o, false);
  Graph can = dual_graph(e.graph.nodes[0]);
  auto inv = refinement_invariant(can);
  std::size_t count = 0;
  for (auto& t : e.graph.nodes) {
    Graph g = dual_graph(t);
    if (refinement_invariant(g) == inv && graphs_isomorphic(g, can)) ++count;
  }
  BigInt expect = conjectured_dual_count(n);
  r.addn("n", n);
  r.addn("nodes", e.graph.size());
  r.addn("isomorphic_dual", count);
  r.addn("expected", expect);
  r.partial = e.graph.partial;
  r.holds = !r.partial && BigInt(static_cast<unsigned long>(count)) == expect;
  return r;
}

// Regular triangulations of O(S_n): 2^{n+1} Cat(2n+1). For small n every
// triangulation is also enumerated without flips and compared.
inline ConjectureReport conjecture_regular_count(int n, const ConjectureOptions& o, bool exhaustive) {
  ConjectureReport r;
  r.id = "6.4";
  SnakeWord w = snake_q_word(n);
  r.subject = w.display();
  ExploredWord e = explore_word(w, o, true);
  std::size_t nreg = static_cast<std::size_t>(std::count(e.regular.begin(), e.regular.end(), true));
  BigInt expect = conjectured_regular_count(n);
  r.addn("n", n);
  r.addn("q_is_snake", posets_isomorphic(e.ctx.q, build_snake_poset(snake_word(n))) ? "yes" : "no");
  r.addn("nodes", e.graph.size());
  r.addn("regular", nreg);
  r.addn("expected", expect);
  r.partial = e.graph.partial;
  r.holds = !r.partial && BigInt(static_cast<unsigned long>(nreg)) == expect;
  if (exhaustive) {
    auto brute = circuits_brute(e.ctx.cfg);
    auto all = all_triangulations(e.ctx.cfg, brute, order_polytope_volume(e.ctx.cfg));
    std::unordered_set<std::vector<Simplex>, TriangulationKeyHash> reach;
    for (auto& t : e.graph.nodes) reach.insert(t.simplices);
    std::size_t in = 0, regular = 0;
    for (auto& t : all) {
      in += reach.count(t.simplices);
      regular += is_regular(e.ctx.cfg, t, &brute).regular;
    }
    r.addn("all_triangulations", all.size());
    r.addn("all_reachable", in == all.size() ? "yes" : "no");
    r.addn("all_regular", regular == all.size() ? "yes" : "no");
  }
  return r;
}

inline std::string format_report(const ConjectureReport& r) {
  std::ostringstream s;
  s << "conjecture " << r.id << " " << r.subject << ": " << (r.partial ? "partial" : r.holds ? "supported" : "not supported")
    << "\n";
  for (auto& [k, v] : r.facts) s << "  " << k << " = " << v << "\n";
  return s.str();
}

}  // namespace snakeflip
