#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "circuits.hpp"
#include "core.hpp"
#include "graphs.hpp"
#include "polytope.hpp"

namespace snakeflip {

class UnimodularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FlipMove {
  int circuit_index = -1;
  Circuit circuit;
  Mask side = 0;            // T contains the faces Z \ {j} for j in side
  std::vector<Mask> link;   // sorted
};

// Flip conditions: every face Z \ {j}, j on one side, lies in T and all of
// them have the same link.
inline std::vector<FlipMove> find_flips(const Triangulation& t, const std::vector<Circuit>& circuits) {
  std::vector<FlipMove> out;
  for (std::size_t ci = 0; ci < circuits.size(); ++ci) {
    const Circuit& z = circuits[ci];
    const Mask zs = z.support();
    for (Mask side : {z.plus, z.minus}) {
      std::vector<Mask> link;
      bool ok = true, first = true;
      for (int j : bits_of(side)) {
        Mask f = zs & ~bit(j);
        std::vector<Mask> l;
        for (Simplex s : t.simplices)
          if ((s & f) == f) l.push_back(s & ~f);
        if (l.empty()) {
          ok = false;
          break;
        }
        std::sort(l.begin(), l.end());
        if (first) {
          link = std::move(l);
          first = false;
        } else if (l != link) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back({static_cast<int>(ci), z, side, std::move(link)});
    }
  }
  return out;
}

inline Triangulation apply_flip(const Triangulation& t, const FlipMove& m) {
  const Mask zs = m.circuit.support();
  const Mask other = zs & ~m.side;
  std::vector<Simplex> removed, added;
  for (int j : bits_of(m.side))
    for (Mask l : m.link) removed.push_back((zs & ~bit(j)) | l);
  for (int i : bits_of(other))
    for (Mask l : m.link) added.push_back((zs & ~bit(i)) | l);
  std::sort(removed.begin(), removed.end());
  std::vector<Simplex> keep;
  keep.reserve(t.simplices.size());
  std::size_t hit = 0;
  for (Simplex s : t.simplices) {
    if (std::binary_search(removed.begin(), removed.end(), s))
      ++hit;
    else
      keep.push_back(s);
  }
  if (hit != removed.size()) throw std::logic_error("flip move does not match the triangulation");
  keep.insert(keep.end(), added.begin(), added.end());
  return make_triangulation(std::move(keep));
}

// Stable 128-bit hash of the canonical form.
struct Hash128 {
  std::uint64_t hi = 0, lo = 0;
  bool operator==(const Hash128&) const = default;
  std::string hex() const {
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                  static_cast<unsigned long long>(lo));
    return buf;
  }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Hash128 triangulation_hash(const Triangulation& t) {
  Hash128 h{0x6a09e667f3bcc908ULL, 0xbb67ae8584caa73bULL};
  for (Simplex s : t.simplices) {
    h.hi = splitmix64(h.hi ^ s);
    h.lo = splitmix64(h.lo + splitmix64(s ^ 0x3c6ef372fe94f82bULL));
  }
  h.hi = splitmix64(h.hi ^ t.simplices.size());
  return h;
}

struct TriangulationKeyHash {
  std::size_t operator()(const std::vector<Simplex>& v) const {
    std::uint64_t h = 0x510e527fade682d1ULL;
    for (Simplex s : v) h = splitmix64(h ^ s);
    return static_cast<std::size_t>(h);
  }
};

struct FlipEdge {
  int a = -1, b = -1;  // a < b
  Circuit circuit;
};

struct FlipGraph {
  std::vector<Triangulation> nodes;
  std::vector<int> depth;
  std::vector<int> move_count;  // flips available at each node
  std::vector<FlipEdge> edges;
  bool partial = false;
  std::string stop_reason;

  std::size_t size() const { return nodes.size(); }
  Graph graph() const {
    std::vector<std::pair<int, int>> e;
    for (auto& x : edges) e.push_back({x.a, x.b});
    return make_graph_from_edges(static_cast<int>(nodes.size()), e);
  }
  std::string name(int v) const { return "t" + triangulation_hash(nodes[static_cast<std::size_t>(v)]).hex().substr(0, 12); }
};

struct Budget {
  std::size_t max_nodes = 1'000'000;
  int max_depth = 1 << 30;
  double seconds = 0;  // 0 = no limit
};

struct ExploreOptions {
  Budget budget;
  int threads = 1;
  bool validate = false;  // full union/intersection check per node
  BigInt volume = 0;      // needed when validate is set
};

namespace detail {

inline void check_new_simplices(const PointConfiguration& cfg, const Triangulation& before, const Triangulation& after) {
  for (Simplex s : after.simplices) {
    if (std::binary_search(before.simplices.begin(), before.simplices.end(), s, LexLess{})) continue;
    if (simplex_volume(cfg, s) != 1) throw UnimodularityError("non-unimodular simplex reached by a flip");
  }
}

template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  const int k = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(threads)));
  for (int w = 0; w < k; ++w)
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          f(i);
        } catch (...) {
          if (!failed.exchange(true)) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace detail

// Level-synchronous BFS. Neighbours of a frontier are computed in parallel and
// merged in frontier order, so node numbering does not depend on the number of
// workers. Every simplex created by a flip is checked to be unimodular.
inline FlipGraph explore_flip_graph(const PointConfiguration& cfg, const Triangulation& seed,
                                    const std::vector<Circuit>& circuits, const ExploreOptions& opt = {}) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  FlipGraph g;
  std::unordered_map<std::vector<Simplex>, int, TriangulationKeyHash> index;
  if (!is_unimodular(cfg, seed)) throw UnimodularityError("seed triangulation is not unimodular");
  g.nodes.push_back(seed);
  g.depth.push_back(0);
  g.move_count.push_back(0);
  index.emplace(seed.simplices, 0);
  std::vector<int> frontier = {0};
  int level = 0;
  struct Step {
    std::vector<std::pair<Triangulation, Circuit>> next;
  };
  while (!frontier.empty()) {
    std::vector<Step> steps(frontier.size());
    detail::parallel_for(frontier.size(), opt.threads, [&](std::size_t i) {
      const Triangulation& t = g.nodes[static_cast<std::size_t>(frontier[i])];
      for (const FlipMove& m : find_flips(t, circuits)) {
        Triangulation u = apply_flip(t, m);
        detail::check_new_simplices(cfg, t, u);
        if (opt.validate) {
          auto chk = check_triangulation(cfg, u.simplices, opt.volume, circuits);
          if (!chk.ok) throw std::logic_error("flip produced an invalid triangulation: " + chk.reason);
        }
        steps[i].next.push_back({std::move(u), m.circuit});
      }
    });
    std::vector<int> next_frontier;
    bool stop_expanding = level >= opt.budget.max_depth;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const int a = frontier[i];
      g.move_count[static_cast<std::size_t>(a)] = static_cast<int>(steps[i].next.size());
      for (auto& [u, z] : steps[i].next) {
        auto it = index.find(u.simplices);
        int b;
        if (it != index.end()) {
          b = it->second;
        } else {
          if (stop_expanding) {
            g.partial = true;
            if (g.stop_reason.empty()) g.stop_reason = "depth";
            continue;
          }
          if (g.nodes.size() >= opt.budget.max_nodes) {
            g.partial = true;
            g.stop_reason = "nodes";
            continue;
          }
          b = static_cast<int>(g.nodes.size());
          index.emplace(u.simplices, b);
          g.nodes.push_back(std::move(u));
          g.depth.push_back(level + 1);
          g.move_count.push_back(0);
          next_frontier.push_back(b);
        }
        if (a < b) g.edges.push_back({a, b, z});  // b < a was recorded when b was expanded
      }
    }
    frontier = std::move(next_frontier);
    ++level;
    if (opt.budget.seconds > 0 && !frontier.empty() &&
        std::chrono::duration<double>(clock::now() - start).count() > opt.budget.seconds) {
      g.partial = true;
      g.stop_reason = "time";
      break;
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const FlipEdge& x, const FlipEdge& y) {
    return std::tie(x.a, x.b, x.circuit.plus, x.circuit.minus) < std::tie(y.a, y.b, y.circuit.plus, y.circuit.minus);
  });
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end(),
                            [](const FlipEdge& x, const FlipEdge& y) { return x.a == y.a && x.b == y.b; }),
                g.edges.end());
  return g;
}

// Simplices as vertices, adjacency across walls.
inline Graph dual_graph(const Triangulation& t) {
  const int n = static_cast<int>(t.simplices.size());
  std::vector<std::pair<int, int>> e;
  std::unordered_map<Mask, int> facet;
  for (int i = 0; i < n; ++i)
    for (int v : bits_of(t.simplices[static_cast<std::size_t>(i)])) {
      Mask f = t.simplices[static_cast<std::size_t>(i)] & ~bit(v);
      auto [it, fresh] = facet.emplace(f, i);
      if (!fresh) e.push_back({it->second, i});
    }
  return make_graph_from_edges(n, e);
}

struct CayleyReport {
  int n = 0;
  std::size_t nodes = 0, edges = 0;
  bool regular = false;        // every node of degree n
  bool labels_ok = false;      // flip at Z_{a,b} acts as s_k with {a,b} = {pi^-1(k), pi^-1(k+1)}
  bool bijective = false;      // the labeling is a bijection onto S_{n+1}
  bool isomorphic = false;
  bool ok = false;
  std::string detail;
};

// Flip graph of the n-ladder against the Cayley graph of S_{n+1}. Square
// intervals [a..b] index the circuits Z_{a, b+1}; following the labeling
// through the BFS assigns a permutation to every triangulation.
inline CayleyReport cayley_check(int n, int threads = 1) {
  if (n < 1 || n > 6) throw PreconditionError("ladder size out of range");
  CayleyReport r;
  r.n = n;
  SnakeContext ctx = make_context(ladder_word(n - 1));
  auto circuits = all_circuits(ctx);
  // Circuit -> the pair (a, b+1) of its square interval.
  std::map<Circuit, std::pair<int, int>> interval;
  for (Mask h : subgraphs_of(ctx)) {
    auto v = bits_of(h);
    interval[circuit_from_subgraph(ctx, h)] = {v.front(), v.back() + 1};
  }
  ExploreOptions opt;
  opt.threads = threads;
  FlipGraph fg = explore_flip_graph(ctx.cfg, canonical_triangulation(ctx.cfg), circuits, opt);
  Graph g = fg.graph();
  r.nodes = fg.size();
  r.edges = g.edge_count();
  r.regular = true;
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) != n) r.regular = false;
  // phi(canonical) = identity; propagate along BFS tree edges, then check all.
  std::vector<std::vector<int>> phi(fg.size());
  std::vector<int> id(static_cast<std::size_t>(n + 1));
  std::iota(id.begin(), id.end(), 0);
  phi[0] = id;
  auto step = [&](const std::vector<int>& pi, const Circuit& z, std::vector<int>& out) {
    auto [a, b] = interval.at(z);
    std::vector<int> inv(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) inv[static_cast<std::size_t>(pi[i])] = static_cast<int>(i);
    for (int k = 0; k < n; ++k) {
      int x = inv[static_cast<std::size_t>(k)], y = inv[static_cast<std::size_t>(k + 1)];
      if ((x == a && y == b) || (x == b && y == a)) {
        out = pi;
        for (auto& v : out) v = v == k ? k + 1 : v == k + 1 ? k : v;
        return true;
      }
    }
    return false;
  };
  r.labels_ok = true;
  std::vector<std::vector<std::pair<int, const Circuit*>>> nb(fg.size());
  for (auto& e : fg.edges) {
    nb[static_cast<std::size_t>(e.a)].push_back({e.b, &e.circuit});
    nb[static_cast<std::size_t>(e.b)].push_back({e.a, &e.circuit});
  }
  std::vector<int> queue = {0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (auto [u, z] : nb[static_cast<std::size_t>(v)]) {
      std::vector<int> p;
      if (!step(phi[static_cast<std::size_t>(v)], *z, p)) {
        r.labels_ok = false;
        r.detail = "edge label is not an adjacent transposition";
        continue;
      }
      if (phi[static_cast<std::size_t>(u)].empty()) {
        phi[static_cast<std::size_t>(u)] = p;
        queue.push_back(u);
      } else if (phi[static_cast<std::size_t>(u)] != p) {
        r.labels_ok = false;
        r.detail = "inconsistent permutation labels";
      }
    }
  }
  std::set<std::vector<int>> seen(phi.begin(), phi.end());
  long fact = 1;
  for (int i = 2; i <= n + 1; ++i) fact *= i;
  r.bijective = static_cast<long>(seen.size()) == fact && static_cast<long>(fg.size()) == fact && !seen.count({});
  r.isomorphic = graphs_isomorphic(g, cayley_graph(n + 1));
  r.ok = !fg.partial && r.regular && r.labels_ok && r.bijective && r.isomorphic;
  return r;
}

}  // namespace snakeflip
