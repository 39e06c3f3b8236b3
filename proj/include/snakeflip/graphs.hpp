#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "core.hpp"

namespace snakeflip {

struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // sorted neighbor lists

  void add_edge(int a, int b) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  void finish() {
    for (auto& l : adj) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
  }
  std::size_t edge_count() const {
    std::size_t s = 0;
    for (auto& l : adj) s += l.size();
    return s / 2;
  }
  int degree(int v) const { return static_cast<int>(adj[static_cast<std::size_t>(v)].size()); }
  bool adjacent(int a, int b) const {
    const auto& l = adj[static_cast<std::size_t>(a)];
    return std::binary_search(l.begin(), l.end(), b);
  }
  std::map<int, int> degree_histogram() const {
    std::map<int, int> h;
    for (int v = 0; v < n; ++v) ++h[degree(v)];
    return h;
  }
};

inline Graph make_graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g;
  g.n = n;
  g.adj.assign(static_cast<std::size_t>(n), {});
  for (auto [a, b] : edges) g.add_edge(a, b);
  g.finish();
  return g;
}

namespace detail {

// Colour refinement on a single graph until stable. Colours are renumbered by
// sorted signature so that two graphs refined from matching colourings get
// comparable colour names.
inline std::vector<int> refine(const Graph& g, std::vector<int> col) {
  for (;;) {
    std::vector<std::pair<int, std::vector<int>>> sig(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) {
      std::vector<int> nb;
      for (int u : g.adj[static_cast<std::size_t>(v)]) nb.push_back(col[static_cast<std::size_t>(u)]);
      std::sort(nb.begin(), nb.end());
      sig[static_cast<std::size_t>(v)] = {col[static_cast<std::size_t>(v)], std::move(nb)};
    }
    std::map<std::pair<int, std::vector<int>>, int> names;
    for (auto& s : sig) names.emplace(s, 0);
    int k = 0;
    for (auto& [s, id] : names) id = k++;
    std::vector<int> next(static_cast<std::size_t>(g.n));
    for (int v = 0; v < g.n; ++v) next[static_cast<std::size_t>(v)] = names[sig[static_cast<std::size_t>(v)]];
    std::vector<int> distinct(col);
    std::sort(distinct.begin(), distinct.end());
    int before = static_cast<int>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
    if (k == before) return next;
    col = std::move(next);
  }
}

// Joint refinement of the disjoint union, so colour names agree across graphs.
inline std::pair<std::vector<int>, std::vector<int>> refine_pair(const Graph& a, const Graph& b,
                                                                 const std::vector<int>& ca,
                                                                 const std::vector<int>& cb) {
  Graph u;
  u.n = a.n + b.n;
  u.adj.assign(static_cast<std::size_t>(u.n), {});
  for (int v = 0; v < a.n; ++v) u.adj[static_cast<std::size_t>(v)] = a.adj[static_cast<std::size_t>(v)];
  for (int v = 0; v < b.n; ++v)
    for (int w : b.adj[static_cast<std::size_t>(v)]) u.adj[static_cast<std::size_t>(a.n + v)].push_back(a.n + w);
  std::vector<int> col(ca);
  col.insert(col.end(), cb.begin(), cb.end());
  col = refine(u, col);
  return {std::vector<int>(col.begin(), col.begin() + a.n), std::vector<int>(col.begin() + a.n, col.end())};
}

inline std::vector<int> histogram(const std::vector<int>& c) {
  std::vector<int> h(c);
  std::sort(h.begin(), h.end());
  return h;
}

}  // namespace detail

// Exact isomorphism test: joint colour refinement, then individualisation of
// one vertex at a time with backtracking over the candidates of the smallest
// non-singleton cell.
inline bool graphs_isomorphic(const Graph& a, const Graph& b) {
  if (a.n != b.n || a.edge_count() != b.edge_count()) return false;
  if (a.n == 0) return true;
  std::function<bool(std::vector<int>, std::vector<int>)> search = [&](std::vector<int> ca, std::vector<int> cb) {
    std::tie(ca, cb) = detail::refine_pair(a, b, ca, cb);
    if (detail::histogram(ca) != detail::histogram(cb)) return false;
    std::map<int, int> size;
    for (int c : ca) ++size[c];
    int target = -1, best = a.n + 1;
    for (auto [c, s] : size)
      if (s > 1 && s < best) {
        best = s;
        target = c;
      }
    if (target < 0) {
      // Discrete colouring: the colour names define the bijection.
      std::vector<int> inv(static_cast<std::size_t>(a.n + b.n + 2), -1);
      for (int v = 0; v < b.n; ++v) inv[static_cast<std::size_t>(cb[static_cast<std::size_t>(v)])] = v;
      for (int v = 0; v < a.n; ++v)
        for (int u : a.adj[static_cast<std::size_t>(v)])
          if (!b.adjacent(inv[static_cast<std::size_t>(ca[static_cast<std::size_t>(v)])],
                          inv[static_cast<std::size_t>(ca[static_cast<std::size_t>(u)])]))
            return false;
      return true;
    }
    const int fresh = a.n + b.n + 1;
    int va = -1;
    for (int v = 0; v < a.n; ++v)
      if (ca[static_cast<std::size_t>(v)] == target) {
        va = v;
        break;
      }
    auto na = ca;
    na[static_cast<std::size_t>(va)] = fresh;
    for (int vb = 0; vb < b.n; ++vb) {
      if (cb[static_cast<std::size_t>(vb)] != target) continue;
      auto nb = cb;
      nb[static_cast<std::size_t>(vb)] = fresh;
      if (search(na, nb)) return true;
    }
    return false;
  };
  return search(std::vector<int>(static_cast<std::size_t>(a.n), 0), std::vector<int>(static_cast<std::size_t>(b.n), 0));
}

// Cheap isomorphism invariant: the stable colour histogram of the refinement
// together with the degree sequence.
inline std::vector<int> refinement_invariant(const Graph& g) {
  auto c = detail::refine(g, std::vector<int>(static_cast<std::size_t>(g.n), 0));
  std::vector<int> out;
  // Colour names from a lone refinement are not comparable across graphs, so
  // describe each cell by its size and its degree.
  std::map<int, int> sz;
  std::map<int, int> deg;
  for (int v = 0; v < g.n; ++v) {
    ++sz[c[static_cast<std::size_t>(v)]];
    deg[c[static_cast<std::size_t>(v)]] = g.degree(v);
  }
  std::vector<std::pair<int, int>> cell;
  for (auto [k, s] : sz) cell.push_back({deg[k], s});
  std::sort(cell.begin(), cell.end());
  out.push_back(g.n);
  for (auto [d, s] : cell) {
    out.push_back(d);
    out.push_back(s);
  }
  return out;
}

// Cayley graph of S_m on adjacent transpositions. Vertices are permutations in
// lexicographic order; an edge swaps the values k and k+1.
inline Graph cayley_graph(int m, std::vector<std::vector<int>>* perms_out = nullptr) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> id;
  for (std::size_t i = 0; i < perms.size(); ++i) id[perms[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (int k = 0; k + 1 < m; ++k) {
      auto q = perms[i];
      for (auto& x : q) x = x == k ? k + 1 : x == k + 1 ? k : x;
      int j = id[q];
      if (static_cast<int>(i) < j) edges.push_back({static_cast<int>(i), j});
    }
  if (perms_out) *perms_out = perms;
  return make_graph_from_edges(static_cast<int>(perms.size()), edges);
}

}  // namespace snakeflip
