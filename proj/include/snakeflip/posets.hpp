#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "core.hpp"
#include "words.hpp"

namespace snakeflip {

struct Poset {
  int size = 0;
  std::vector<std::pair<int, int>> covers;  // (lower, upper), sorted
  std::vector<std::string> labels;
  std::vector<Mask> above;  // strict up-sets
  std::vector<Mask> below;  // strict down-sets
  std::vector<Mask> upper_covers;
  std::vector<Mask> lower_covers;
  std::vector<int> origin;  // element index in the parent structure, if any

  bool less(int a, int b) const { return has(above[static_cast<std::size_t>(a)], b); }
  bool leq(int a, int b) const { return a == b || less(a, b); }
  Mask up_closure(int a) const { return above[static_cast<std::size_t>(a)] | bit(a); }
  Mask minimal_elements() const {
    Mask m = 0;
    for (int x = 0; x < size; ++x)
      if (!lower_covers[static_cast<std::size_t>(x)]) m |= bit(x);
    return m;
  }
  Mask maximal_elements() const {
    Mask m = 0;
    for (int x = 0; x < size; ++x)
      if (!upper_covers[static_cast<std::size_t>(x)]) m |= bit(x);
    return m;
  }
};

inline Poset make_poset(int n, std::vector<std::pair<int, int>> covers,
                        std::vector<std::string> labels = {}) {
  if (n > kMaskBits) throw OverflowError("poset larger than mask width");
  Poset p;
  p.size = n;
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
  p.upper_covers.assign(static_cast<std::size_t>(n), 0);
  p.lower_covers.assign(static_cast<std::size_t>(n), 0);
  for (auto [a, b] : covers) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw PreconditionError("bad cover pair");
    p.upper_covers[static_cast<std::size_t>(a)] |= bit(b);
    p.lower_covers[static_cast<std::size_t>(b)] |= bit(a);
  }
  // Closure by repeated relaxation in topological order.
  std::vector<int> indeg(static_cast<std::size_t>(n), 0), order;
  for (auto [a, b] : covers) ++indeg[static_cast<std::size_t>(b)];
  for (int x = 0; x < n; ++x)
    if (!indeg[static_cast<std::size_t>(x)]) order.push_back(x);
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (int y : bits_of(p.upper_covers[static_cast<std::size_t>(order[k])]))
      if (--indeg[static_cast<std::size_t>(y)] == 0) order.push_back(y);
  }
  if (static_cast<int>(order.size()) != n) throw PreconditionError("cover relation has a cycle");
  p.above.assign(static_cast<std::size_t>(n), 0);
  p.below.assign(static_cast<std::size_t>(n), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int x = *it;
    for (int y : bits_of(p.upper_covers[static_cast<std::size_t>(x)]))
      p.above[static_cast<std::size_t>(x)] |= bit(y) | p.above[static_cast<std::size_t>(y)];
  }
  for (int x = 0; x < n; ++x)
    for (int y : bits_of(p.above[static_cast<std::size_t>(x)])) p.below[static_cast<std::size_t>(y)] |= bit(x);
  for (auto [a, b] : covers) {
    for (int c : bits_of(p.upper_covers[static_cast<std::size_t>(a)]))
      if (c != b && p.less(c, b)) throw PreconditionError("cover pair implied by transitivity");
  }
  p.covers = covers;
  if (labels.empty()) {
    for (int x = 0; x < n; ++x) labels.push_back(std::to_string(x));
  }
  p.labels = std::move(labels);
  return p;
}

// Transitive reduction of a strict order given by up-sets.
inline Poset poset_from_order(int n, const std::vector<Mask>& above, std::vector<std::string> labels = {}) {
  std::vector<std::pair<int, int>> covers;
  for (int a = 0; a < n; ++a) {
    for (int b : bits_of(above[static_cast<std::size_t>(a)])) {
      Mask between = above[static_cast<std::size_t>(a)];
      bool direct = true;
      for (int c : bits_of(between))
        if (c != b && has(above[static_cast<std::size_t>(c)], b)) {
          direct = false;
          break;
        }
      if (direct) covers.emplace_back(a, b);
    }
  }
  return make_poset(n, covers, std::move(labels));
}

inline Poset chain_poset(int n) {
  std::vector<std::pair<int, int>> c;
  for (int i = 0; i + 1 < n; ++i) c.emplace_back(i, i + 1);
  return make_poset(n, c);
}

inline Poset antichain_poset(int n) { return make_poset(n, {}); }

inline Poset build_snake_poset(const SnakeWord& w) {
  const int n = w.length();
  std::vector<std::pair<int, int>> c = {{1, 0}, {2, 0}, {3, 1}, {3, 2}};
  for (int m = 1; m <= n; ++m) {
    c.emplace_back(2 * m + 3, 2 * m + 1);
    c.emplace_back(2 * m + 3, 2 * m + 2);
    bool differ = (m == 1) ? (w.at(1) == 'L') : (w.at(m - 1) != w.at(m));
    c.emplace_back(2 * m + 2, differ ? 2 * m - 1 : 2 * m);
  }
  return make_poset(2 * n + 4, c);
}

// Appends a new bottom (index size) and a new top (index size + 1).
inline Poset adjoin_bounds(const Poset& p) {
  const int n = p.size;
  std::vector<std::pair<int, int>> c = p.covers;
  for (int x : bits_of(p.minimal_elements())) c.emplace_back(n, x);
  for (int x : bits_of(p.maximal_elements())) c.emplace_back(x, n + 1);
  if (n == 0) c.emplace_back(0, 1);
  auto labels = p.labels;
  labels.push_back("0hat");
  labels.push_back("1hat");
  return make_poset(n + 2, c, labels);
}

struct FilterLattice {
  Poset base;
  std::vector<Mask> filters;                // ascending
  std::vector<std::pair<int, int>> hasse;   // (lower, upper) under reverse inclusion
  std::vector<Mask> generators;             // minimal elements of each filter
  std::vector<std::vector<int>> up, down;   // cover adjacency by index
  std::unordered_map<Mask, int> index;

  int size() const { return static_cast<int>(filters.size()); }
  int index_of(Mask f) const {
    auto it = index.find(f);
    return it == index.end() ? -1 : it->second;
  }
  int top() const { return index_of(0); }
  int bottom() const { return index_of(filters.empty() ? 0 : filters.back()); }
  Mask full() const { return base.size == kMaskBits ? ~Mask{0} : bit(base.size) - 1; }
  bool is_filter(Mask f) const {
    for (int x : bits_of(f))
      if ((base.above[static_cast<std::size_t>(x)] & ~f) != 0) return false;
    return true;
  }
};

inline FilterLattice filter_lattice(const Poset& p, std::size_t max_filters = 1u << 22) {
  if (p.size > kMaskBits - 1) throw OverflowError("poset exceeds filter mask width");
  FilterLattice L;
  L.base = p;
  std::set<Mask> seen = {0};
  std::vector<Mask> work = {0};
  while (!work.empty()) {
    Mask f = work.back();
    work.pop_back();
    for (int x = 0; x < p.size; ++x) {
      if (has(f, x)) continue;
      if ((p.above[static_cast<std::size_t>(x)] & ~f) != 0) continue;
      Mask g = f | bit(x);
      if (seen.insert(g).second) {
        if (seen.size() > max_filters) throw BudgetError("filter enumeration budget exceeded");
        work.push_back(g);
      }
    }
  }
  L.filters.assign(seen.begin(), seen.end());
  for (std::size_t i = 0; i < L.filters.size(); ++i) L.index[L.filters[i]] = static_cast<int>(i);
  L.up.assign(L.filters.size(), {});
  L.down.assign(L.filters.size(), {});
  for (std::size_t i = 0; i < L.filters.size(); ++i) {
    Mask f = L.filters[i];
    for (int x = 0; x < p.size; ++x) {
      if (has(f, x)) continue;
      int j = L.index_of(f | bit(x));
      if (j >= 0) {
        L.hasse.emplace_back(j, static_cast<int>(i));
        L.up[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
        L.down[i].push_back(j);
      }
    }
    Mask gens = 0;
    for (int x : bits_of(f))
      if ((p.below[static_cast<std::size_t>(x)] & f) == 0) gens |= bit(x);
    L.generators.push_back(gens);
  }
  std::sort(L.hasse.begin(), L.hasse.end());
  for (auto& v : L.up) std::sort(v.begin(), v.end());
  for (auto& v : L.down) std::sort(v.begin(), v.end());
  return L;
}

inline std::string filter_label(const Poset& p, Mask gens) {
  std::string s = "<";
  bool first = true;
  for (int x : bits_of(gens)) {
    if (!first) s += ",";
    s += p.labels[static_cast<std::size_t>(x)];
    first = false;
  }
  return s + ">";
}

// The lattice J(P) as an abstract poset on filter indices.
inline Poset lattice_poset(const FilterLattice& L) {
  std::vector<std::string> labels;
  for (int i = 0; i < L.size(); ++i)
    labels.push_back(filter_label(L.base, L.generators[static_cast<std::size_t>(i)]));
  return make_poset(L.size(), L.hasse, labels);
}

inline Poset induced_subposet(const Poset& p, const std::vector<int>& elems) {
  const int n = static_cast<int>(elems.size());
  std::vector<Mask> above(static_cast<std::size_t>(n), 0);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    labels.push_back(p.labels[static_cast<std::size_t>(elems[static_cast<std::size_t>(i)])]);
    for (int j = 0; j < n; ++j)
      if (p.less(elems[static_cast<std::size_t>(i)], elems[static_cast<std::size_t>(j)]))
        above[static_cast<std::size_t>(i)] |= bit(j);
  }
  Poset q = poset_from_order(n, above, labels);
  q.origin = elems;
  return q;
}

// Elements of a lattice with exactly one upper cover (the top has none).
inline Poset meet_irreducibles(const Poset& lattice) {
  std::vector<int> elems;
  for (int x = 0; x < lattice.size; ++x)
    if (popcount(lattice.upper_covers[static_cast<std::size_t>(x)]) == 1) elems.push_back(x);
  return induced_subposet(lattice, elems);
}

inline Poset meet_irreducibles(const FilterLattice& L) { return meet_irreducibles(lattice_poset(L)); }

inline Poset snake_lattice(const SnakeWord& w) { return adjoin_bounds(build_snake_poset(w)); }

inline Poset q_poset(const SnakeWord& w) { return meet_irreducibles(snake_lattice(w)); }

// Visits linear extensions listed from a minimal element upwards; the visitor
// returns false to stop.
inline void for_each_linear_extension(const Poset& p,
                                      const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> seq;
  bool stop = false;
  std::function<void(Mask)> rec = [&](Mask placed) {
    if (stop) return;
    if (static_cast<int>(seq.size()) == p.size) {
      if (!visit(seq)) stop = true;
      return;
    }
    for (int x = 0; x < p.size && !stop; ++x) {
      if (has(placed, x)) continue;
      if ((p.below[static_cast<std::size_t>(x)] & ~placed) != 0) continue;
      seq.push_back(x);
      rec(placed | bit(x));
      seq.pop_back();
    }
  };
  rec(0);
}

inline std::vector<std::vector<int>> linear_extensions(const Poset& p) {
  std::vector<std::vector<int>> out;
  for_each_linear_extension(p, [&](const std::vector<int>& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

// Number of linear extensions by dynamic programming over down-sets.
inline BigInt count_linear_extensions(const Poset& p, std::size_t max_states = 1u << 24) {
  std::unordered_map<Mask, BigInt> memo;
  const Mask full = p.size == kMaskBits ? ~Mask{0} : bit(p.size) - 1;
  std::function<BigInt(Mask)> f = [&](Mask placed) -> BigInt {
    if (placed == full) return 1;
    auto it = memo.find(placed);
    if (it != memo.end()) return it->second;
    BigInt s = 0;
    for (int x = 0; x < p.size; ++x) {
      if (has(placed, x)) continue;
      if ((p.below[static_cast<std::size_t>(x)] & ~placed) != 0) continue;
      s += f(placed | bit(x));
    }
    if (memo.size() >= max_states) throw BudgetError("linear extension state budget exceeded");
    memo.emplace(placed, s);
    return s;
  };
  return f(0);
}

// Saturated chains from the bottom (full filter) to the top (empty filter).
inline void for_each_maximal_chain(const FilterLattice& L,
                                   const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> chain = {L.bottom()};
  bool stop = false;
  const int top = L.top();
  std::function<void(int)> rec = [&](int v) {
    if (stop) return;
    if (v == top) {
      if (!visit(chain)) stop = true;
      return;
    }
    for (int u : L.up[static_cast<std::size_t>(v)]) {
      chain.push_back(u);
      rec(u);
      chain.pop_back();
      if (stop) return;
    }
  };
  rec(L.bottom());
}

inline std::vector<std::vector<int>> maximal_chains(const FilterLattice& L) {
  std::vector<std::vector<int>> out;
  for_each_maximal_chain(L, [&](const std::vector<int>& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

inline BigInt count_maximal_chains(const FilterLattice& L) {
  std::vector<BigInt> ways(static_cast<std::size_t>(L.size()), 0);
  // Filters ascending by mask: supersets come later, so walk backwards.
  ways[static_cast<std::size_t>(L.bottom())] = 1;
  std::vector<int> order(static_cast<std::size_t>(L.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return popcount(L.filters[static_cast<std::size_t>(a)]) > popcount(L.filters[static_cast<std::size_t>(b)]);
  });
  for (int v : order)
    for (int u : L.up[static_cast<std::size_t>(v)]) ways[static_cast<std::size_t>(u)] += ways[static_cast<std::size_t>(v)];
  return ways[static_cast<std::size_t>(L.top())];
}

struct Square {
  int top = -1, left = -1, right = -1, bottom = -1;
  int letter_index = -1;
  Mask elements() const { return bit(top) | bit(left) | bit(right) | bit(bottom); }
};

// Bounded faces of a planar width-two lattice, ordered along the stacking of
// the word: squares i and i+1 share an edge.
inline std::vector<Square> squares_of(const Poset& lat) {
  std::vector<Square> found;
  for (int u = 0; u < lat.size; ++u) {
    auto ups = bits_of(lat.upper_covers[static_cast<std::size_t>(u)]);
    for (std::size_t i = 0; i < ups.size(); ++i)
      for (std::size_t j = i + 1; j < ups.size(); ++j) {
        Mask common = lat.upper_covers[static_cast<std::size_t>(ups[i])] &
                      lat.upper_covers[static_cast<std::size_t>(ups[j])];
        for (int v : bits_of(common)) found.push_back({v, ups[i], ups[j], u, -1});
      }
  }
  if (found.empty()) return found;
  // Start at the square whose top is covered by the lattice top.
  Mask tops = lat.maximal_elements();
  std::size_t start = found.size();
  for (std::size_t i = 0; i < found.size(); ++i)
    if (lat.upper_covers[static_cast<std::size_t>(found[i].top)] & tops) {
      start = i;
      break;
    }
  if (start == found.size()) throw PreconditionError("no square below the top element");
  std::vector<Square> out = {found[start]};
  std::vector<bool> used(found.size(), false);
  used[start] = true;
  while (out.size() < found.size()) {
    bool advanced = false;
    for (std::size_t i = 0; i < found.size(); ++i) {
      if (used[i]) continue;
      if (popcount(found[i].elements() & out.back().elements()) == 2) {
        used[i] = true;
        out.push_back(found[i]);
        advanced = true;
        break;
      }
    }
    if (!advanced) throw PreconditionError("squares do not form a strip");
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].letter_index = static_cast<int>(i);
  return out;
}

struct Rung {
  int upper = -1, lower = -1;  // upper covers lower
};

struct LadderDecomposition {
  std::vector<Square> squares;
  std::vector<std::vector<int>> ladder_squares;  // square indices per ladder
  std::vector<Mask> ladder_elements;
  std::vector<std::vector<Rung>> rungs;          // per ladder, top to bottom
  std::vector<int> x_to_element;                 // x_0 .. x_{2k+5}
  std::vector<int> element_to_x;
  int t() const { return static_cast<int>(ladder_squares.size()); }
  std::vector<int> box_counts() const {
    std::vector<int> c;
    for (auto& l : ladder_squares) c.push_back(static_cast<int>(l.size()));
    return c;
  }
};

inline Rung make_rung(const Poset& lat, int a, int b) {
  if (lat.less(b, a)) return {a, b};
  if (lat.less(a, b)) return {b, a};
  throw PreconditionError("rung elements are incomparable");
}

inline LadderDecomposition ladder_decomposition(const Poset& lat, const SnakeWord& w) {
  if (!is_in_V(w)) throw PreconditionError("word contains LRL or RLR");
  LadderDecomposition dec;
  dec.squares = squares_of(lat);
  const int nsq = static_cast<int>(dec.squares.size());
  std::vector<int> cut;  // corner squares
  for (int i = 0; i + 2 < nsq; ++i)
    if (popcount(dec.squares[static_cast<std::size_t>(i)].elements() &
                 dec.squares[static_cast<std::size_t>(i + 2)].elements()) == 1)
      cut.push_back(i + 1);
  int from = 0;
  for (int c : cut) {
    std::vector<int> l;
    for (int s = from; s <= c; ++s) l.push_back(s);
    dec.ladder_squares.push_back(l);
    from = c;
  }
  {
    std::vector<int> l;
    for (int s = from; s < nsq; ++s) l.push_back(s);
    dec.ladder_squares.push_back(l);
  }
  for (auto& l : dec.ladder_squares) {
    Mask el = 0;
    for (int s : l) el |= dec.squares[static_cast<std::size_t>(s)].elements();
    dec.ladder_elements.push_back(el);
    std::vector<Rung> r;
    const Square& first = dec.squares[static_cast<std::size_t>(l.front())];
    if (l.size() == 1) {
      // Lone square: read as if an R square followed, so the smaller-index
      // middle element shares the top rung.
      r.push_back(make_rung(lat, first.top, first.left));
      r.push_back(make_rung(lat, first.right, first.bottom));
    } else {
      for (std::size_t j = 0; j < l.size(); ++j) {
        Mask cur = dec.squares[static_cast<std::size_t>(l[j])].elements();
        if (j == 0) {
          Mask shared = cur & dec.squares[static_cast<std::size_t>(l[1])].elements();
          auto e = bits_of(cur & ~shared);
          r.push_back(make_rung(lat, e[0], e[1]));
        }
        if (j + 1 < l.size()) {
          auto e = bits_of(cur & dec.squares[static_cast<std::size_t>(l[j + 1])].elements());
          r.push_back(make_rung(lat, e[0], e[1]));
        } else {
          Mask prev = dec.squares[static_cast<std::size_t>(l[j - 1])].elements();
          auto e = bits_of(cur & ~prev);
          r.push_back(make_rung(lat, e[0], e[1]));
        }
      }
    }
    dec.rungs.push_back(r);
  }
  // x labels: 1hat, then rungs ladder by ladder, then 0hat.
  dec.element_to_x.assign(static_cast<std::size_t>(lat.size), -1);
  int top = lowest(lat.maximal_elements()), bottom = lowest(lat.minimal_elements());
  auto assign = [&](int e) {
    if (dec.element_to_x[static_cast<std::size_t>(e)] >= 0) return;
    dec.element_to_x[static_cast<std::size_t>(e)] = static_cast<int>(dec.x_to_element.size());
    dec.x_to_element.push_back(e);
  };
  assign(top);
  for (auto& rs : dec.rungs)
    for (auto& r : rs) {
      bool u = dec.element_to_x[static_cast<std::size_t>(r.upper)] >= 0;
      bool d = dec.element_to_x[static_cast<std::size_t>(r.lower)] >= 0;
      if (u != d) throw PreconditionError("rung half labeled");
      assign(r.upper);
      assign(r.lower);
    }
  assign(bottom);
  if (static_cast<int>(dec.x_to_element.size()) != lat.size)
    throw PreconditionError("ladder labeling does not cover the lattice");
  return dec;
}

struct RegularityLabeling {
  Poset q;                      // Q_w with the relabeled names
  std::vector<int> q_names;     // relabeled name per Q element (1-based)
  LadderDecomposition ladders;  // x labels on the lattice
};

inline RegularityLabeling regularity_labeling(const Poset& lat, const SnakeWord& w) {
  RegularityLabeling r;
  r.ladders = ladder_decomposition(lat, w);
  r.q = meet_irreducibles(lat);
  const int top = r.q.size - 1;
  r.q_names.resize(static_cast<std::size_t>(r.q.size));
  for (int i = 0; i < r.q.size; ++i) {
    int name = (i <= 2) ? i + 1 : (i == top ? 4 : i + 2);
    r.q_names[static_cast<std::size_t>(i)] = name;
  }
  for (int i = 0; i < r.q.size; ++i) r.q.labels[static_cast<std::size_t>(i)] = std::to_string(r.q_names[static_cast<std::size_t>(i)]);
  return r;
}

// Element of the lattice to the filter of Q_w it corresponds to.
inline Mask element_filter(const Poset& lat, const Poset& q, int e) {
  Mask f = 0;
  for (int i = 0; i < q.size; ++i)
    if (lat.leq(e, q.origin[static_cast<std::size_t>(i)])) f |= bit(i);
  return f;
}

// Exact isomorphism test for small posets by degree-refined backtracking.
inline bool posets_isomorphic(const Poset& a, const Poset& b) {
  if (a.size != b.size || a.covers.size() != b.covers.size()) return false;
  const int n = a.size;
  auto sig = [](const Poset& p, int x) {
    return std::make_tuple(popcount(p.above[static_cast<std::size_t>(x)]), popcount(p.below[static_cast<std::size_t>(x)]),
                           popcount(p.upper_covers[static_cast<std::size_t>(x)]),
                           popcount(p.lower_covers[static_cast<std::size_t>(x)]));
  };
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  Mask used = 0;
  std::function<bool(int)> rec = [&](int x) -> bool {
    if (x == n) return true;
    for (int y = 0; y < n; ++y) {
      if (has(used, y) || sig(a, x) != sig(b, y)) continue;
      bool ok = true;
      for (int z = 0; z < x && ok; ++z) {
        int mz = map[static_cast<std::size_t>(z)];
        if (a.less(z, x) != b.less(mz, y) || a.less(x, z) != b.less(y, mz)) ok = false;
      }
      if (!ok) continue;
      map[static_cast<std::size_t>(x)] = y;
      used |= bit(y);
      if (rec(x + 1)) return true;
      used &= ~bit(y);
    }
    return false;
  };
  return rec(0);
}

}  // namespace snakeflip
