#pragma once

#include <vector>

#include "polytope.hpp"
#include "posets.hpp"
#include "words.hpp"

namespace snakeflip {

// Everything derived from one word: P̂(w), Q_w, the vertex configuration of
// O(Q_w) and the identification of lattice elements with its columns.
struct SnakeContext {
  SnakeWord word;
  Poset lattice;
  Poset q;
  PointConfiguration cfg;
  std::vector<int> element_column;  // lattice element -> column
  std::vector<int> column_element;  // column -> lattice element
  std::vector<Square> squares;
  WordGraph graph;

  int lattice_top() const { return lowest(lattice.maximal_elements()); }
  int lattice_bottom() const { return lowest(lattice.minimal_elements()); }
  Mask square_columns(int i) const {
    Mask m = 0;
    for (int e : bits_of(squares[static_cast<std::size_t>(i)].elements())) m |= bit(element_column[static_cast<std::size_t>(e)]);
    return m;
  }
};

inline SnakeContext make_context(const SnakeWord& w) {
  SnakeContext c;
  c.word = w;
  c.lattice = snake_lattice(w);
  c.q = meet_irreducibles(c.lattice);
  c.cfg = order_polytope_vertices(c.q);
  if (c.cfg.size() != c.lattice.size) throw PreconditionError("J(Q_w) and the lattice differ in size");
  c.element_column.assign(static_cast<std::size_t>(c.lattice.size), -1);
  c.column_element.assign(static_cast<std::size_t>(c.cfg.size()), -1);
  for (int e = 0; e < c.lattice.size; ++e) {
    int j = c.cfg.index_of_filter(element_filter(c.lattice, c.q, e));
    if (j < 0 || c.column_element[static_cast<std::size_t>(j)] >= 0) throw PreconditionError("lattice element without filter");
    c.element_column[static_cast<std::size_t>(e)] = j;
    c.column_element[static_cast<std::size_t>(j)] = e;
  }
  c.squares = squares_of(c.lattice);
  c.graph = word_graph(w);
  return c;
}

// Order polytope of an arbitrary poset together with its own lattice.
inline SnakeContext make_poset_context(const Poset& q) {
  SnakeContext c;
  c.q = q;
  c.cfg = order_polytope_vertices(q);
  FilterLattice L = filter_lattice(q);
  c.lattice = lattice_poset(L);
  c.element_column.resize(static_cast<std::size_t>(L.size()));
  c.column_element.resize(static_cast<std::size_t>(L.size()));
  for (int i = 0; i < L.size(); ++i) {
    int j = c.cfg.index_of_filter(L.filters[static_cast<std::size_t>(i)]);
    c.element_column[static_cast<std::size_t>(i)] = j;
    c.column_element[static_cast<std::size_t>(j)] = i;
  }
  c.squares = squares_of(c.lattice);
  return c;
}

}  // namespace snakeflip
