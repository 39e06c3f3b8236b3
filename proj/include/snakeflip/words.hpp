#pragma once

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core.hpp"

namespace snakeflip {

// Letters w_1..w_n after the implicit leading epsilon.
struct SnakeWord {
  std::string letters;

  SnakeWord() = default;
  explicit SnakeWord(std::string s) : letters(std::move(s)) {}

  int length() const { return static_cast<int>(letters.size()); }
  // 1-based, as in w_1..w_n.
  char at(int i) const { return letters.at(static_cast<std::size_t>(i - 1)); }
  std::string str() const { return letters; }
  std::string display() const { return "eps" + letters; }
  bool operator==(const SnakeWord&) const = default;
  auto operator<=>(const SnakeWord&) const = default;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::invalid_argument(msg), position(pos) {}
  std::size_t position;  // 1-based within the trimmed text
};

inline SnakeWord parse_word(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string_view t = text.substr(b, e - b);
  std::size_t i = 0;
  if (t.substr(0, 3) == "eps") {
    i = 3;
  } else if (t.substr(0, 2) == "\xCE\xB5") {  // UTF-8 epsilon
    i = 2;
  }
  std::string letters;
  for (; i < t.size(); ++i) {
    char c = t[i];
    if (c != 'L' && c != 'R') {
      throw ParseError("invalid character '" + std::string(1, c) + "' at position " +
                           std::to_string(i + 1),
                       i + 1);
    }
    letters.push_back(c);
  }
  return SnakeWord(letters);
}

inline bool is_in_V(const SnakeWord& w) {
  return w.letters.find("LRL") == std::string::npos &&
         w.letters.find("RLR") == std::string::npos;
}

inline SnakeWord swap(const SnakeWord& w, int i) {
  if (i < 1 || i > w.length()) throw PreconditionError("swap index out of range");
  SnakeWord out = w;
  for (int j = i; j <= w.length(); ++j) {
    char& c = out.letters[static_cast<std::size_t>(j - 1)];
    c = (c == 'L') ? 'R' : 'L';
  }
  return out;
}

inline SnakeWord flip_letters(const SnakeWord& w) { return w.length() ? swap(w, 1) : w; }

inline std::vector<SnakeWord> all_words(int n) {
  std::vector<SnakeWord> out;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    std::string s(static_cast<std::size_t>(n), 'L');
    for (int j = 0; j < n; ++j)
      if (has(m, n - 1 - j)) s[static_cast<std::size_t>(j)] = 'R';
    out.emplace_back(s);
  }
  return out;
}

inline SnakeWord snake_word(int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s.push_back(i % 2 ? 'R' : 'L');
  return SnakeWord(s);
}

inline SnakeWord ladder_word(int n) { return SnakeWord(std::string(static_cast<std::size_t>(n), 'L')); }

// Square w_i meets square w_{i-2} in a single corner exactly when the
// letters w_{i-1} and w_i differ (i >= 2).
inline bool has_corner_chord(const SnakeWord& w, int i) {
  return i >= 2 && i <= w.length() && w.at(i - 1) != w.at(i);
}

inline int turns(const SnakeWord& w) {
  int t = 0;
  for (int i = 2; i <= w.length(); ++i) t += has_corner_chord(w, i);
  return t;
}

struct WordGraph {
  int vertex_count = 1;
  std::vector<std::pair<int, int>> edges;  // sorted, i < j
  std::vector<Mask> adjacency;

  bool adjacent(int a, int b) const { return has(adjacency[static_cast<std::size_t>(a)], b); }
};

inline WordGraph make_graph(int n_vertices, std::vector<std::pair<int, int>> edges) {
  WordGraph g;
  g.vertex_count = n_vertices;
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = edges;
  g.adjacency.assign(static_cast<std::size_t>(n_vertices), 0);
  for (auto [a, b] : edges) {
    g.adjacency[static_cast<std::size_t>(a)] |= bit(b);
    g.adjacency[static_cast<std::size_t>(b)] |= bit(a);
  }
  return g;
}

// Path w_0..w_n plus one chord (i-2, i) per corner-sharing pair of squares.
inline WordGraph word_graph(const SnakeWord& w) {
  const int n = w.length();
  if (n + 1 > kMaskBits) throw OverflowError("word too long for mask width");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, i + 1);
  for (int i = 2; i <= n; ++i)
    if (has_corner_chord(w, i)) e.emplace_back(i - 2, i);
  return make_graph(n + 1, e);
}

// Chord (i, i+2) whenever w_i w_{i+1} w_{i+2} reads LLR or RRL, with the
// epsilon slot read as a copy of w_1. Agrees with word_graph on V.
inline WordGraph word_graph_letter_rule(const SnakeWord& w) {
  const int n = w.length();
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, i + 1);
  auto letter = [&](int i) { return i == 0 ? w.at(1) : w.at(i); };
  for (int i = 0; i + 2 <= n; ++i) {
    char a = letter(i), b = letter(i + 1), c = letter(i + 2);
    if (a == b && b != c) e.emplace_back(i, i + 2);
  }
  return make_graph(n + 1, e);
}

inline bool is_connected_mask(const WordGraph& g, Mask m) {
  if (m == 0) return false;
  Mask seen = bit(lowest(m)), frontier = seen;
  while (frontier) {
    Mask next = 0;
    for (int v : bits_of(frontier)) next |= g.adjacency[static_cast<std::size_t>(v)] & m;
    next &= ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == m;
}

// All nonempty connected induced subgraphs, ascending by mask.
inline std::vector<Mask> connected_induced_subgraphs(const WordGraph& g) {
  std::set<Mask> found;
  std::vector<Mask> stack;
  for (int v = 0; v < g.vertex_count; ++v) {
    if (found.insert(bit(v)).second) stack.push_back(bit(v));
  }
  while (!stack.empty()) {
    Mask m = stack.back();
    stack.pop_back();
    Mask nb = 0;
    for (int v : bits_of(m)) nb |= g.adjacency[static_cast<std::size_t>(v)];
    nb &= ~m;
    for (int v : bits_of(nb)) {
      Mask m2 = m | bit(v);
      if (found.insert(m2).second) stack.push_back(m2);
    }
  }
  return {found.begin(), found.end()};
}

// |G(w)| by the recursion on the last letter. B counts subgraphs that
// contain the last vertex; C those containing the second-to-last but not the
// last.
inline BigInt count_subgraphs_recursive(const SnakeWord& w) {
  if (!is_in_V(w)) throw PreconditionError("word contains LRL or RLR");
  BigInt total = 1, with_last = 1, with_prev_only = 0;
  for (int i = 1; i <= w.length(); ++i) {
    BigInt n_last = with_last;       // N_{i-1}
    BigInt n_prev = with_prev_only;  // N_{i-2}
    BigInt added = 1 + n_last;
    if (has_corner_chord(w, i)) added += n_prev;
    total += added;
    with_prev_only = n_last;
    with_last = added;
  }
  return total;
}

}  // namespace snakeflip
