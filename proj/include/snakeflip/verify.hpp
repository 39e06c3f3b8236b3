#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "circuits.hpp"
#include "conjectures.hpp"
#include "flips.hpp"
#include "regularity.hpp"
#include "twists.hpp"
#include "volumes.hpp"
#include "words.hpp"

namespace snakeflip {

struct CheckLine {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifySummary {
  std::vector<CheckLine> lines;
  bool ok() const {
    for (auto& l : lines)
      if (!l.ok) return false;
    return true;
  }
  std::string text() const {
    std::ostringstream s;
    for (auto& l : lines) s << (l.ok ? "PASS " : "FAIL ") << l.name << ": " << l.detail << "\n";
    s << (ok() ? "all checks passed" : "some checks FAILED") << "\n";
    return s.str();
  }
};

inline std::vector<SnakeWord> words_up_to(int max_len, bool only_v) {
  std::vector<SnakeWord> out;
  for (int n = 0; n <= max_len; ++n)
    for (auto& w : all_words(n))
      if (!only_v || is_in_V(w)) out.push_back(w);
  return out;
}

inline CheckLine check_volumes(int max_len) {
  CheckLine c{"volume oracles", true, ""};
  std::size_t n = 0;
  for (auto& w : words_up_to(max_len, false)) {
    BigInt a = volume_recursive(w), b = volume_brute(w), s = volume_skew(w);
    ++n;
    if (a != b || a != s) {
      c.ok = false;
      c.detail = "mismatch at " + w.display();
      return c;
    }
  }
  c.detail = std::to_string(n) + " words, recursive = brute = skew";
  return c;
}

inline CheckLine check_minmax(int max_len) {
  CheckLine c{"min/max volume", true, ""};
  for (int n = 0; n <= max_len; ++n) {
    auto r = verify_minmax(n);
    if (!r.ok) {
      c.ok = false;
      c.detail = "fails at length " + std::to_string(n);
      return c;
    }
  }
  c.detail = "lengths 0.." + std::to_string(max_len) + ", extremes only at snake and ladder words";
  return c;
}

inline CheckLine check_subgraph_counts(int max_len) {
  CheckLine c{"subgraph recursion", true, ""};
  std::size_t n = 0;
  for (auto& w : words_up_to(max_len, true)) {
    ++n;
    if (count_subgraphs_recursive(w) != connected_induced_subgraphs(word_graph(w)).size()) {
      c.ok = false;
      c.detail = "mismatch at " + w.display();
      return c;
    }
  }
  c.detail = std::to_string(n) + " words";
  return c;
}

inline CheckLine check_circuits(int max_len) {
  CheckLine c{"circuit bijection", true, ""};
  std::size_t n = 0, total = 0;
  for (auto& w : words_up_to(max_len, true)) {
    SnakeContext ctx = make_context(w);
    auto gamma = sorted_circuits(all_circuits(ctx));
    auto brute = circuits_brute(ctx.cfg);
    auto [lo, hi] = circuit_size_bounds(w);
    bool ok = gamma == brute && gamma.size() == connected_induced_subgraphs(ctx.graph).size();
    int smallest = 64, largest = 0;
    const int zero = ctx.element_column[static_cast<std::size_t>(ctx.lattice_top())];
    const int one = ctx.element_column[static_cast<std::size_t>(ctx.lattice_bottom())];
    for (auto& z : gamma) {
      smallest = std::min(smallest, popcount(z.support()));
      largest = std::max(largest, popcount(z.support()));
      ok = ok && popcount(z.plus) == popcount(z.minus) && unit_dependence(ctx.cfg, z) && !has(z.support(), zero) &&
           !has(z.support(), one);
    }
    ok = ok && smallest == lo && largest == hi;
    ++n;
    total += gamma.size();
    if (!ok) {
      c.ok = false;
      c.detail = "fails at " + w.display();
      return c;
    }
  }
  c.detail = std::to_string(n) + " words, " + std::to_string(total) + " circuits, Gamma = brute force";
  return c;
}

inline CheckLine check_flip_counts(int max_len) {
  CheckLine c{"flips from canonical", true, ""};
  std::size_t n = 0;
  for (auto& w : words_up_to(max_len, true)) {
    SnakeContext ctx = make_context(w);
    auto circuits = all_circuits(ctx);
    Triangulation t = canonical_triangulation(ctx.cfg);
    auto moves = find_flips(t, circuits);
    BigInt vol = order_polytope_volume(ctx.cfg);
    bool ok = static_cast<int>(moves.size()) == w.length() + 1;
    for (auto& m : moves) {
      Triangulation u = apply_flip(t, m);
      ok = ok && u.size() == t.size() && is_unimodular(ctx.cfg, u) && check_triangulation(ctx.cfg, u.simplices, vol, circuits).ok;
    }
    ++n;
    if (!ok) {
      c.ok = false;
      c.detail = "fails at " + w.display();
      return c;
    }
  }
  c.detail = std::to_string(n) + " words, length + 1 flips each, all results valid and unimodular";
  return c;
}

inline CheckLine check_cayley(int threads) {
  CheckLine c{"ladder Cayley graph", true, ""};
  std::string d;
  for (int n = 2; n <= 4; ++n) {
    auto r = cayley_check(n, threads);
    d += (d.empty() ? "" : ", ") + ("n=" + std::to_string(n) + " " + std::to_string(r.nodes) + " nodes");
    if (!r.ok) {
      c.ok = false;
      c.detail = "fails at n = " + std::to_string(n) + " " + r.detail;
      return c;
    }
  }
  c.detail = d;
  return c;
}

inline CheckLine check_twists(int max_len) {
  CheckLine c{"twist group", true, ""};
  std::size_t n = 0, order = 0;
  for (auto& w : words_up_to(max_len, true)) {
    SnakeContext ctx = make_context(w);
    TwistSetup s = make_twist_setup(ctx);
    auto circuits = all_circuits(ctx);
    auto r = check_twist_group(s, circuits);
    ++n;
    order += r.order;
    if (!r.ok || r.t != turns(w) + 1) {
      c.ok = false;
      c.detail = "fails at " + w.display();
      return c;
    }
  }
  c.detail = std::to_string(n) + " words, " + std::to_string(order) + " twists, involutive, commuting, permuting circuits";
  return c;
}

inline CheckLine check_commuting_square(int threads) {
  CheckLine c{"twist-flip square", true, ""};
  std::string d;
  for (std::string s : {"", "LL", "LRRL"}) {
    SnakeContext ctx = make_context(SnakeWord(s));
    auto r = commuting_square_check(ctx, 1 << 30, threads);
    d += (d.empty() ? "" : ", ") + ctx.word.display() + " " + std::to_string(r.checks) + " squares";
    if (!r.ok || r.partial || r.images_in_component != r.images_total) {
      c.ok = false;
      c.detail = "fails at " + ctx.word.display() + " " + r.first_failure;
      return c;
    }
  }
  c.detail = d;
  return c;
}

inline CheckLine check_folding(int max_len) {
  CheckLine c{"folding certificates", true, ""};
  std::size_t n = 0, checks = 0;
  for (auto& w : words_up_to(max_len, true)) {
    SnakeContext ctx = make_context(w);
    TwistSetup s = make_twist_setup(ctx);
    Triangulation can = canonical_triangulation(ctx.cfg);
    for (auto& tau : all_twists(s)) {
      auto rep = verify_local_folding(ctx.cfg, twist_simplices(tau, can), height_function(s, tau));
      ++checks;
      if (!rep.ok) {
        c.ok = false;
        c.detail = "fails at " + w.display();
        return c;
      }
    }
    ++n;
  }
  c.detail = std::to_string(n) + " words, " + std::to_string(checks) + " twisted canonical triangulations";
  return c;
}

inline CheckLine check_flip_graphs(int max_len, int threads) {
  CheckLine c{"flip graph components", true, ""};
  std::size_t n = 0, nodes = 0;
  for (auto& w : words_up_to(std::min(max_len, 4), true)) {
    ConjectureOptions o;
    o.threads = threads;
    ExploredWord e = explore_word(w, o, true);
    ++n;
    nodes += e.graph.size();
    TwistSetup s = make_twist_setup(e.ctx);
    const std::size_t order = std::size_t{1} << s.t();
    bool ok = !e.graph.partial && e.graph.size() % order == 0 &&
              std::count(e.regular.begin(), e.regular.end(), true) == static_cast<long>(e.graph.size());
    if (!ok) {
      c.ok = false;
      c.detail = "fails at " + w.display();
      return c;
    }
  }
  c.detail = std::to_string(n) + " words, " + std::to_string(nodes) + " triangulations, all unimodular and regular";
  return c;
}

inline VerifySummary verify_all(int max_len, int threads) {
  if (max_len < 0 || max_len > 8) throw PreconditionError("max length out of range");
  VerifySummary s;
  s.lines.push_back(check_volumes(max_len));
  s.lines.push_back(check_minmax(max_len));
  s.lines.push_back(check_subgraph_counts(max_len));
  s.lines.push_back(check_circuits(std::min(max_len, 6)));
  s.lines.push_back(check_flip_counts(max_len));
  s.lines.push_back(check_cayley(threads));
  s.lines.push_back(check_twists(max_len));
  s.lines.push_back(check_commuting_square(threads));
  s.lines.push_back(check_folding(max_len));
  s.lines.push_back(check_flip_graphs(max_len, threads));
  return s;
}

}  // namespace snakeflip
