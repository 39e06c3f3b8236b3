#include <gtest/gtest.h>

#include <map>

#include <snakeflip/flips.hpp>
#include <snakeflip/twists.hpp>
#include <snakeflip/verify.hpp>

using namespace snakeflip;

namespace {

FlipGraph explore(const SnakeContext& c, const std::vector<Circuit>& circuits, int threads, Budget b = {}) {
  ExploreOptions o;
  o.threads = threads;
  o.budget = b;
  return explore_flip_graph(c.cfg, canonical_triangulation(c.cfg), circuits, o);
}

}  // namespace

TEST(Flips, CanonicalHasLengthPlusOneFlips) {
  for (auto& w : words_up_to(6, true)) {
    SnakeContext c = make_context(w);
    auto moves = find_flips(canonical_triangulation(c.cfg), all_circuits(c));
    EXPECT_EQ(static_cast<int>(moves.size()), w.length() + 1) << w.display();
  }
}

TEST(Flips, FlipIsAnInvolution) {
  SnakeContext c = make_context(SnakeWord("LLR"));
  auto circuits = all_circuits(c);
  Triangulation t = canonical_triangulation(c.cfg);
  for (auto& m : find_flips(t, circuits)) {
    Triangulation u = apply_flip(t, m);
    EXPECT_NE(u, t);
    bool back = false;
    for (auto& m2 : find_flips(u, circuits))
      if (m2.circuit == m.circuit && apply_flip(u, m2) == t) back = true;
    EXPECT_TRUE(back);
  }
}

TEST(Flips, FrozenComponentSizes) {
  const std::map<std::string, std::size_t> expect = {{"", 2},    {"L", 6},     {"LL", 24},  {"LR", 20},
                                                     {"LLR", 88}, {"LLRR", 424}, {"LRRL", 336}};
  for (auto& [s, n] : expect) {
    SnakeContext c = make_context(SnakeWord(s));
    FlipGraph g = explore(c, all_circuits(c), 2);
    EXPECT_FALSE(g.partial);
    EXPECT_EQ(g.size(), n) << s;
    for (auto& t : g.nodes) EXPECT_TRUE(is_unimodular(c.cfg, t));
  }
}

TEST(Flips, NodesAreValidTriangulations) {
  SnakeContext c = make_context(SnakeWord("LR"));
  auto circuits = all_circuits(c);
  ExploreOptions o;
  o.validate = true;
  o.volume = order_polytope_volume(c.cfg);
  FlipGraph g = explore_flip_graph(c.cfg, canonical_triangulation(c.cfg), circuits, o);
  EXPECT_EQ(g.size(), 20u);
  for (auto& t : g.nodes) EXPECT_TRUE(check_triangulation_lp(c.cfg, t.simplices, o.volume).ok);
}

TEST(Flips, ThreadCountDoesNotChangeTheGraph) {
  SnakeContext c = make_context(SnakeWord("LLRR"));
  auto circuits = all_circuits(c);
  FlipGraph a = explore(c, circuits, 1), b = explore(c, circuits, 4), d = explore(c, circuits, 8);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.nodes[i], b.nodes[i]);
    EXPECT_EQ(a.nodes[i], d.nodes[i]);
  }
  EXPECT_EQ(a.edges.size(), b.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) EXPECT_TRUE(a.edges[i].a == d.edges[i].a && a.edges[i].b == d.edges[i].b);
}

TEST(Flips, BudgetsStopCleanly) {
  SnakeContext c = make_context(SnakeWord("LRRL"));
  auto circuits = all_circuits(c);
  Budget b;
  b.max_nodes = 50;
  FlipGraph g = explore(c, circuits, 2, b);
  EXPECT_TRUE(g.partial);
  EXPECT_LE(g.size(), 50u);
  for (auto& e : g.edges) EXPECT_LT(static_cast<std::size_t>(e.b), g.size());
  Budget d;
  d.max_depth = 1;
  FlipGraph h = explore(c, circuits, 2, d);
  EXPECT_EQ(h.size(), 6u);  // canonical and its five neighbours
}

TEST(Flips, HashesAreStableNames) {
  SnakeContext c = make_context(SnakeWord("L"));
  FlipGraph g = explore(c, all_circuits(c), 1);
  EXPECT_EQ(g.name(0), "t" + triangulation_hash(canonical_triangulation(c.cfg)).hex().substr(0, 12));
  std::set<std::string> names;
  for (int v = 0; v < static_cast<int>(g.size()); ++v) names.insert(g.name(v));
  EXPECT_EQ(names.size(), g.size());
}

TEST(Flips, LadderCayleyTheorem) {
  for (int n = 2; n <= 4; ++n) {
    CayleyReport r = cayley_check(n, 2);
    long fact = 1;
    for (int i = 2; i <= n + 1; ++i) fact *= i;
    EXPECT_EQ(static_cast<long>(r.nodes), fact);
    EXPECT_EQ(static_cast<long>(r.edges), fact * n / 2);
    EXPECT_TRUE(r.regular && r.labels_ok && r.bijective && r.isomorphic) << r.detail;
  }
}

TEST(Flips, DualGraphMatchesPairwiseFacets) {
  for (std::string w : {"", "L", "LR", "LLR"}) {
    SnakeContext c = make_context(SnakeWord(w));
    Triangulation t = canonical_triangulation(c.cfg);
    Graph g = dual_graph(t);
    int naive = 0;
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = a + 1; b < t.size(); ++b) naive += popcount(t.simplices[a] & t.simplices[b]) == c.cfg.dim;
    EXPECT_EQ(g.n, static_cast<int>(t.size()));
    EXPECT_EQ(g.edge_count(), naive) << w;
  }
}

TEST(Twists, GroupLaws) {
  for (auto& w : words_up_to(6, true)) {
    SnakeContext c = make_context(w);
    TwistSetup s = make_twist_setup(c);
    auto r = check_twist_group(s, all_circuits(c));
    EXPECT_EQ(r.t, turns(w) + 1);
    EXPECT_EQ(r.order, std::size_t{1} << r.t);
    EXPECT_TRUE(r.distinct && r.involutive && r.commuting && r.circuits_permuted) << w.display();
  }
}

TEST(Twists, ElementaryTwistFixesOutsideItsLadder) {
  SnakeContext c = make_context(SnakeWord("LLRR"));
  TwistSetup s = make_twist_setup(c);
  for (int i = 1; i <= s.t(); ++i) {
    Twist t = elementary_twist(s, i);
    for (int e = 0; e < c.lattice.size; ++e)
      if (!has(s.dec.ladder_elements[static_cast<std::size_t>(i - 1)], e)) EXPECT_EQ(t.perm[static_cast<std::size_t>(e)], e);
  }
  EXPECT_THROW(elementary_twist(s, 0), PreconditionError);
  EXPECT_THROW(elementary_twist(s, s.t() + 1), PreconditionError);
}

TEST(Twists, TwistedCanonicalIsATriangulation) {
  for (auto& w : words_up_to(4, true)) {
    SnakeContext c = make_context(w);
    TwistSetup s = make_twist_setup(c);
    auto circuits = all_circuits(c);
    BigInt vol = order_polytope_volume(c.cfg);
    for (auto& tau : all_twists(s)) {
      TwistImage img = twist_triangulation(tau, canonical_triangulation(c.cfg), c.cfg, vol, circuits);
      EXPECT_TRUE(img.valid) << w.display() << " " << img.reason;
      EXPECT_TRUE(is_unimodular(c.cfg, img.triangulation));
    }
  }
}

TEST(Twists, CommutingSquare) {
  for (std::string w : {"", "L", "LL", "LR", "LLR"}) {
    SnakeContext c = make_context(SnakeWord(w));
    auto r = commuting_square_check(c, 1 << 30, 2);
    EXPECT_TRUE(r.ok) << w << " " << r.first_failure;
    EXPECT_FALSE(r.partial);
    EXPECT_EQ(r.images_in_component, r.images_total);
  }
}
