#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <snakeflip/circuits.hpp>
#include <snakeflip/flips.hpp>
#include <snakeflip/graphs.hpp>
#include <snakeflip/lp.hpp>
#include <snakeflip/polytope.hpp>
#include <snakeflip/snake.hpp>

using namespace snakeflip;

TEST(Lp, SmallOptimum) {
  // max x + y, x + 2y <= 4, 3x + y <= 6 -> (8/5, 6/5), value 14/5.
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {1, 1};
  lp.add_row({1, 2}, Sense::LE, 4);
  lp.add_row({3, 1}, Sense::LE, 6);
  LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.value, Rational(14, 5));
  EXPECT_EQ(r.x[0], Rational(8, 5));
  EXPECT_EQ(r.x[1], Rational(6, 5));
}

TEST(Lp, UnboundedAndEqualities) {
  LinearProgram u;
  u.num_vars = 2;
  u.objective = {1, 0};
  u.add_row({1, -1}, Sense::LE, 1);
  EXPECT_EQ(solve_lp(u).status, LpStatus::Unbounded);

  LinearProgram e;
  e.num_vars = 3;
  e.objective = {0, 0, 1};
  e.add_row({1, 1, 1}, Sense::EQ, 1);
  e.add_row({1, -1, 0}, Sense::EQ, 0);
  e.add_row({0, 0, 1}, Sense::GE, Rational(1, 3));
  LpResult r = solve_lp(e);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.value, 1);
}

TEST(Lp, FarkasCertificateOnEqualities) {
  // x + y = 1, x + y = 2 has no solution.
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {0, 0};
  lp.add_row({1, 1}, Sense::EQ, 1);
  lp.add_row({1, 1}, Sense::EQ, 2);
  lp.add_row({2, -1}, Sense::EQ, 0);
  LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Infeasible);
  ASSERT_EQ(r.farkas.size(), 3u);
  for (int v = 0; v < 2; ++v) {
    Rational s = 0;
    for (std::size_t i = 0; i < 3; ++i) s += r.farkas[i] * lp.rows[i][static_cast<std::size_t>(v)];
    EXPECT_GE(s, 0);
  }
  Rational b = 0;
  for (std::size_t i = 0; i < 3; ++i) b += r.farkas[i] * lp.rhs[i];
  EXPECT_LT(b, 0);
}

TEST(Lp, DegenerateCycleExampleTerminates) {
  // Beale's example cycles under the textbook rule; Bland's rule must finish.
  LinearProgram lp;
  lp.num_vars = 4;
  lp.objective = {Rational(3, 4), -150, Rational(1, 50), -6};
  lp.add_row({Rational(1, 4), -60, Rational(-1, 25), 9}, Sense::LE, 0);
  lp.add_row({Rational(1, 2), -90, Rational(-1, 50), 3}, Sense::LE, 0);
  lp.add_row({0, 0, 1, 0}, Sense::LE, 1);
  LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_EQ(r.value, Rational(1, 20));
}

TEST(Graphs, IsomorphismUnderRelabeling) {
  // Petersen graph.
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5});
    e.push_back({i, i + 5});
    e.push_back({i + 5, (i + 2) % 5 + 5});
  }
  Graph g = make_graph_from_edges(10, e);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> p(10);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    std::vector<std::pair<int, int>> f;
    for (auto [a, b] : e) f.push_back({p[static_cast<std::size_t>(a)], p[static_cast<std::size_t>(b)]});
    EXPECT_TRUE(graphs_isomorphic(g, make_graph_from_edges(10, f)));
  }
}

TEST(Graphs, RegularGraphsThatRefinementCannotSplit) {
  // Two 6-cycles against one 12-cycle: same degree sequence, not isomorphic.
  std::vector<std::pair<int, int>> a, b;
  for (int i = 0; i < 6; ++i) {
    a.push_back({i, (i + 1) % 6});
    a.push_back({i + 6, (i + 1) % 6 + 6});
  }
  for (int i = 0; i < 12; ++i) b.push_back({i, (i + 1) % 12});
  EXPECT_FALSE(graphs_isomorphic(make_graph_from_edges(12, a), make_graph_from_edges(12, b)));
  // Prism against K_{3,3}: both cubic on six vertices.
  std::vector<std::pair<int, int>> prism = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}};
  std::vector<std::pair<int, int>> k33;
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 6; ++j) k33.push_back({i, j});
  EXPECT_FALSE(graphs_isomorphic(make_graph_from_edges(6, prism), make_graph_from_edges(6, k33)));
}

TEST(Graphs, CayleyGraphShape) {
  for (int m = 2; m <= 5; ++m) {
    std::vector<std::vector<int>> perms;
    Graph g = cayley_graph(m, &perms);
    long fact = 1;
    for (int i = 2; i <= m; ++i) fact *= i;
    EXPECT_EQ(g.n, fact);
    for (int v = 0; v < g.n; ++v) EXPECT_EQ(g.degree(v), m - 1);
    std::sort(perms.begin(), perms.end());
    EXPECT_EQ(std::unique(perms.begin(), perms.end()), perms.end());
  }
}

TEST(Polytope, CanonicalTriangulationIsUnimodularAndValid) {
  for (int n = 0; n <= 4; ++n)
    for (auto& w : all_words(n)) {
      SnakeContext c = make_context(w);
      Triangulation t = canonical_triangulation(c.cfg);
      EXPECT_TRUE(is_unimodular(c.cfg, t));
      EXPECT_EQ(BigInt(static_cast<unsigned long>(t.size())), order_polytope_volume(c.cfg));
      auto circuits = circuits_brute(c.cfg);
      EXPECT_TRUE(check_triangulation(c.cfg, t.simplices, order_polytope_volume(c.cfg), circuits).ok);
    }
}

TEST(Polytope, IntersectionCriterionMatchesLp) {
  SnakeContext c = make_context(SnakeWord("LR"));
  auto circuits = circuits_brute(c.cfg);
  Triangulation t = canonical_triangulation(c.cfg);
  BigInt vol = order_polytope_volume(c.cfg);
  EXPECT_EQ(check_triangulation(c.cfg, t.simplices, vol, circuits).ok, check_triangulation_lp(c.cfg, t.simplices, vol).ok);
  // Swap one simplex for one from a flipped neighbour: same volume, overlapping.
  Triangulation u = apply_flip(t, find_flips(t, circuits).front());
  Simplex fresh = 0;
  for (Simplex x : u.simplices)
    if (std::find(t.simplices.begin(), t.simplices.end(), x) == t.simplices.end()) fresh = x;
  ASSERT_NE(fresh, 0u);
  std::vector<Simplex> bad = t.simplices;
  for (auto& x : bad)
    if (std::find(u.simplices.begin(), u.simplices.end(), x) != u.simplices.end()) {
      x = fresh;
      break;
    }
  auto a = check_triangulation(c.cfg, bad, vol, circuits);
  auto b = check_triangulation_lp(c.cfg, bad, vol);
  EXPECT_FALSE(a.ok);
  EXPECT_EQ(a.ok, b.ok);
}

TEST(Polytope, BareissMatchesCofactorExpansion) {
  std::vector<std::vector<BigInt>> m = {{2, -1, 0, 3}, {1, 4, -2, 0}, {0, 5, 1, -1}, {3, 0, 2, 2}};
  // Hand expansion along the first row.
  auto det3 = [](BigInt a, BigInt b, BigInt c, BigInt d, BigInt e, BigInt f, BigInt g, BigInt h, BigInt i) {
    return BigInt(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g));
  };
  BigInt want = 2 * det3(4, -2, 0, 5, 1, -1, 0, 2, 2) + 1 * det3(1, -2, 0, 0, 1, -1, 3, 2, 2) +
                0 - 3 * det3(1, 4, -2, 0, 5, 1, 3, 0, 2);
  EXPECT_EQ(bareiss_det(m), want);
}
