#include <gtest/gtest.h>

#include <snakeflip/conjectures.hpp>
#include <snakeflip/regularity.hpp>
#include <snakeflip/verify.hpp>

using namespace snakeflip;

namespace {

std::string label(const SnakeContext& c, int col) { return c.cfg.labels[static_cast<std::size_t>(col)]; }

Mask used_columns(const Triangulation& t) {
  Mask u = 0;
  for (Simplex s : t.simplices) u |= s;
  return u;
}

// Three outer and three inner points; two of its fine triangulations are
// not regular.
PointConfiguration nested_triangles() {
  return configuration_from_points({{0, 0}, {12, 0}, {0, 12}, {2, 2}, {8, 2}, {2, 8}});
}

}  // namespace

TEST(Regularity, CanonicalOrderString) {
  // Any word of length 5 gives sixteen labels.
  SnakeContext c = make_context(SnakeWord("LLLLL"));
  EXPECT_EQ(order_string(canonical_order(ladder_decomposition(c.lattice, c.word))),
            "x0,x2,x1,x4,x3,x6,x5,x8,x7,x10,x9,x12,x11,x14,x13,x15");
}

TEST(Regularity, EpsilonHeightsAndPsi) {
  SnakeContext c = make_context(SnakeWord(""));
  TwistSetup s = make_twist_setup(c);
  HeightFunction h = height_function(s, identity_twist(s));
  std::map<std::string, BigInt> got;
  for (int j = 0; j < c.cfg.size(); ++j) got[label(c, j)] = h.heights[static_cast<std::size_t>(j)];
  std::map<std::string, BigInt> want = {{"<>", 1}, {"<0>", 4}, {"<1>", 2}, {"<2>", 16}, {"<1,2>", 8}, {"<0hat>", 32}};
  EXPECT_EQ(got, want);
  FoldingReport r = verify_local_folding(c.cfg, canonical_triangulation(c.cfg), h);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].psi1, 6);
  EXPECT_EQ(r.checks[0].psi2, 6);
  EXPECT_TRUE(r.ok);
}

TEST(Regularity, WrongHeightsFailFolding) {
  SnakeContext c = make_context(SnakeWord(""));
  TwistSetup s = make_twist_setup(c);
  // Canonical heights on the twisted triangulation fold the wrong way.
  Twist tau = elementary_twist(s, 1);
  FoldingReport r = verify_local_folding(c.cfg, twist_simplices(tau, canonical_triangulation(c.cfg)),
                                         height_function(s, identity_twist(s)));
  EXPECT_FALSE(r.ok);
}

TEST(Regularity, LocalFoldingForEveryTwist) {
  for (auto& w : words_up_to(6, true)) {
    SnakeContext c = make_context(w);
    TwistSetup s = make_twist_setup(c);
    Triangulation can = canonical_triangulation(c.cfg);
    for (auto& tau : all_twists(s))
      EXPECT_TRUE(verify_local_folding(c.cfg, twist_simplices(tau, can), height_function(s, tau)).ok) << w.display();
  }
}

TEST(Regularity, FoldingFormIsPositiveMultipleOfWallForm) {
  SnakeContext c = make_context(SnakeWord("LLR"));
  TwistSetup s = make_twist_setup(c);
  HeightFunction h = height_function(s, identity_twist(s));
  auto circuits = all_circuits(c);
  for (const Wall& x : walls(canonical_triangulation(c.cfg))) {
    WallForm f = wall_form(c.cfg, x, &circuits);
    BigInt v = 0;
    for (auto& [col, a] : f.terms) v += a * h.heights[static_cast<std::size_t>(col)];
    BigInt psi = folding_form(c.cfg, x.s2, x.v1, h);
    EXPECT_GT(v, 0);
    EXPECT_EQ(sgn(psi), sgn(v));
  }
}

TEST(Regularity, LpWitnessesAreExact) {
  SnakeContext c = make_context(SnakeWord("LR"));
  auto circuits = all_circuits(c);
  ExploreOptions o;
  FlipGraph g = explore_flip_graph(c.cfg, canonical_triangulation(c.cfg), circuits, o);
  for (auto& t : g.nodes) {
    RegularityResult r = is_regular(c.cfg, t, &circuits);
    ASSERT_TRUE(r.regular);
    EXPECT_TRUE(forms_positive(wall_forms(c.cfg, t, &circuits), r.heights));
    EXPECT_TRUE(is_regular_primal(c.cfg, t, &circuits).regular);
  }
}

TEST(Regularity, NestedTrianglesHaveTwoNonRegular) {
  PointConfiguration cfg = nested_triangles();
  auto circuits = circuits_brute(cfg);
  EXPECT_EQ(circuits.size(), 15u);
  auto all = all_triangulations(cfg, circuits, simplex_volume(cfg, mask_of({0, 1, 2})));
  EXPECT_EQ(all.size(), 18u);
  int fine = 0, nonregular = 0;
  for (auto& t : all) {
    if (used_columns(t) != cfg.all_columns()) continue;
    ++fine;
    RegularityResult a = is_regular(cfg, t, &circuits);
    RegularityResult b = is_regular_primal(cfg, t, &circuits);
    EXPECT_EQ(a.regular, b.regular);
    auto forms = wall_forms(cfg, t, &circuits);
    if (a.regular) {
      EXPECT_TRUE(forms_positive(forms, a.heights));
      continue;
    }
    ++nonregular;
    // Alternative certificate: y >= 0, sum 1, sum y_k f_k = 0.
    ASSERT_EQ(a.weights.size(), forms.size());
    Rational total = 0;
    std::vector<Rational> comb(static_cast<std::size_t>(cfg.size()), 0);
    for (std::size_t k = 0; k < forms.size(); ++k) {
      EXPECT_GE(a.weights[k], 0);
      total += a.weights[k];
      for (auto& [col, coef] : forms[k].terms) comb[static_cast<std::size_t>(col)] += a.weights[k] * Rational(coef);
    }
    EXPECT_EQ(total, 1);
    for (auto& x : comb) EXPECT_EQ(x, 0);
  }
  EXPECT_EQ(fine, 8);
  EXPECT_EQ(nonregular, 2);
}

TEST(Regularity, GkzVectorSeparatesTriangulations) {
  SnakeContext c = make_context(SnakeWord("L"));
  auto circuits = all_circuits(c);
  ExploreOptions o;
  FlipGraph g = explore_flip_graph(c.cfg, canonical_triangulation(c.cfg), circuits, o);
  std::set<std::vector<BigInt>> seen;
  for (auto& t : g.nodes) {
    auto v = gkz_vector(c.cfg, t);
    BigInt s = 0;
    for (auto& x : v) s += x;
    EXPECT_EQ(s, BigInt(static_cast<unsigned long>(t.size() * static_cast<std::size_t>(c.cfg.dim + 1))));
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), g.size());
}
