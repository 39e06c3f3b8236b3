#include <gtest/gtest.h>

#include <snakeflip/conjectures.hpp>
#include <snakeflip/io.hpp>
#include <snakeflip/verify.hpp>

using namespace snakeflip;

namespace {

std::string fact(const ConjectureReport& r, const std::string& key) {
  for (auto& [k, v] : r.facts)
    if (k == key) return v;
  return "";
}

}  // namespace

TEST(Conjectures, Formulas) {
  // 2^{n+1} Cat(2n+1): 20, 336, 6864.
  EXPECT_EQ(conjectured_regular_count(1), 20);
  EXPECT_EQ(conjectured_regular_count(2), 336);
  EXPECT_EQ(conjectured_regular_count(3), 6864);
  // 4n (n-2)!: 12, 32, 120.
  EXPECT_EQ(conjectured_dual_count(3), 12);
  EXPECT_EQ(conjectured_dual_count(4), 32);
  EXPECT_EQ(conjectured_dual_count(5), 120);
  EXPECT_EQ(snake_q_word(1).str(), "LR");
  EXPECT_EQ(snake_q_word(3).str(), "LRRLLR");
  EXPECT_EQ(near_ladder_word(4).str(), "LRR");
}

TEST(Conjectures, SnakeQWordRealizesSnake) {
  for (int n = 0; n <= 4; ++n)
    EXPECT_TRUE(posets_isomorphic(q_poset(snake_q_word(n)), build_snake_poset(snake_word(n)))) << n;
}

TEST(Conjectures, RegularCountSmall) {
  ConjectureOptions o;
  o.threads = 2;
  auto r1 = conjecture_regular_count(1, o, true);
  EXPECT_TRUE(r1.holds);
  EXPECT_EQ(fact(r1, "regular"), "20");
  EXPECT_EQ(fact(r1, "all_triangulations"), "20");
  EXPECT_EQ(fact(r1, "all_reachable"), "yes");
  auto r2 = conjecture_regular_count(2, o, false);
  EXPECT_TRUE(r2.holds);
  EXPECT_EQ(fact(r2, "regular"), "336");
}

TEST(Conjectures, DualCount) {
  ConjectureOptions o;
  o.threads = 2;
  for (int n : {3, 4}) {
    auto r = conjecture_dual_count(n, o);
    EXPECT_TRUE(r.holds) << n;
  }
  EXPECT_EQ(fact(conjecture_dual_count(3, o), "isomorphic_dual"), "12");
}

TEST(Conjectures, KRegularAndDualGraph) {
  ConjectureOptions o;
  o.threads = 2;
  for (std::string w : {"LL", "LR", "LLR"}) {
    EXPECT_TRUE(conjecture_k_regular(SnakeWord(w), o).holds) << w;
    EXPECT_TRUE(conjecture_dual_graph(SnakeWord(w), o).holds) << w;
  }
  EXPECT_EQ(fact(conjecture_k_regular(SnakeWord("LR"), o), "secondary_dimension"), "3");
  EXPECT_EQ(fact(conjecture_dual_graph(SnakeWord("LL"), o), "non_isomorphic_regular"), "0");
}

TEST(Conjectures, BudgetMarksPartial) {
  ConjectureOptions o;
  o.budget.max_nodes = 10;
  auto r = conjecture_regular_count(2, o, false);
  EXPECT_TRUE(r.partial);
  EXPECT_FALSE(r.holds);
}

TEST(Io, PosetRoundTrip) {
  Poset p = build_snake_poset(SnakeWord("LLRL"));
  Poset q = poset_from_json(Json::parse(poset_json(p).dump()));
  EXPECT_EQ(q.size, p.size);
  EXPECT_EQ(q.covers, p.covers);
  EXPECT_EQ(q.labels, p.labels);
}

TEST(Io, TriangulationAndCircuitRoundTrip) {
  SnakeContext c = make_context(SnakeWord("LLR"));
  Triangulation t = canonical_triangulation(c.cfg);
  Json j = Json::parse(triangulation_json(c.cfg, t).dump());
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["config"]["size"], c.q.size);
  EXPECT_EQ(triangulation_from_json(c.cfg, j), t);
  for (auto& z : all_circuits(c)) EXPECT_EQ(circuit_from_json(c.cfg, Json::parse(circuit_json(c.cfg, z).dump())), normalize_circuit(z));
  Json bad = {{"plus", {"<nope>"}}, {"minus", Json::array()}};
  EXPECT_THROW(circuit_from_json(c.cfg, bad), ParseError);
}

TEST(Io, FlipGraphOfLIsASixCycle) {
  SnakeContext c = make_context(SnakeWord("L"));
  ExploreOptions o;
  FlipGraph g = explore_flip_graph(c.cfg, canonical_triangulation(c.cfg), all_circuits(c), o);
  std::string dot = flipgraph_dot(g);
  EXPECT_EQ(dot.rfind("graph flips {\n", 0), 0u);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '\n'), 1 + 6 + 6 + 1);
  Json j = flipgraph_json("L", c.cfg, g, true);
  EXPECT_EQ(j["node_count"], 6);
  EXPECT_EQ(j["edge_count"], 6);
  EXPECT_EQ(j["nodes"][0]["simplices"].size(), 3u);  // vol O(Q_epsL) = 3
  EXPECT_FALSE(flipgraph_json("L", c.cfg, g, false)["nodes"][0].contains("simplices"));
}

TEST(Io, VerifySummaryIsDeterministic) {
  VerifySummary a = verify_all(3, 1), b = verify_all(3, 4);
  EXPECT_TRUE(a.ok());
  EXPECT_EQ(a.text(), b.text());
  EXPECT_EQ(verify_json(a).dump(), verify_json(b).dump());
}
