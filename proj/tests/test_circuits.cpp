#include <gtest/gtest.h>

#include <snakeflip/circuits.hpp>
#include <snakeflip/snake.hpp>
#include <snakeflip/verify.hpp>

using namespace snakeflip;

namespace {

// Oracle: the dependence of a circuit, summed over coordinates and the
// homogenizing row, vanishes with all coefficients +-1.
bool balanced(const PointConfiguration& cfg, const Circuit& z) {
  for (int r = 0; r < cfg.dim; ++r) {
    int s = 0;
    for (int j : bits_of(z.plus)) s += cfg.columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
    for (int j : bits_of(z.minus)) s -= cfg.columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
    if (s != 0) return false;
  }
  return popcount(z.plus) == popcount(z.minus) && (z.plus & z.minus) == 0;
}

}  // namespace

TEST(Circuits, EpsilonHasOneCircuit) {
  SnakeContext c = make_context(SnakeWord(""));
  auto zs = all_circuits(c);
  ASSERT_EQ(zs.size(), 1u);
  // x1 + x4 = x2 + x3 in the figure's numbering.
  Circuit z = normalize_circuit(zs[0]);
  auto lab = [&](Mask m) {
    std::vector<std::string> v;
    for (int j : bits_of(m)) v.push_back(c.cfg.labels[static_cast<std::size_t>(j)]);
    return v;
  };
  EXPECT_EQ(lab(z.plus), (std::vector<std::string>{"<0>", "<1,2>"}));
  EXPECT_EQ(lab(z.minus), (std::vector<std::string>{"<1>", "<2>"}));
}

TEST(Circuits, FrozenCounts) {
  const std::vector<std::pair<std::string, std::size_t>> table = {
      {"", 1}, {"L", 3}, {"LL", 6}, {"LR", 7}, {"LLR", 12}, {"LLRR", 19}};
  for (auto& [s, n] : table) {
    SnakeContext c = make_context(SnakeWord(s));
    EXPECT_EQ(all_circuits(c).size(), n) << s;
    EXPECT_EQ(circuits_brute(c.cfg).size(), n) << s;
  }
}

TEST(Circuits, GammaEqualsBruteForce) {
  for (auto& w : words_up_to(5, true)) {
    SnakeContext c = make_context(w);
    EXPECT_EQ(sorted_circuits(all_circuits(c)), circuits_brute(c.cfg)) << w.display();
  }
}

TEST(Circuits, UnitBalancedAndSized) {
  for (auto& w : words_up_to(6, true)) {
    SnakeContext c = make_context(w);
    auto [lo, hi] = circuit_size_bounds(w);
    int smallest = 64, largest = 0;
    for (auto& z : all_circuits(c)) {
      EXPECT_TRUE(balanced(c.cfg, z)) << w.display();
      EXPECT_TRUE(unit_dependence(c.cfg, z));
      smallest = std::min(smallest, popcount(z.support()));
      largest = std::max(largest, popcount(z.support()));
    }
    EXPECT_EQ(smallest, lo) << w.display();
    EXPECT_EQ(largest, hi) << w.display();
  }
}

TEST(Circuits, FigureFourCount) {
  SnakeContext c = make_context(SnakeWord("LLLRRLLLLRRRRRLL"));
  auto zs = all_circuits(c);
  EXPECT_EQ(zs.size(), 510u);
  EXPECT_EQ(zs.size(), connected_induced_subgraphs(c.graph).size());
  for (auto& z : zs) EXPECT_TRUE(balanced(c.cfg, z));
}

TEST(Circuits, FigureSixCircuitHasEightElements) {
  SnakeContext c = make_context(SnakeWord("LLLRRLLLLRRRRRLL"));
  Circuit z = circuit_from_subgraph(c, mask_of({1, 2, 3, 4, 6, 7, 8}));
  EXPECT_EQ(popcount(z.support()), 8);
  EXPECT_TRUE(balanced(c.cfg, z));
}

TEST(Circuits, DisconnectedSubgraphRejected) {
  SnakeContext c = make_context(SnakeWord("LLL"));
  EXPECT_THROW(circuit_from_subgraph(c, mask_of({0, 2})), PreconditionError);
  EXPECT_THROW(circuit_from_subgraph(c, 0), PreconditionError);
}

TEST(Circuits, KernelVectorOfCircuitSupport) {
  SnakeContext c = make_context(SnakeWord("LR"));
  for (auto& z : all_circuits(c)) {
    auto k = kernel_vector(c.cfg, bits_of(z.support()));
    ASSERT_FALSE(k.empty());
    for (auto& x : k) EXPECT_EQ(abs(x), 1);
    EXPECT_EQ(circuit_on_support(c.cfg, z.support()), normalize_circuit(z));
  }
}
