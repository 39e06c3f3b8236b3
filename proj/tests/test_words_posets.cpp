#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include <snakeflip/posets.hpp>
#include <snakeflip/snake.hpp>
#include <snakeflip/words.hpp>

using namespace snakeflip;

namespace {

// Naive oracle: count permutations that respect every cover relation.
long naive_linear_extensions(const Poset& p) {
  std::vector<int> perm(static_cast<std::size_t>(p.size));
  std::iota(perm.begin(), perm.end(), 0);
  long count = 0;
  do {
    std::vector<int> pos(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) pos[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    bool ok = true;
    for (auto [lo, hi] : p.covers) ok = ok && pos[static_cast<std::size_t>(lo)] < pos[static_cast<std::size_t>(hi)];
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Naive oracle: every subset tested for upward closure.
int naive_filter_count(const Poset& p) {
  int count = 0;
  for (Mask m = 0; m < bit(p.size); ++m) {
    bool up = true;
    for (auto [lo, hi] : p.covers)
      if (has(m, lo) && !has(m, hi)) up = false;
    count += up;
  }
  return count;
}

}  // namespace

TEST(Words, ParseAcceptsEpsPrefixAndRejectsJunk) {
  EXPECT_EQ(parse_word("LRLRL").length(), 5);
  EXPECT_EQ(parse_word("epsLR").str(), "LR");
  EXPECT_EQ(parse_word("\xCE\xB5LL").str(), "LL");
  EXPECT_EQ(parse_word("").length(), 0);
  EXPECT_EQ(parse_word("eps").length(), 0);
  EXPECT_THROW(parse_word("LXR"), ParseError);
}

TEST(Words, SwapAndFlip) {
  EXPECT_EQ(swap(SnakeWord("LLRL"), 2).str(), "LRLR");
  EXPECT_EQ(flip_letters(SnakeWord("LLR")).str(), "RRL");
  EXPECT_THROW(swap(SnakeWord("L"), 2), PreconditionError);
  for (int n = 0; n <= 6; ++n)
    for (auto& w : all_words(n))
      for (int i = 1; i <= n; ++i) EXPECT_EQ(swap(swap(w, i), i), w);
}

TEST(Words, AllWordsCountsAndV) {
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(all_words(n).size(), std::size_t{1} << n);
  EXPECT_TRUE(is_in_V(SnakeWord("LLRRLL")));
  EXPECT_FALSE(is_in_V(SnakeWord("LRL")));
  EXPECT_EQ(snake_word(4).str(), "LRLR");
  EXPECT_EQ(ladder_word(3).str(), "LLL");
  EXPECT_EQ(turns(SnakeWord("LLLRRLLLLRRRRRLL")), 4);
}

TEST(Words, FigureFourGraph) {
  WordGraph g = word_graph(SnakeWord("LLLRRLLLLRRRRRLL"));
  EXPECT_EQ(g.vertex_count, 17);
  std::vector<std::pair<int, int>> chords;
  for (auto [a, b] : g.edges)
    if (b != a + 1) chords.push_back({a, b});
  std::vector<std::pair<int, int>> expect = {{2, 4}, {4, 6}, {8, 10}, {13, 15}};
  EXPECT_EQ(chords, expect);
}

TEST(Words, LetterRuleAgreesOnV) {
  for (int n = 0; n <= 8; ++n)
    for (auto& w : all_words(n))
      if (is_in_V(w)) EXPECT_EQ(word_graph(w).edges, word_graph_letter_rule(w).edges) << w.display();
}

TEST(Words, SubgraphRecursionMatchesEnumeration) {
  for (int n = 0; n <= 8; ++n)
    for (auto& w : all_words(n))
      if (is_in_V(w))
        EXPECT_EQ(count_subgraphs_recursive(w), connected_induced_subgraphs(word_graph(w)).size()) << w.display();
}

TEST(Posets, SnakePosetSizes) {
  for (int n = 0; n <= 8; ++n)
    for (auto& w : all_words(n)) {
      Poset p = build_snake_poset(w);
      EXPECT_EQ(p.size, 2 * n + 4);
      EXPECT_EQ(snake_lattice(w).size, 2 * n + 6);
      EXPECT_EQ(q_poset(w).size, n + 4);
    }
}

TEST(Posets, FigureFourSizes) {
  SnakeWord w("LLLRRLLLLRRRRRLL");
  EXPECT_EQ(build_snake_poset(w).size, 36);
  EXPECT_EQ(snake_lattice(w).size, 38);
  EXPECT_EQ(q_poset(w).size, 20);
}

TEST(Posets, FiltersOfSmallSnakes) {
  EXPECT_EQ(filter_lattice(build_snake_poset(SnakeWord(""))).size(), 6);
  EXPECT_EQ(filter_lattice(build_snake_poset(SnakeWord("L"))).size(), 10);
  for (int n = 0; n <= 4; ++n)
    for (auto& w : all_words(n)) {
      Poset p = build_snake_poset(w);
      EXPECT_EQ(filter_lattice(p).size(), naive_filter_count(p)) << w.display();
    }
}

TEST(Posets, MeetIrreduciblesRecoverLattice) {
  for (int n = 0; n <= 6; ++n)
    for (auto& w : all_words(n)) {
      Poset lat = snake_lattice(w);
      Poset q = meet_irreducibles(lat);
      EXPECT_TRUE(posets_isomorphic(lattice_poset(filter_lattice(q)), lat)) << w.display();
    }
}

TEST(Posets, LinearExtensionsAgainstPermutations) {
  for (int n = 0; n <= 2; ++n)
    for (auto& w : all_words(n)) {
      Poset p = build_snake_poset(w);
      EXPECT_EQ(count_linear_extensions(p), naive_linear_extensions(p)) << w.display();
      EXPECT_EQ(count_maximal_chains(filter_lattice(p)), naive_linear_extensions(p));
    }
  EXPECT_EQ(count_linear_extensions(chain_poset(5)), 1);
  EXPECT_EQ(count_linear_extensions(antichain_poset(5)), 120);
}

TEST(Posets, SnakeQIsSnakeForSnakeQWord) {
  EXPECT_TRUE(posets_isomorphic(q_poset(SnakeWord("LR")), build_snake_poset(snake_word(1))));
  EXPECT_TRUE(posets_isomorphic(q_poset(SnakeWord("LRRL")), build_snake_poset(snake_word(2))));
  EXPECT_FALSE(posets_isomorphic(q_poset(SnakeWord("LL")), build_snake_poset(snake_word(1))));
}

TEST(Posets, LadderDecompositionOfFigureSix) {
  SnakeWord w("LLLRRLLLLRRRRRLL");
  LadderDecomposition d = ladder_decomposition(snake_lattice(w), w);
  EXPECT_EQ(d.t(), 5);
  EXPECT_EQ(d.box_counts(), (std::vector<int>{4, 3, 5, 6, 3}));
}

TEST(Posets, LadderCountIsTurnsPlusOne) {
  for (int n = 0; n <= 7; ++n)
    for (auto& w : all_words(n))
      if (is_in_V(w)) EXPECT_EQ(ladder_decomposition(snake_lattice(w), w).t(), turns(w) + 1) << w.display();
}

TEST(Posets, EpsilonLabeling) {
  SnakeContext c = make_context(SnakeWord(""));
  LadderDecomposition d = ladder_decomposition(c.lattice, c.word);
  std::vector<std::string> got;
  for (int i = 0; i < 6; ++i)
    got.push_back(c.cfg.labels[static_cast<std::size_t>(c.element_column[static_cast<std::size_t>(d.x_to_element[static_cast<std::size_t>(i)])])]);
  // Generators are numbered from 0, one below the figure's numbering.
  EXPECT_EQ(got, (std::vector<std::string>{"<>", "<0>", "<1>", "<2>", "<1,2>", "<0hat>"}));
}
