#include <gtest/gtest.h>

#include <random>

#include "moodcast/error.hpp"
#include "moodcast/similarity.hpp"
#include "oracles.hpp"

using namespace moodcast;

TEST(Dice, WorkedValues) {
  EXPECT_DOUBLE_EQ(dice_similarity("night", "nacht"), 0.25);
  EXPECT_DOUBLE_EQ(dice_similarity("Night", "NIGHT"), 1.0);
  EXPECT_DOUBLE_EQ(dice_similarity("a cat", "acat"), 1.0);
  EXPECT_DOUBLE_EQ(dice_similarity("", ""), 1.0);
  EXPECT_DOUBLE_EQ(dice_similarity("a", "a"), 1.0);
  EXPECT_DOUBLE_EQ(dice_similarity("a", "b"), 0.0);
  EXPECT_DOUBLE_EQ(dice_similarity("a", "ab"), 0.0);
  // Multiset: "aaaa" has three "aa" bigrams, "aa" has one.
  EXPECT_DOUBLE_EQ(dice_similarity("aaaa", "aa"), 0.5);
}

TEST(Dice, SymmetricAndBounded) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    const auto a = testkit::random_string(rng, "abcAB c", 12);
    const auto b = testkit::random_string(rng, "abcAB c", 12);
    const double d = dice_similarity(a, b);
    EXPECT_EQ(d, dice_similarity(b, a));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
    EXPECT_EQ(dice_similarity(a, a), 1.0);
  }
}

TEST(Dice, MatchesBigramEnumerationOracle) {
  std::mt19937_64 rng(2024);
  const std::string small = "abcd ";
  const std::string wide = "abcdefghijklmnopqrstuvwxyzABCZ0129 .,-\t";
  for (int i = 0; i < 1000; ++i) {
    const auto& alphabet = i % 2 ? small : wide;
    const auto a = testkit::random_string(rng, alphabet, 30);
    const auto b = testkit::random_string(rng, alphabet, 30);
    ASSERT_EQ(dice_similarity(a, b), testkit::dice_oracle(a, b)) << "'" << a << "' vs '" << b << "'";
  }
}

TEST(BestMatch, LowestIndexWinsTies) {
  const std::vector<std::string> c = {"cat on sofa", "dog", "cat on sofa"};
  const auto m = best_match("cat on a sofa", c);
  EXPECT_EQ(m.index, 0u);
  EXPECT_GT(m.score, 0.8);
  EXPECT_THROW(best_match("x", std::vector<std::string>{}), ValidationError);
  const std::vector<std::string> none = {"zz", "qq"};
  EXPECT_EQ(best_match("abc", none).index, 0u);
}
