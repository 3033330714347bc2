#include <gtest/gtest.h>

#include <map>
#include <set>

#include "rrtcut/errors.hpp"
#include "rrtcut/tree.hpp"

using namespace rrtcut;
using tree::RecursiveTree;

TEST(Tree, ValidateRejectsBadParents) {
  EXPECT_FALSE(tree::validate(std::vector<Label>{1, 1, 2}).has_value());
  EXPECT_TRUE(tree::validate(std::vector<Label>{1, 3}).has_value());
  EXPECT_TRUE(tree::validate(std::vector<Label>{2}).has_value());
  EXPECT_TRUE(tree::validate(std::vector<Label>{0}).has_value());
  EXPECT_THROW(RecursiveTree(std::vector<Label>{1, 3}), std::invalid_argument);
}

TEST(Tree, SizesAndParents) {
  const RecursiveTree t({1, 1, 2, 4});
  EXPECT_EQ(t.size(), 5u);
  EXPECT_EQ(t.edge_count(), 4u);
  EXPECT_EQ(t.parent(5), 4u);
  EXPECT_EQ(RecursiveTree().size(), 1u);
}

TEST(Tree, ChildIndexIsAscending) {
  const RecursiveTree t({1, 1, 2, 1});
  const tree::ChildIndex idx(t);
  const auto kids = idx.children(1);
  EXPECT_EQ(std::vector<Label>(kids.begin(), kids.end()), (std::vector<Label>{2, 3, 5}));
  EXPECT_TRUE(idx.children(5).empty());
}

TEST(Tree, EnumerationCountsAndOrder) {
  long expected = 1;
  for (std::size_t n = 1; n <= 7; ++n) {
    if (n >= 2) expected *= static_cast<long>(n - 1);
    const auto all = tree::enumerate_all(n);
    EXPECT_EQ(static_cast<long>(all.size()), expected) << "n = " << n;
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    EXPECT_EQ(std::set<RecursiveTree>(all.begin(), all.end()).size(), all.size());
  }
  const auto four = tree::enumerate_all(4);
  EXPECT_EQ(four.front(), RecursiveTree({1, 1, 1}));
  EXPECT_EQ(four.back(), RecursiveTree({1, 2, 3}));
}

TEST(Tree, EnumerationCap) {
  EXPECT_THROW(tree::for_each_tree(tree::kEnumerationCap + 1, [](const RecursiveTree&) {}),
               BudgetExceeded);
}

TEST(Tree, GrowRandomIsValidAndDeterministic) {
  RandomStream a(7), b(7);
  const auto t1 = tree::grow_random(200, a);
  const auto t2 = tree::grow_random(200, b);
  EXPECT_EQ(t1, t2);
  EXPECT_FALSE(tree::validate(t1.parents()).has_value());
  EXPECT_THROW(tree::grow_random(0, a), std::invalid_argument);
}

TEST(Tree, GrowRandomHitsEveryShape) {
  RandomStream rng(11);
  std::map<RecursiveTree, int> seen;
  const int reps = 24000;
  for (int i = 0; i < reps; ++i) ++seen[tree::grow_random(5, rng)];
  ASSERT_EQ(seen.size(), 24u);
  for (const auto& [t, count] : seen) EXPECT_NEAR(count, reps / 24.0, 5 * std::sqrt(reps / 24.0));
}

TEST(Tree, TextRoundTrip) {
  const RecursiveTree t({1, 2, 2, 1});
  EXPECT_EQ(tree::to_text(t), "1,2,2,1");
  EXPECT_EQ(tree::from_text("1,2,2,1"), t);
  EXPECT_EQ(tree::from_text(""), RecursiveTree());
  EXPECT_EQ(tree::to_text(RecursiveTree()), "");
  EXPECT_THROW(tree::from_text("1,x"), std::invalid_argument);
  EXPECT_THROW(tree::from_text("1,3"), std::invalid_argument);
}

TEST(Tree, RelabelKeepsOrder) {
  // 1-2, 1-3, 3-4, 2-5; keep {3, 4}: a single edge
  const RecursiveTree t({1, 1, 3, 2});
  const std::vector<Label> part{3, 4};
  EXPECT_EQ(tree::relabel(t, part), RecursiveTree({1}));
  const std::vector<Label> rest{1, 2, 5};
  EXPECT_EQ(tree::relabel(t, rest), RecursiveTree({1, 2}));
}
