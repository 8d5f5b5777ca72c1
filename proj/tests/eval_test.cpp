#include <gtest/gtest.h>

#include <random>

#include "louvain/eval.hpp"

namespace louvain {
namespace {

using Labels = std::vector<int>;

TEST(ComparePartitions, IdenticalPartitionsScoreOne) {
  const Labels p{0, 0, 1, 1, 2};
  const auto c = compare_partitions(p, p);
  EXPECT_EQ(c.tp, 2u);
  EXPECT_EQ(c.fp, 0u);
  EXPECT_EQ(c.fn, 0u);
  EXPECT_EQ(c.tn, 8u);
  EXPECT_EQ(c.sp, 1.0);
  EXPECT_EQ(c.se, 1.0);
  EXPECT_EQ(c.oq, 1.0);
  EXPECT_EQ(c.rand, 1.0);
}

TEST(ComparePartitions, SplitReference) {
  const auto c = compare_partitions(Labels{0, 0, 0, 0}, Labels{0, 0, 1, 1});
  EXPECT_EQ(c.tp, 2u);
  EXPECT_EQ(c.fp, 0u);
  EXPECT_EQ(c.fn, 4u);
  EXPECT_EQ(c.tn, 0u);
  EXPECT_EQ(c.sp, 1.0);
  EXPECT_DOUBLE_EQ(c.se, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.oq, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.rand, 1.0 / 3.0);
  EXPECT_EQ(format_comparison(c), "2,0,4,0,1.0,0.333333,0.333333,0.333333");
}

TEST(ComparePartitions, VacuousDenominatorCountsAsOne) {
  const auto c = compare_partitions(Labels{0, 1, 2}, Labels{7, 7, 7});
  EXPECT_EQ(c.tp, 0u);
  EXPECT_EQ(c.fp, 3u);
  EXPECT_EQ(c.fn, 0u);
  EXPECT_EQ(c.tn, 0u);
  EXPECT_EQ(c.sp, 0.0);
  EXPECT_EQ(c.se, 1.0);
  EXPECT_EQ(c.oq, 0.0);
  EXPECT_EQ(c.rand, 0.0);
  EXPECT_EQ(format_comparison(c), "0,3,0,0,0.0,1.0,0.0,0.0");
}

TEST(ComparePartitions, MatchesBruteForce) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = std::uniform_int_distribution<std::size_t>(2, 500)(rng);
    const auto k1 = std::uniform_int_distribution<int>(1, 40)(rng);
    const auto k2 = std::uniform_int_distribution<int>(1, 40)(rng);
    Labels a(n), b(n);
    for (auto& x : a) x = std::uniform_int_distribution<int>(0, k1 - 1)(rng);
    for (auto& x : b) x = std::uniform_int_distribution<int>(0, k2 - 1)(rng);
    EXPECT_EQ(compare_partitions(a, b), compare_partitions_bruteforce(a, b));
  }
}

TEST(ComparePartitions, SwappingRolesSwapsErrors) {
  const Labels a{0, 0, 1, 1, 1, 2, 3};
  const Labels b{5, 5, 5, 6, 6, 6, 6};
  const auto ab = compare_partitions(a, b);
  const auto ba = compare_partitions(b, a);
  EXPECT_EQ(ab.tp, ba.tp);
  EXPECT_EQ(ab.fp, ba.fn);
  EXPECT_EQ(ab.fn, ba.fp);
  EXPECT_EQ(ab.sp, ba.se);
  EXPECT_EQ(ab.rand, ba.rand);
}

TEST(ComparePartitions, LabelsAreOpaque) {
  EXPECT_EQ(compare_partitions(Labels{3, 3, 9}, Labels{1, 2, 2}), compare_partitions(Labels{0, 0, 1}, Labels{8, 4, 4}));
}

TEST(ComparePartitions, Errors) {
  EXPECT_THROW(compare_partitions(Labels{0, 1}, Labels{0}), MismatchError);
  const Labels big(kBruteForceLimit + 1, 0);
  EXPECT_THROW(compare_partitions_bruteforce(big, big), PreconditionError);
  EXPECT_NO_THROW(compare_partitions(big, big));
}

}  // namespace
}  // namespace louvain
