#include <random>

#include <gtest/gtest.h>

#include "labelkit/matching.hpp"
#include "labelkit/model.hpp"
#include "oracles.hpp"

namespace labelkit {
namespace {

TEST(Matching, TwoByTwo) {
  Eigen::MatrixXd c(2, 2);
  c << 1, 2, 3, 1;
  const auto a = min_cost_perfect_matching(c);
  EXPECT_EQ(a, (std::vector<int>{0, 1}));
  EXPECT_EQ(assignment_cost(c, a), 2.0);
}

TEST(Matching, IdentityFavoring) {
  const Eigen::MatrixXd c = Eigen::MatrixXd::Ones(6, 6) - Eigen::MatrixXd::Identity(6, 6);
  const auto a = min_cost_perfect_matching(c);
  for (int r = 0; r < 6; ++r) EXPECT_EQ(a[r], r);
  EXPECT_EQ(assignment_cost(c, a), 0.0);
}

TEST(Matching, EmptyAndSingle) {
  EXPECT_TRUE(min_cost_perfect_matching(Eigen::MatrixXd(0, 0)).empty());
  Eigen::MatrixXd one(1, 1);
  one << 4.5;
  EXPECT_EQ(min_cost_perfect_matching(one), (std::vector<int>{0}));
}

TEST(Matching, RejectsBadInput) {
  EXPECT_THROW(min_cost_perfect_matching(Eigen::MatrixXd::Zero(2, 3)), Error);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 2);
  c(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(min_cost_perfect_matching(c), Error);
  c(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(min_cost_perfect_matching(c), Error);
}

TEST(Matching, IntegerMatricesMatchBruteForceIncludingTieBreak) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + t % 7;
    std::uniform_int_distribution<int> u(0, t % 2 ? 3 : 50);  // small ranges force ties
    Eigen::MatrixXd c(n, n);
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < n; ++col) c(r, col) = u(rng);
    std::vector<int> best;
    const double expected = oracle::brute_force_assignment(c, &best);
    const auto got = min_cost_perfect_matching(c);
    ASSERT_EQ(assignment_cost(c, got), expected) << "case " << t;
    ASSERT_EQ(got, best) << "case " << t;
  }
}

TEST(Matching, RealMatricesMatchBruteForce) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 6;
    Eigen::MatrixXd c(n, n);
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < n; ++col) c(r, col) = u(rng) / (1 << (col % 4));
    EXPECT_NEAR(assignment_cost(c, min_cost_perfect_matching(c)),
                oracle::brute_force_assignment(c), 1e-12);
  }
}

TEST(Matching, Deterministic) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> u(0, 2);
  Eigen::MatrixXd c(40, 40);
  for (int r = 0; r < 40; ++r)
    for (int col = 0; col < 40; ++col) c(r, col) = u(rng);
  EXPECT_EQ(min_cost_perfect_matching(c), min_cost_perfect_matching(c));
}

}  // namespace
}  // namespace labelkit
