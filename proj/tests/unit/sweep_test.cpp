#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "labelkit/matching.hpp"
#include "labelkit/sweep.hpp"
#include "oracles.hpp"

namespace labelkit {
namespace {

using testing::make_instance;

std::vector<testing::Spot> random_spots(std::mt19937_64& rng, std::size_t n, bool grid = false) {
  std::uniform_real_distribution<double> ux(0, 300), uy(0, 299);
  std::uniform_int_distribution<int> gx(0, 10), gy(0, 9);
  std::vector<testing::Spot> spots;
  std::set<std::pair<double, double>> taken;
  while (spots.size() < n) {
    // The coarse grid produces shared x and y values.
    const double x = grid ? gx(rng) * 30.0 : ux(rng);
    const double y = grid ? gy(rng) * 29.0 : uy(rng);
    if (taken.emplace(x, y).second) spots.push_back({x, y});
  }
  return spots;
}

// Crossings among all leaders, leaders sharing a port exempt.
int crossings(const Instance& inst, const std::vector<std::vector<FeatureIndex>>& per_port) {
  std::vector<Leader> leaders;
  std::vector<int> port_of;
  for (int j = 0; j < static_cast<int>(per_port.size()); ++j) {
    for (FeatureIndex f : per_port[j]) {
      leaders.push_back(make_leader(inst, j, f));
      port_of.push_back(j);
    }
  }
  int count = 0;
  for (std::size_t a = 0; a < leaders.size(); ++a)
    for (std::size_t b = a + 1; b < leaders.size(); ++b)
      if (port_of[a] != port_of[b] && oracle::polylines_cross(leaders[a], leaders[b])) ++count;
  return count;
}

TEST(CrossingFree, SinglePageMatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    const int k = 1 + t % 6;
    const Instance inst = make_instance(k, random_spots(rng, k, t % 3 == 0));
    std::vector<FeatureIndex> fs(k);
    std::iota(fs.begin(), fs.end(), FeatureIndex{0});
    const std::vector<int> cap(k, 1);
    const auto per_port = crossing_free_assignment(inst, fs, cap);
    double best = 1e300;
    std::vector<FeatureIndex> perm = fs;
    do {
      double len = 0;
      for (int j = 0; j < k; ++j) len += leader_length(inst.port(j), inst.location(perm[j]));
      best = std::min(best, len);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& p : per_port) ASSERT_EQ(p.size(), 1u);
    EXPECT_NEAR(total_leader_length(inst, per_port), best, 1e-9) << "case " << t;
    EXPECT_EQ(crossings(inst, per_port), 0) << "case " << t;
  }
}

TEST(CrossingFree, SortedSeparatedFeaturesKeepOrder) {
  const Instance inst = make_instance(3, {{40, 10}, {150, 20}, {260, 30}});
  const std::vector<FeatureIndex> fs{2, 0, 1};
  const std::vector<int> cap(3, 1);
  const auto per_port = crossing_free_assignment(inst, fs, cap);
  EXPECT_EQ(per_port, (std::vector<std::vector<FeatureIndex>>{{0}, {1}, {2}}));
}

TEST(CrossingFree, CapacitiesMatchTransportOptimum) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 200; ++t) {
    const int k = 2 + t % 4;
    const std::size_t n = 4 + t % 9;
    const Instance inst = make_instance(k, random_spots(rng, n, t % 2 == 0));
    std::vector<FeatureIndex> fs(n);
    std::iota(fs.begin(), fs.end(), FeatureIndex{0});
    // Random capacities summing to n.
    std::vector<int> cap(k, 0);
    std::uniform_int_distribution<int> pick(0, k - 1);
    for (std::size_t i = 0; i < n; ++i) ++cap[pick(rng)];
    const auto per_port = crossing_free_assignment(inst, fs, cap);
    Eigen::MatrixXd c(n, n);
    std::size_t col = 0;
    for (int j = 0; j < k; ++j)
      for (int r = 0; r < cap[j]; ++r, ++col)
        for (std::size_t i = 0; i < n; ++i) c(i, col) = leader_length(inst.port(j), inst.location(i));
    const double expected = assignment_cost(c, min_cost_perfect_matching(c));
    for (int j = 0; j < k; ++j) ASSERT_EQ(static_cast<int>(per_port[j].size()), cap[j]);
    EXPECT_NEAR(total_leader_length(inst, per_port), expected, 1e-9) << "case " << t;
    EXPECT_EQ(crossings(inst, per_port), 0) << "case " << t;
  }
}

TEST(CrossingFree, RejectsBadCapacities) {
  const Instance inst = make_instance(2, {{10, 10}, {20, 20}});
  const std::vector<FeatureIndex> fs{0, 1};
  const std::vector<int> short_cap{1};
  const std::vector<int> wrong_sum{1, 2};
  EXPECT_THROW(crossing_free_assignment(inst, fs, short_cap), Error);
  EXPECT_THROW(crossing_free_assignment(inst, fs, wrong_sum), Error);
  const std::vector<FeatureIndex> with_dummy{0, 2};
  const std::vector<int> cap{1, 1};
  EXPECT_THROW(crossing_free_assignment(inst, with_dummy, cap), Error);
}

TEST(BalancedLoads, MinimizeLengthUnderDepth) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const int k = 2 + t % 4;
    const std::size_t n = 3 + t % 10;
    const int depth = static_cast<int>((n + k - 1) / k);
    const Instance inst = make_instance(k, random_spots(rng, n, t % 2 == 0));
    std::vector<FeatureIndex> fs(n);
    std::iota(fs.begin(), fs.end(), FeatureIndex{0});
    const auto loads = balanced_port_loads(inst, fs, depth);
    ASSERT_EQ(std::accumulate(loads.begin(), loads.end(), 0), static_cast<int>(n));
    for (int l : loads) {
      ASSERT_GE(l, 0);
      ASSERT_LE(l, depth);
    }
    const auto per_port = crossing_free_assignment(inst, fs, loads);
    EXPECT_NEAR(total_leader_length(inst, per_port), oracle::replicated_port_matching(inst),
                1e-9)
        << "case " << t;
  }
}

}  // namespace
}  // namespace labelkit
