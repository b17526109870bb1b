#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "labelkit/costs.hpp"
#include "labelkit/matching.hpp"
#include "labelkit/multipage.hpp"
#include "labelkit/synthetic.hpp"
#include "oracles.hpp"

namespace labelkit {
namespace {

using testing::make_instance;

std::vector<Instance> suite(std::size_t n, int k, std::size_t count, std::uint64_t seed) {
  GeneratorOptions g;
  g.n = n;
  g.k = k;
  g.label = {300.0 / k, 300.0 / k};
  return generate_instances(g, count, seed);
}

bool page_crossing_free(const Labeling& l, const Instance& inst) {
  for (const State& s : l.states) {
    if (crossing_count(s, inst) != 0) return false;
  }
  return true;
}

TEST(EdgeWeight, Endpoints) {
  const Instance inst = make_instance(3, {{20, 100, 0.25}});
  const Feature& f = inst.feature(0);
  for (int page = 1; page <= 3; ++page) {
    const double scale = 1.0 / (3 * std::pow(2.0, page));
    for (int port = 1; port <= 3; ++port) {
      EXPECT_DOUBLE_EQ(edge_weight(f, port, page, 0.0, inst), scale * 0.75);
      const double len = leader_length(inst.port(port - 1), {f.x, f.y});
      EXPECT_DOUBLE_EQ(edge_weight(f, port, page, 1.0, inst), scale * len / 600.0);
    }
  }
}

TEST(EdgeWeight, AssignmentSumEqualsMpl) {
  const auto instances = suite(13, 4, 100, 31);
  for (std::size_t t = 0; t < instances.size(); ++t) {
    const Instance& inst = instances[t];
    const double alpha = (t % 5) / 4.0;
    const auto slots = oracle::random_slot_sequence(inst, t);
    double sum = 0.0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      const int port = static_cast<int>(s % 4) + 1;
      const int page = static_cast<int>(s / 4) + 1;
      if (inst.is_dummy(slots[s])) {
        sum += (1.0 - alpha) / (4 * std::pow(2.0, page));
      } else {
        sum += edge_weight(inst.feature(slots[s]), port, page, alpha, inst);
      }
    }
    const Labeling l = oracle::slots_to_labeling(inst, slots, alpha);
    EXPECT_NEAR(sum, cost_mpl(l, inst, alpha), 1e-9);
  }
}

TEST(MatchingProblem, ShapeAndEntries) {
  const Instance inst = suite(7, 3, 1, 4)[0];
  const MatchingProblem p = build_matching_problem(inst, 0.5);
  EXPECT_EQ(p.pages, 3);
  EXPECT_EQ(p.k, 3);
  EXPECT_EQ(p.real_rows, 7u);
  ASSERT_EQ(p.cost.rows(), 9);
  ASSERT_EQ(p.cost.cols(), 9);
  EXPECT_TRUE(p.cost.allFinite());
  EXPECT_GE(p.cost.minCoeff(), 0.0);
  EXPECT_EQ(MatchingProblem::slot_index(2, 3, 3), 7);
}

TEST(ResolvePage, SortedFeaturesKeepIdentityOrder) {
  const Instance inst = make_instance(3, {{40, 10}, {150, 200}, {260, 30}});
  const std::vector<FeatureIndex> fs{1, 2, 0};
  const State s = resolve_page_crossings(fs, {}, inst, 2);
  EXPECT_EQ(s.assignment, (std::vector<FeatureIndex>{0, 1, 2}));
  EXPECT_EQ(s.page_index, 2);
  EXPECT_EQ(crossing_count(s, inst), 0);
}

TEST(ResolvePage, TwoFeatureExchange) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(0, 300), uy(0, 299);
  for (int t = 0; t < 500; ++t) {
    const Instance inst = make_instance(2, {{ux(rng), uy(rng)}, {ux(rng), uy(rng)}});
    const std::vector<FeatureIndex> fs{0, 1};
    const State s = resolve_page_crossings(fs, {}, inst, 1);
    const State other = testing::state_of({s.assignment[1], s.assignment[0]});
    EXPECT_EQ(crossing_count(s, inst), 0);
    EXPECT_LE(leader_cost(s, inst), leader_cost(other, inst) + 1e-15);
  }
}

TEST(ResolvePage, DummiesFillRightmostPorts) {
  const Instance inst = make_instance(4, {{250, 10}, {20, 20}});
  const std::vector<FeatureIndex> fs{0, 1};
  const std::vector<FeatureIndex> dummies{2, 3};
  const State s = resolve_page_crossings(fs, dummies, inst, 1);
  EXPECT_EQ(s.assignment, (std::vector<FeatureIndex>{1, 0, 2, 3}));
  EXPECT_THROW(resolve_page_crossings(fs, {}, inst, 1), Error);
}

TEST(SolveMultipage, HeavierFeatureFirstAtAlphaZero) {
  const Instance inst = make_instance(1, {{100, 100, 0.5}, {200, 200, 1.0}});
  const Labeling l = solve_multipage(inst, 0.0);
  ASSERT_EQ(l.states.size(), 2u);
  EXPECT_EQ(l.states[0].assignment, (std::vector<FeatureIndex>{1}));
  EXPECT_EQ(l.states[1].assignment, (std::vector<FeatureIndex>{0}));
}

TEST(SolveMultipage, SinglePageIsResolvedPage) {
  for (const Instance& inst : suite(5, 5, 20, 6)) {
    const Labeling l = solve_multipage(inst, 0.7);
    ASSERT_EQ(l.states.size(), 1u);
    const std::vector<FeatureIndex> all{0, 1, 2, 3, 4};
    const State direct = resolve_page_crossings(all, {}, inst, 1);
    EXPECT_EQ(l.states[0].assignment, direct.assignment);
    EXPECT_NEAR(weight_cost(l.states[0], inst), weight_cost(direct, inst), 0.0);
  }
}

TEST(SolveMultipage, MatchesExhaustiveOracle) {
  const auto instances = suite(8, 2, 30, 41);
  for (const Instance& inst : instances) {
    for (double alpha : {0.0, 0.5, 1.0}) {
      const Labeling l = solve_multipage(inst, alpha);
      EXPECT_NEAR(cost_mpl(l, inst, alpha), oracle::exhaustive_multipage(inst, alpha), 1e-9);
      EXPECT_EQ(check_labeling(l, inst), "");
      EXPECT_TRUE(page_crossing_free(l, inst));
    }
  }
}

TEST(SolveMultipage, PaddedInstancesMatchExhaustiveOracle) {
  for (int k : {2, 3}) {
    for (const Instance& inst : suite(7, k, 15, 42 + k)) {
      for (double alpha : {0.0, 0.3, 1.0}) {
        const Labeling l = solve_multipage(inst, alpha);
        ASSERT_EQ(check_labeling(l, inst), "");
        const std::size_t pages = (7 + k - 1) / k;
        ASSERT_EQ(l.states.size(), pages);
        ASSERT_EQ(l.dummies.size(), pages * k - 7);
        // Dummies sit on the rightmost ports of the last page.
        const auto& last = l.states.back().assignment;
        for (std::size_t d = 0; d < l.dummies.size(); ++d) {
          EXPECT_TRUE(inst.is_dummy(last[last.size() - 1 - d]));
        }
        EXPECT_NEAR(cost_mpl(l, inst, alpha), oracle::exhaustive_multipage(inst, alpha), 1e-9);
      }
    }
  }
}

TEST(SolveMultipage, EndpointsBeatRandomLabelings) {
  const auto instances = suite(30, 5, 20, 43);
  for (std::size_t t = 0; t < instances.size(); ++t) {
    const Instance& inst = instances[t];
    const double w0 = labeling_costs(solve_multipage(inst, 0.0), inst, 0.0).c_w;
    const double l1 = labeling_costs(solve_multipage(inst, 1.0), inst, 1.0).c_l;
    for (std::uint64_t r = 0; r < 20; ++r) {
      const Labeling random =
          oracle::slots_to_labeling(inst, oracle::random_slot_sequence(inst, 100 * t + r), 0.0);
      const LabelingCosts c = labeling_costs(random, inst, 0.0);
      EXPECT_LE(w0, c.c_w + 1e-12);
      EXPECT_LE(l1, c.c_l + 1e-12);
    }
  }
}

TEST(SolveMultipage, CrossingResolutionPreservesCosts) {
  for (const Instance& inst : suite(30, 5, 20, 44)) {
    for (double alpha : {0.0, 0.4, 1.0}) {
      const MatchingProblem p = build_matching_problem(inst, alpha);
      const auto assignment = min_cost_perfect_matching(p.cost);
      std::vector<FeatureIndex> slots(assignment.size());
      for (std::size_t r = 0; r < assignment.size(); ++r) slots[assignment[r]] = r;
      const Labeling raw = oracle::slots_to_labeling(inst, slots, alpha);
      const Labeling solved = solve_multipage(inst, alpha);
      const LabelingCosts a = labeling_costs(raw, inst, alpha);
      const LabelingCosts b = labeling_costs(solved, inst, alpha);
      EXPECT_NEAR(a.c_w, b.c_w, 1e-12);
      // With alpha = 0 the matching ignores length and the per-page repair
      // may only shorten leaders.
      if (alpha > 0.0) {
        EXPECT_NEAR(a.c_l, b.c_l, 1e-12);
      } else {
        EXPECT_LE(b.c_l, a.c_l + 1e-12);
      }
      EXPECT_TRUE(page_crossing_free(solved, inst));
    }
  }
}

TEST(SolveMultipage, RejectsAlphaOutsideUnitInterval) {
  const Instance inst = make_instance(2, {{10, 10}, {20, 20}});
  EXPECT_THROW(solve_multipage(inst, -0.1), Error);
  EXPECT_THROW(solve_multipage(inst, 1.5), Error);
  EXPECT_THROW(solve_multipage(inst, std::nan("")), Error);
}

TEST(SolveMultipage, Deterministic) {
  const Instance inst = suite(30, 5, 1, 45)[0];
  const Labeling a = solve_multipage(inst, 0.5);
  const Labeling b = solve_multipage(inst, 0.5);
  ASSERT_EQ(a.states.size(), b.states.size());
  for (std::size_t s = 0; s < a.states.size(); ++s)
    EXPECT_EQ(a.states[s].assignment, b.states[s].assignment);
}

}  // namespace
}  // namespace labelkit
