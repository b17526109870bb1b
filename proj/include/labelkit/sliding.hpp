#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "labelkit/model.hpp"

namespace labelkit {

/// A feature order p_1..p_n; it induces the sliding labeling whose i-th
/// state shows p_i..p_{i+k-1} on ports 1..k.
struct SlidingOrder {
  std::vector<FeatureIndex> order;
  bool hard_c1 = false;
};

bool is_valid_transition(const State& from, const State& to);

Labeling order_to_labeling(const SlidingOrder& order, const Instance& instance,
                           double alpha);

/// Recovers the order from a labeling built by order_to_labeling.
SlidingOrder labeling_to_order(const Labeling& labeling);

/// Descending weight, ties by (x, y, id).
SlidingOrder first_fit_order(const Instance& instance, bool hard_c1);

/// Sum over the induced states, in order, of sliding_state_cost. Search and
/// local search both rank orders by this value.
double sliding_objective(const SlidingOrder& order, const Instance& instance,
                         double alpha);

/// Groups of equal weight in descending-weight order (feature indices
/// within each group ascending).
std::vector<std::vector<FeatureIndex>> weight_groups(const Instance& instance);

struct SearchBudget {
  std::uint64_t max_nodes = 10'000'000;
  std::chrono::milliseconds max_time{30'000};
  // Unconstrained search refuses instances with more features than this.
  std::size_t exact_size_cap = 9;
  // Hard-C1 search refuses instances whose number of feasible orders
  // (product of group-size factorials) exceeds this.
  double hard_c1_order_cap = 1e7;
};

struct SlidingResult {
  Labeling labeling;
  SlidingOrder order;
  double objective = 0.0;
  bool optimal = true;
  std::uint64_t nodes = 0;
};

/// Exact minimizer of c_Slid by depth-first search over order prefixes.
/// Prefix cost bounds every completion because state costs are
/// nonnegative. Ties resolve to the lexicographically smallest order of
/// feature indices. On budget exhaustion the incumbent is returned with
/// optimal = false.
SlidingResult solve_sliding_exact(const Instance& instance, double alpha,
                                  bool hard_c1, const SearchBudget& budget = {});

enum class SlidingCriterion { kCrossings, kDistance };

/// Maximizes c_C (MaxC2, alpha = 1) or c_D (MaxC3, alpha = 0).
SlidingResult max_cost_sliding(const Instance& instance, SlidingCriterion criterion,
                               bool hard_c1, const SearchBudget& budget = {});

/// Swap-based hill climbing from the first-fit order. Each iteration
/// proposes swapping two uniformly chosen order positions (equal weights
/// only under hard_c1) and keeps the swap iff the objective strictly drops.
/// Stops after `iterations` proposals, or earlier once a full scan finds no
/// improving swap.
SlidingResult solve_sliding_heuristic(const Instance& instance, double alpha,
                                      bool hard_c1, int iterations,
                                      std::uint64_t seed);

/// Uniformly random order (uniform within weight groups under hard_c1).
SlidingResult random_sliding_baseline(const Instance& instance, double alpha,
                                      bool hard_c1, std::uint64_t seed);

}  // namespace labelkit
