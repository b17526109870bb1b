#pragma once

#include "labelkit/model.hpp"

namespace labelkit {

/// Per-state values of the four criteria.
struct StateCosts {
  double c_w = 0.0;
  double c_c = 0.0;
  double c_d = 0.0;
  double c_l = 0.0;
  int cross_count = 0;
};

/// Labeling totals: sums of the per-state values plus both composites.
struct LabelingCosts {
  double c_w = 0.0;
  double c_c = 0.0;
  double c_d = 0.0;
  double c_l = 0.0;
  double c_mpl = 0.0;
  double c_slid = 0.0;
  int cross_count = 0;
};

struct CostOptions {
  // Dummies normally count as weight-0 features in the weight cost.
  bool exclude_dummy_weight = false;
  // Clamp for 1/|dy| in the distance cost, in px.
  double min_vertical_gap = 1.0;
};

double weight_cost(const State& state, const Instance& instance,
                   const CostOptions& options = {});

/// Number of crossing leader pairs; dummies excluded.
int crossing_count(const State& state, const Instance& instance);

/// cross(s) / C(k,2). Throws for k < 2.
double crossing_cost(const State& state, const Instance& instance);

/// Sum over pairs with overlapping horizontals of 1/max(|dy|, clamp),
/// normalized by C(k,2). Throws for k < 2.
double distance_cost(const State& state, const Instance& instance,
                     const CostOptions& options = {});

double leader_cost(const State& state, const Instance& instance);

/// All four values; uses c_c = c_d = 0 for single-port instances.
StateCosts state_costs(const State& state, const Instance& instance,
                       const CostOptions& options = {});

/// alpha * c_C(s) + (1 - alpha) * c_D(s); the per-state term that the
/// sliding solvers accumulate.
double sliding_state_cost(const State& state, const Instance& instance,
                          double alpha);

LabelingCosts labeling_costs(const Labeling& labeling, const Instance& instance,
                             double alpha, const CostOptions& options = {});

double cost_mpl(const Labeling& labeling, const Instance& instance, double alpha);
double cost_slid(const Labeling& labeling, const Instance& instance, double alpha);

/// (c - c_ref) / c_ref * 100. Throws "reference cost zero" for c_ref == 0.
double relative_cost(double c, double c_ref);

/// Vertical distances |dy| of all feature pairs in H(s), dummies excluded.
std::vector<double> overlap_vertical_gaps(const State& state, const Instance& instance);

}  // namespace labelkit
