#include "labelkit/costs.hpp"

#include <algorithm>
#include <cmath>

namespace labelkit {

namespace {

double pair_count(int k) { return 0.5 * k * (k - 1); }

double page_scale(const State& state, int k) {
  return 1.0 / (k * std::ldexp(1.0, state.page_index));
}

void require_pairs(const Instance& instance, const char* what) {
  if (instance.k() < 2) {
    throw DataError(std::string(what) + ": undefined for k < 2");
  }
}

}  // namespace

double weight_cost(const State& state, const Instance& instance,
                   const CostOptions& options) {
  double sum = 0.0;
  for (FeatureIndex f : state.assignment) {
    if (instance.is_dummy(f)) {
      if (!options.exclude_dummy_weight) sum += 1.0;
    } else {
      sum += 1.0 - instance.feature(f).weight;
    }
  }
  return page_scale(state, instance.k()) * sum;
}

int crossing_count(const State& state, const Instance& instance) {
  const int k = static_cast<int>(state.assignment.size());
  int count = 0;
  for (int a = 0; a < k; ++a) {
    const FeatureIndex fa = state.assignment[a];
    if (instance.is_dummy(fa)) continue;
    const Leader la = make_leader(instance, a, fa);
    for (int b = a + 1; b < k; ++b) {
      const FeatureIndex fb = state.assignment[b];
      if (instance.is_dummy(fb)) continue;
      if (leaders_cross(la, make_leader(instance, b, fb))) ++count;
    }
  }
  return count;
}

double crossing_cost(const State& state, const Instance& instance) {
  require_pairs(instance, "crossing_cost");
  return crossing_count(state, instance) / pair_count(instance.k());
}

std::vector<double> overlap_vertical_gaps(const State& state, const Instance& instance) {
  std::vector<double> gaps;
  const int k = static_cast<int>(state.assignment.size());
  for (int a = 0; a < k; ++a) {
    const FeatureIndex fa = state.assignment[a];
    if (instance.is_dummy(fa)) continue;
    const Leader la = make_leader(instance, a, fa);
    for (int b = a + 1; b < k; ++b) {
      const FeatureIndex fb = state.assignment[b];
      if (instance.is_dummy(fb)) continue;
      const Leader lb = make_leader(instance, b, fb);
      if (horizontals_overlap(la, lb)) {
        gaps.push_back(std::abs(la.feature.y - lb.feature.y));
      }
    }
  }
  return gaps;
}

double distance_cost(const State& state, const Instance& instance,
                     const CostOptions& options) {
  require_pairs(instance, "distance_cost");
  double sum = 0.0;
  for (double gap : overlap_vertical_gaps(state, instance)) {
    sum += 1.0 / std::max(gap, options.min_vertical_gap);
  }
  return sum / pair_count(instance.k());
}

double leader_cost(const State& state, const Instance& instance) {
  double sum = 0.0;
  for (int j = 0; j < static_cast<int>(state.assignment.size()); ++j) {
    const FeatureIndex f = state.assignment[j];
    if (instance.is_dummy(f)) continue;
    sum += leader_length(instance.port(j), instance.location(f)) /
           instance.length_normalizer();
  }
  return page_scale(state, instance.k()) * sum;
}

StateCosts state_costs(const State& state, const Instance& instance,
                       const CostOptions& options) {
  StateCosts costs;
  costs.c_w = weight_cost(state, instance, options);
  costs.c_l = leader_cost(state, instance);
  if (instance.k() >= 2) {
    costs.cross_count = crossing_count(state, instance);
    costs.c_c = costs.cross_count / pair_count(instance.k());
    costs.c_d = distance_cost(state, instance, options);
  }
  return costs;
}

double sliding_state_cost(const State& state, const Instance& instance,
                          double alpha) {
  if (instance.k() < 2) return 0.0;
  double cost = 0.0;
  if (alpha > 0.0) cost += alpha * crossing_cost(state, instance);
  if (alpha < 1.0) cost += (1.0 - alpha) * distance_cost(state, instance);
  return cost;
}

LabelingCosts labeling_costs(const Labeling& labeling, const Instance& instance,
                             double alpha, const CostOptions& options) {
  LabelingCosts totals;
  for (const State& state : labeling.states) {
    const StateCosts c = state_costs(state, instance, options);
    totals.c_w += c.c_w;
    totals.c_c += c.c_c;
    totals.c_d += c.c_d;
    totals.c_l += c.c_l;
    totals.cross_count += c.cross_count;
  }
  totals.c_mpl = alpha * totals.c_l + (1.0 - alpha) * totals.c_w;
  totals.c_slid = alpha * totals.c_c + (1.0 - alpha) * totals.c_d;
  return totals;
}

double cost_mpl(const Labeling& labeling, const Instance& instance, double alpha) {
  return labeling_costs(labeling, instance, alpha).c_mpl;
}

double cost_slid(const Labeling& labeling, const Instance& instance, double alpha) {
  return labeling_costs(labeling, instance, alpha).c_slid;
}

double relative_cost(double c, double c_ref) {
  if (c_ref == 0.0) throw DataError("reference cost zero");
  return (c - c_ref) / c_ref * 100.0;
}

}  // namespace labelkit
