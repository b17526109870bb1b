#include "labelkit/multipage.hpp"

#include <algorithm>
#include <cmath>

#include "labelkit/matching.hpp"
#include "labelkit/sweep.hpp"

namespace labelkit {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha: must lie in [0,1]");
}

}  // namespace

double edge_weight(const Feature& feature, int port, int page, double alpha,
                   const Instance& instance) {
  const double scale = 1.0 / (instance.k() * std::ldexp(1.0, page));
  const double length =
      leader_length(instance.port(port - 1), {feature.x, feature.y}) /
      instance.length_normalizer();
  return scale * ((1.0 - alpha) * (1.0 - feature.weight) + alpha * length);
}

MatchingProblem build_matching_problem(const Instance& instance, double alpha) {
  check_alpha(alpha);
  const int k = instance.k();
  const int n = static_cast<int>(instance.size());
  const int pages = (n + k - 1) / k;
  const int slots = pages * k;
  const int dummies = slots - n;

  MatchingProblem problem;
  problem.k = k;
  problem.pages = pages;
  problem.real_rows = instance.size();
  problem.cost.resize(slots, slots);

  auto is_dummy_slot = [&](int slot) {
    return slot / k == pages - 1 && slot % k >= k - dummies;
  };

  double max_entry = 0.0;
  for (int r = 0; r < n; ++r) {
    const Feature& f = instance.feature(static_cast<FeatureIndex>(r));
    for (int s = 0; s < slots; ++s) {
      const double w = edge_weight(f, s % k + 1, s / k + 1, alpha, instance);
      problem.cost(r, s) = w;
      max_entry = std::max(max_entry, w);
    }
  }
  const double dummy_weight =
      (1.0 - alpha) / (k * std::ldexp(1.0, pages));
  max_entry = std::max(max_entry, dummy_weight);
  const double penalty = slots * max_entry + 1.0;

  for (int s = 0; s < slots; ++s) {
    const bool dummy_slot = is_dummy_slot(s);
    for (int r = 0; r < slots; ++r) {
      const bool dummy_row = r >= n;
      if (dummy_row) {
        problem.cost(r, s) = dummy_slot ? dummy_weight : penalty;
      } else if (dummy_slot) {
        problem.cost(r, s) = penalty;
      }
    }
  }
  return problem;
}

State resolve_page_crossings(std::span<const FeatureIndex> page_features,
                             std::span<const FeatureIndex> dummies,
                             const Instance& instance, int page_index) {
  const int k = instance.k();
  if (page_features.size() + dummies.size() != static_cast<std::size_t>(k)) {
    throw DataError("resolve_page_crossings: page does not fill all ports");
  }
  std::vector<int> capacity(k, 0);
  for (std::size_t j = 0; j < page_features.size(); ++j) capacity[j] = 1;
  const auto per_port = crossing_free_assignment(instance, page_features, capacity);

  State state;
  state.page_index = page_index;
  state.assignment.resize(k);
  for (std::size_t j = 0; j < page_features.size(); ++j) {
    state.assignment[j] = per_port[j].front();
  }
  for (std::size_t d = 0; d < dummies.size(); ++d) {
    state.assignment[page_features.size() + d] = dummies[d];
  }
  return state;
}

Labeling solve_multipage(const Instance& instance, double alpha) {
  check_alpha(alpha);
  const std::size_t n = instance.size();
  if (n == 0) throw DataError("multipage: instance has no features");
  const MatchingProblem problem = build_matching_problem(instance, alpha);
  const std::vector<int> row_to_slot = min_cost_perfect_matching(problem.cost);

  const int k = problem.k;
  std::vector<std::vector<FeatureIndex>> page_features(problem.pages);
  std::vector<std::vector<FeatureIndex>> page_dummies(problem.pages);
  for (std::size_t r = 0; r < row_to_slot.size(); ++r) {
    const int page = row_to_slot[r] / k;
    if (r < n) {
      page_features[page].push_back(r);
    } else {
      page_dummies[page].push_back(r);
    }
  }

  Labeling labeling;
  labeling.method = Method::kMultipage;
  labeling.alpha = alpha;
  for (int p = 0; p < problem.pages; ++p) {
    if (!page_dummies[p].empty() && p != problem.pages - 1) {
      throw DataError("multipage: dummy matched outside the last page");
    }
    std::sort(page_dummies[p].begin(), page_dummies[p].end());
    labeling.states.push_back(
        resolve_page_crossings(page_features[p], page_dummies[p], instance, p + 1));
  }
  for (std::size_t r = n; r < row_to_slot.size(); ++r) labeling.dummies.push_back(r);
  return labeling;
}

}  // namespace labelkit
