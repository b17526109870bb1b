#include "labelkit/sliding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <tuple>

#include "labelkit/costs.hpp"

namespace labelkit {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha: must lie in [0,1]");
}

void check_size(const Instance& instance) {
  if (instance.size() < static_cast<std::size_t>(instance.k())) {
    throw DataError("instance smaller than port count");
  }
}

// Sliding cost of the window of k consecutive order positions at `start`.
class WindowCost {
 public:
  WindowCost(const Instance& instance, double alpha)
      : instance_(instance), alpha_(alpha) {
    scratch_.assignment.resize(static_cast<std::size_t>(instance.k()));
  }

  double operator()(const std::vector<FeatureIndex>& order, std::size_t start) {
    std::copy_n(order.begin() + static_cast<std::ptrdiff_t>(start), instance_.k(),
                scratch_.assignment.begin());
    scratch_.page_index = static_cast<int>(start) + 1;
    return sliding_state_cost(scratch_, instance_, alpha_);
  }

 private:
  const Instance& instance_;
  double alpha_;
  State scratch_;
};

double tie_tolerance(double reference) {
  return 1e-12 * std::max(1.0, std::abs(reference));
}

double feasible_order_count(const std::vector<std::vector<FeatureIndex>>& groups) {
  double count = 1.0;
  for (const auto& g : groups) {
    for (std::size_t i = 2; i <= g.size(); ++i) count *= static_cast<double>(i);
  }
  return count;
}

SlidingResult make_result(SlidingOrder order, const Instance& instance, double alpha,
                          bool optimal, std::uint64_t nodes) {
  SlidingResult result;
  result.labeling = order_to_labeling(order, instance, alpha);
  result.labeling.optimal = optimal;
  result.objective = sliding_objective(order, instance, alpha);
  result.order = std::move(order);
  result.optimal = optimal;
  result.nodes = nodes;
  return result;
}

// Depth-first enumeration of orders in lexicographic index order. Under
// hard_c1 position t may only hold members of the weight group covering t.
class OrderSearch {
 public:
  OrderSearch(const Instance& instance, double alpha, bool hard_c1, bool maximize,
              const SearchBudget& budget)
      : n_(instance.size()),
        k_(static_cast<std::size_t>(instance.k())),
        maximize_(maximize),
        budget_(budget),
        window_(instance, alpha),
        prefix_(n_),
        used_(n_, 0),
        prefix_cost_(n_ + 1, 0.0),
        candidates_(n_) {
    if (hard_c1) {
      std::size_t t = 0;
      for (const auto& group : weight_groups(instance)) {
        for (std::size_t i = 0; i < group.size(); ++i) candidates_[t++] = group;
      }
    } else {
      std::vector<FeatureIndex> all(n_);
      std::iota(all.begin(), all.end(), FeatureIndex{0});
      std::fill(candidates_.begin(), candidates_.end(), all);
    }
  }

  void run() {
    start_ = std::chrono::steady_clock::now();
    descend(0);
  }

  bool found() const { return found_; }
  bool complete() const { return !aborted_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<FeatureIndex>& best_order() const { return best_order_; }

 private:
  bool out_of_budget() {
    if (nodes_ >= budget_.max_nodes) return true;
    if ((nodes_ & 1023u) == 0 &&
        std::chrono::steady_clock::now() - start_ > budget_.max_time) {
      return true;
    }
    return false;
  }

  bool prunable(double cost, std::size_t placed) const {
    if (!found_) return false;
    if (!maximize_) return cost >= best_cost_ - tie_tolerance(best_cost_);
    // Per-state sliding cost never exceeds 1 (both criteria are normalized
    // and the distance clamp is 1 px).
    const std::size_t states = n_ - k_ + 1;
    const std::size_t done = placed >= k_ ? placed - k_ + 1 : 0;
    const double bound = cost + static_cast<double>(states - done);
    return bound <= best_cost_ + tie_tolerance(best_cost_);
  }

  void descend(std::size_t t) {
    if (aborted_) return;
    if (t == n_) {
      const double cost = prefix_cost_[n_];
      const bool better =
          !found_ || (maximize_ ? cost > best_cost_ + tie_tolerance(best_cost_)
                                : cost < best_cost_ - tie_tolerance(best_cost_));
      if (better) {
        found_ = true;
        best_cost_ = cost;
        best_order_ = prefix_;
      }
      return;
    }
    for (FeatureIndex f : candidates_[t]) {
      if (used_[f]) continue;
      if (out_of_budget()) {
        aborted_ = true;
        return;
      }
      ++nodes_;
      prefix_[t] = f;
      double cost = prefix_cost_[t];
      if (t + 1 >= k_) cost += window_(prefix_, t + 1 - k_);
      if (prunable(cost, t + 1)) continue;
      prefix_cost_[t + 1] = cost;
      used_[f] = 1;
      descend(t + 1);
      used_[f] = 0;
      if (aborted_) return;
    }
  }

  std::size_t n_;
  std::size_t k_;
  bool maximize_;
  SearchBudget budget_;
  WindowCost window_;
  std::vector<FeatureIndex> prefix_;
  std::vector<char> used_;
  std::vector<double> prefix_cost_;
  std::vector<std::vector<FeatureIndex>> candidates_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool found_ = false;
  bool aborted_ = false;
  double best_cost_ = 0.0;
  std::vector<FeatureIndex> best_order_;
};

SlidingResult search_orders(const Instance& instance, double alpha, bool hard_c1,
                            bool maximize, const SearchBudget& budget) {
  check_alpha(alpha);
  check_size(instance);
  const bool too_large =
      hard_c1 ? feasible_order_count(weight_groups(instance)) > budget.hard_c1_order_cap
              : instance.size() > budget.exact_size_cap;
  if (too_large) {
    return make_result(first_fit_order(instance, hard_c1), instance, alpha, false, 0);
  }
  OrderSearch search(instance, alpha, hard_c1, maximize, budget);
  search.run();
  SlidingOrder order{search.found() ? search.best_order()
                                    : first_fit_order(instance, hard_c1).order,
                     hard_c1};
  return make_result(std::move(order), instance, alpha, search.complete(), search.nodes());
}

}  // namespace

bool is_valid_transition(const State& from, const State& to) {
  const std::size_t k = from.assignment.size();
  if (k == 0 || to.assignment.size() != k) return false;
  for (std::size_t j = 1; j < k; ++j) {
    if (from.assignment[j] != to.assignment[j - 1]) return false;
  }
  return from.assignment.front() != to.assignment.back();
}

Labeling order_to_labeling(const SlidingOrder& order, const Instance& instance,
                           double alpha) {
  check_size(instance);
  if (order.order.size() != instance.size()) {
    throw DataError("sliding order does not cover the instance");
  }
  const std::size_t k = static_cast<std::size_t>(instance.k());
  Labeling labeling;
  labeling.method = Method::kSliding;
  labeling.alpha = alpha;
  for (std::size_t i = 0; i + k <= order.order.size(); ++i) {
    State state;
    state.page_index = static_cast<int>(i) + 1;
    state.assignment.assign(order.order.begin() + static_cast<std::ptrdiff_t>(i),
                            order.order.begin() + static_cast<std::ptrdiff_t>(i + k));
    labeling.states.push_back(std::move(state));
  }
  return labeling;
}

SlidingOrder labeling_to_order(const Labeling& labeling) {
  SlidingOrder order;
  if (labeling.states.empty()) return order;
  order.order = labeling.states.front().assignment;
  for (std::size_t i = 1; i < labeling.states.size(); ++i) {
    order.order.push_back(labeling.states[i].assignment.back());
  }
  return order;
}

std::vector<std::vector<FeatureIndex>> weight_groups(const Instance& instance) {
  std::vector<FeatureIndex> idx(instance.size());
  std::iota(idx.begin(), idx.end(), FeatureIndex{0});
  std::stable_sort(idx.begin(), idx.end(), [&](FeatureIndex a, FeatureIndex b) {
    return instance.feature(a).weight > instance.feature(b).weight;
  });
  std::vector<std::vector<FeatureIndex>> groups;
  for (FeatureIndex f : idx) {
    if (groups.empty() ||
        instance.feature(groups.back().front()).weight != instance.feature(f).weight) {
      groups.emplace_back();
    }
    groups.back().push_back(f);
  }
  return groups;
}

SlidingOrder first_fit_order(const Instance& instance, bool hard_c1) {
  SlidingOrder order;
  order.hard_c1 = hard_c1;
  order.order.resize(instance.size());
  std::iota(order.order.begin(), order.order.end(), FeatureIndex{0});
  std::sort(order.order.begin(), order.order.end(), [&](FeatureIndex a, FeatureIndex b) {
    const Feature& fa = instance.feature(a);
    const Feature& fb = instance.feature(b);
    if (fa.weight != fb.weight) return fa.weight > fb.weight;
    return std::tie(fa.x, fa.y, fa.id) < std::tie(fb.x, fb.y, fb.id);
  });
  return order;
}

double sliding_objective(const SlidingOrder& order, const Instance& instance,
                         double alpha) {
  WindowCost window(instance, alpha);
  const std::size_t k = static_cast<std::size_t>(instance.k());
  double total = 0.0;
  for (std::size_t i = 0; i + k <= order.order.size(); ++i) total += window(order.order, i);
  return total;
}

SlidingResult solve_sliding_exact(const Instance& instance, double alpha,
                                  bool hard_c1, const SearchBudget& budget) {
  return search_orders(instance, alpha, hard_c1, false, budget);
}

SlidingResult max_cost_sliding(const Instance& instance, SlidingCriterion criterion,
                               bool hard_c1, const SearchBudget& budget) {
  const double alpha = criterion == SlidingCriterion::kCrossings ? 1.0 : 0.0;
  return search_orders(instance, alpha, hard_c1, true, budget);
}

SlidingResult solve_sliding_heuristic(const Instance& instance, double alpha,
                                      bool hard_c1, int iterations,
                                      std::uint64_t seed) {
  check_alpha(alpha);
  check_size(instance);
  if (iterations < 0) throw UsageError("iterations: must be nonnegative");

  SlidingOrder current = first_fit_order(instance, hard_c1);
  std::vector<FeatureIndex>& order = current.order;
  const std::size_t n = order.size();
  const std::size_t k = static_cast<std::size_t>(instance.k());
  const std::size_t states = n - k + 1;

  // Swappable position pairs. Under hard_c1 the first-fit order places each
  // weight group on a contiguous block of positions.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (hard_c1) {
    std::size_t start = 0;
    for (const auto& group : weight_groups(instance)) {
      for (std::size_t a = start; a < start + group.size(); ++a) {
        for (std::size_t b = a + 1; b < start + group.size(); ++b) pairs.emplace_back(a, b);
      }
      start += group.size();
    }
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    }
  }

  WindowCost window(instance, alpha);
  std::vector<double> state_cost(states);
  for (std::size_t i = 0; i < states; ++i) state_cost[i] = window(order, i);

  std::vector<std::size_t> touched;
  std::vector<double> fresh;
  auto affected = [&](std::size_t a, std::size_t b) {
    touched.clear();
    for (std::size_t p : {a, b}) {
      const std::size_t lo = p + 1 >= k ? p + 1 - k : 0;
      const std::size_t hi = std::min(p, states - 1);
      for (std::size_t i = lo; i <= hi; ++i) touched.push_back(i);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  };
  // Applies the swap and returns the objective change; the caller keeps or
  // reverts it.
  auto try_swap = [&](std::size_t a, std::size_t b) {
    affected(a, b);
    std::swap(order[a], order[b]);
    fresh.resize(touched.size());
    double delta = 0.0;
    for (std::size_t t = 0; t < touched.size(); ++t) {
      fresh[t] = window(order, touched[t]);
      delta += fresh[t] - state_cost[touched[t]];
    }
    return delta;
  };
  auto improves = [](double delta) { return delta < -1e-12; };

  if (!pairs.empty()) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    std::size_t failures = 0;
    for (int it = 0; it < iterations; ++it) {
      const auto [a, b] = pairs[pick(rng)];
      if (improves(try_swap(a, b))) {
        for (std::size_t t = 0; t < touched.size(); ++t) state_cost[touched[t]] = fresh[t];
        failures = 0;
        continue;
      }
      std::swap(order[a], order[b]);
      if (++failures < pairs.size()) continue;
      // Long failure streak: stop if no neighbor improves at all.
      bool local_optimum = true;
      for (const auto& [pa, pb] : pairs) {
        const bool better = improves(try_swap(pa, pb));
        std::swap(order[pa], order[pb]);
        if (better) {
          local_optimum = false;
          break;
        }
      }
      if (local_optimum) break;
      failures = 0;
    }
  }
  return make_result(std::move(current), instance, alpha, false, 0);
}

SlidingResult random_sliding_baseline(const Instance& instance, double alpha,
                                      bool hard_c1, std::uint64_t seed) {
  check_alpha(alpha);
  check_size(instance);
  std::mt19937_64 rng(seed);
  SlidingOrder order;
  order.hard_c1 = hard_c1;
  if (hard_c1) {
    for (auto group : weight_groups(instance)) {
      std::shuffle(group.begin(), group.end(), rng);
      order.order.insert(order.order.end(), group.begin(), group.end());
    }
  } else {
    order.order.resize(instance.size());
    std::iota(order.order.begin(), order.order.end(), FeatureIndex{0});
    std::shuffle(order.order.begin(), order.order.end(), rng);
  }
  return make_result(std::move(order), instance, alpha, false, 0);
}

}  // namespace labelkit
