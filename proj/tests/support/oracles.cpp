#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "labelkit/matching.hpp"

namespace labelkit::oracle {

namespace {

double orient(Point a, Point b, Point c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

double length(Point port, Point feature) {
  return std::abs(port.x - feature.x) + std::abs(port.y - feature.y);
}

double window_cost(const Instance& instance, const std::vector<FeatureIndex>& order,
                   std::size_t start, double alpha) {
  const int k = instance.k();
  if (k < 2) return 0.0;
  int crossings = 0;
  double inverse_gaps = 0.0;
  for (int a = 0; a < k; ++a) {
    const Point pa = instance.port(a);
    const Point fa = instance.location(order[start + a]);
    for (int b = a + 1; b < k; ++b) {
      const Point pb = instance.port(b);
      const Point fb = instance.location(order[start + b]);
      if (polylines_cross({pa, fa}, {pb, fb})) ++crossings;
      const double lo = std::max(std::min(pa.x, fa.x), std::min(pb.x, fb.x));
      const double hi = std::min(std::max(pa.x, fa.x), std::max(pb.x, fb.x));
      if (lo < hi) inverse_gaps += 1.0 / std::max(std::abs(fa.y - fb.y), 1.0);
    }
  }
  const double pairs = k * (k - 1) / 2.0;
  return alpha * (crossings / pairs) + (1.0 - alpha) * (inverse_gaps / pairs);
}

}  // namespace

bool segments_cross(Point a, Point b, Point c, Point d) {
  const int o1 = sign(orient(a, b, c));
  const int o2 = sign(orient(a, b, d));
  const int o3 = sign(orient(c, d, a));
  const int o4 = sign(orient(c, d, b));
  return o1 * o2 < 0 && o3 * o4 < 0;
}

bool polylines_cross(const Leader& a, const Leader& b) {
  const Point bend_a{a.port.x, a.feature.y};
  const Point bend_b{b.port.x, b.feature.y};
  const Point sa[2][2] = {{a.feature, bend_a}, {bend_a, a.port}};
  const Point sb[2][2] = {{b.feature, bend_b}, {bend_b, b.port}};
  for (const auto& s : sa) {
    for (const auto& t : sb) {
      if (segments_cross(s[0], s[1], t[0], t[1])) return true;
    }
  }
  return false;
}

double brute_force_assignment(const Eigen::MatrixXd& cost, std::vector<int>* best) {
  const int n = static_cast<int>(cost.rows());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double min = std::numeric_limits<double>::infinity();
  do {
    double sum = 0.0;
    for (int r = 0; r < n; ++r) sum += cost(r, perm[r]);
    if (sum < min) {
      min = sum;
      if (best) *best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n == 0 ? 0.0 : min;
}

double slot_sequence_mpl(const Instance& instance, const std::vector<FeatureIndex>& slots,
                         double alpha, double* c_w, double* c_l) {
  const int k = instance.k();
  double w = 0.0;
  double l = 0.0;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const int page = static_cast<int>(s) / k + 1;
    const int port = static_cast<int>(s) % k;
    const double scale = 1.0 / (k * std::pow(2.0, page));
    if (instance.is_dummy(slots[s])) {
      w += scale;
      continue;
    }
    const Feature& f = instance.feature(slots[s]);
    w += scale * (1.0 - f.weight);
    l += scale * length(instance.port(port), {f.x, f.y}) /
         (instance.screen().width + instance.screen().height);
  }
  if (c_w) *c_w = w;
  if (c_l) *c_l = l;
  return alpha * l + (1.0 - alpha) * w;
}

double exhaustive_multipage(const Instance& instance, double alpha) {
  const std::size_t n = instance.size();
  const std::size_t k = static_cast<std::size_t>(instance.k());
  const std::size_t total = (n + k - 1) / k * k;
  std::vector<FeatureIndex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<FeatureIndex> slots(total);
  for (std::size_t d = 0; d < total - n; ++d) slots[n + d] = n + d;
  double min = std::numeric_limits<double>::infinity();
  do {
    std::copy(perm.begin(), perm.end(), slots.begin());
    min = std::min(min, slot_sequence_mpl(instance, slots, alpha));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return min;
}

double sliding_order_cost(const Instance& instance, const std::vector<FeatureIndex>& order,
                          double alpha) {
  double sum = 0.0;
  const std::size_t k = static_cast<std::size_t>(instance.k());
  for (std::size_t start = 0; start + k <= order.size(); ++start) {
    sum += window_cost(instance, order, start, alpha);
  }
  return sum;
}

SlidingOptimum exhaustive_sliding(const Instance& instance, double alpha, bool hard_c1,
                                  bool maximize) {
  const std::size_t n = instance.size();
  // Blocks of positions that may be permuted freely.
  std::vector<std::vector<FeatureIndex>> blocks;
  if (hard_c1) {
    std::map<double, std::vector<FeatureIndex>, std::greater<>> by_weight;
    for (FeatureIndex i = 0; i < n; ++i) by_weight[instance.feature(i).weight].push_back(i);
    for (auto& [w, members] : by_weight) blocks.push_back(members);
  } else {
    blocks.emplace_back(n);
    std::iota(blocks[0].begin(), blocks[0].end(), FeatureIndex{0});
  }

  SlidingOptimum best;
  bool have = false;
  std::vector<FeatureIndex> order;
  for (;;) {
    order.clear();
    for (const auto& b : blocks) order.insert(order.end(), b.begin(), b.end());
    const double cost = sliding_order_cost(instance, order, alpha);
    ++best.orders;
    const double tol = 1e-12 * std::max(1.0, std::abs(best.cost));
    const bool better = maximize ? cost > best.cost + tol : cost < best.cost - tol;
    if (!have || better) {
      best.cost = cost;
      best.order = order;
      have = true;
    }
    // Odometer over blocks, last block fastest, which walks full orders in
    // lexicographic order because blocks occupy fixed position ranges.
    std::size_t b = blocks.size();
    while (b > 0 && !std::next_permutation(blocks[b - 1].begin(), blocks[b - 1].end())) --b;
    if (b == 0) break;
  }
  return best;
}

double replicated_port_matching(const Instance& instance) {
  const std::size_t n = instance.size();
  const int k = instance.k();
  const std::size_t depth = (n + k - 1) / k;
  const std::size_t size = depth * k;
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(size, size);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < size; ++c) {
      cost(i, c) = length(instance.port(static_cast<int>(c % k)), instance.location(i));
    }
  }
  return assignment_cost(cost, min_cost_perfect_matching(cost));
}

std::vector<FeatureIndex> random_slot_sequence(const Instance& instance, std::uint64_t seed) {
  const std::size_t n = instance.size();
  const std::size_t k = static_cast<std::size_t>(instance.k());
  const std::size_t total = (n + k - 1) / k * k;
  std::vector<FeatureIndex> slots(total);
  std::iota(slots.begin(), slots.end(), FeatureIndex{0});
  std::mt19937_64 rng(seed);
  std::shuffle(slots.begin(), slots.begin() + static_cast<std::ptrdiff_t>(n), rng);
  return slots;
}

Labeling slots_to_labeling(const Instance& instance, const std::vector<FeatureIndex>& slots,
                           double alpha) {
  const std::size_t k = static_cast<std::size_t>(instance.k());
  Labeling labeling;
  labeling.method = Method::kMultipage;
  labeling.alpha = alpha;
  for (std::size_t s = 0; s < slots.size(); s += k) {
    State state;
    state.page_index = static_cast<int>(s / k) + 1;
    state.assignment.assign(slots.begin() + static_cast<std::ptrdiff_t>(s),
                            slots.begin() + static_cast<std::ptrdiff_t>(s + k));
    labeling.states.push_back(std::move(state));
  }
  for (std::size_t d = instance.size(); d < slots.size(); ++d) labeling.dummies.push_back(d);
  return labeling;
}

}  // namespace labelkit::oracle
