#include "labelkit/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

namespace labelkit {

namespace {

struct Item {
  double x;
  bool is_port;
  int port;             // valid when is_port
  FeatureIndex feature;  // valid when !is_port
};

// Orders candidates lowest first (largest y), ties by id.
struct LowestFirst {
  const Instance* instance;
  bool operator()(FeatureIndex a, FeatureIndex b) const {
    const Feature& fa = instance->feature(a);
    const Feature& fb = instance->feature(b);
    if (fa.y != fb.y) return fa.y > fb.y;
    return fa.id < fb.id;
  }
};

}  // namespace

std::vector<std::vector<FeatureIndex>> crossing_free_assignment(
    const Instance& instance, std::span<const FeatureIndex> features,
    std::span<const int> capacity) {
  const int k = instance.k();
  if (static_cast<int>(capacity.size()) != k) {
    throw DataError("sweep: capacity vector does not match the port count");
  }
  const int total = std::accumulate(capacity.begin(), capacity.end(), 0);
  if (total != static_cast<int>(features.size())) {
    throw DataError("sweep: port capacities do not match the feature count");
  }

  std::vector<Item> items;
  items.reserve(2 * features.size());
  for (FeatureIndex f : features) {
    if (instance.is_dummy(f)) throw DataError("sweep: dummy features have no location");
    items.push_back({instance.feature(f).x, false, -1, f});
  }
  for (int j = 0; j < k; ++j) {
    for (int c = 0; c < capacity[j]; ++c) {
      items.push_back({instance.port(j).x, true, j, 0});
    }
  }
  // Symbolic perturbation at equal x: ports first, then features by (y, id).
  std::stable_sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.is_port != b.is_port) return a.is_port;
    if (a.is_port) return a.port < b.port;
    const Feature& fa = instance.feature(a.feature);
    const Feature& fb = instance.feature(b.feature);
    return std::tie(fa.y, fa.id) < std::tie(fb.y, fb.id);
  });

  // Balance to the left of each item: positive means flow to the right.
  std::vector<int> balance(items.size());
  int running = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    balance[i] = running;
    running += items[i].is_port ? -1 : 1;
  }

  std::vector<std::vector<FeatureIndex>> result(static_cast<std::size_t>(k));
  const LowestFirst order{&instance};

  std::set<FeatureIndex, LowestFirst> waiting(order);
  for (std::size_t i = items.size(); i-- > 0;) {
    const Item& item = items[i];
    if (!item.is_port) {
      if (balance[i] < 0) waiting.insert(item.feature);
    } else if (balance[i] <= 0) {
      auto lowest = waiting.begin();
      result[item.port].push_back(*lowest);
      waiting.erase(lowest);
    }
  }

  waiting.clear();
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Item& item = items[i];
    if (!item.is_port) {
      if (balance[i] >= 0) waiting.insert(item.feature);
    } else if (balance[i] > 0) {
      auto lowest = waiting.begin();
      result[item.port].push_back(*lowest);
      waiting.erase(lowest);
    }
  }
  return result;
}

std::vector<int> balanced_port_loads(const Instance& instance,
                                     std::span<const FeatureIndex> features,
                                     int per_port) {
  const int k = instance.k();
  const int n = static_cast<int>(features.size());
  if (static_cast<long>(k) * per_port < n) {
    throw DataError("sweep: not enough port capacity for the features");
  }
  std::vector<double> xs;
  xs.reserve(features.size());
  for (FeatureIndex f : features) xs.push_back(instance.feature(f).x);
  std::sort(xs.begin(), xs.end());

  const double inf = std::numeric_limits<double>::infinity();
  // best[j][i]: minimum horizontal length placing the i leftmost features on
  // the j leftmost ports.
  std::vector<std::vector<double>> best(k + 1, std::vector<double>(n + 1, inf));
  std::vector<std::vector<int>> take(k + 1, std::vector<int>(n + 1, 0));
  best[0][0] = 0.0;
  for (int j = 1; j <= k; ++j) {
    const double px = instance.port(j - 1).x;
    for (int i = 0; i <= n; ++i) {
      double span_cost = 0.0;
      for (int c = 0; c <= std::min(per_port, i); ++c) {
        if (c > 0) span_cost += std::abs(xs[i - c] - px);
        const double candidate = best[j - 1][i - c] + span_cost;
        if (candidate < best[j][i]) {
          best[j][i] = candidate;
          take[j][i] = c;
        }
      }
    }
  }
  std::vector<int> loads(k, 0);
  int i = n;
  for (int j = k; j >= 1; --j) {
    loads[j - 1] = take[j][i];
    i -= take[j][i];
  }
  return loads;
}

double total_leader_length(const Instance& instance,
                           const std::vector<std::vector<FeatureIndex>>& per_port) {
  std::vector<double> lengths;
  for (std::size_t j = 0; j < per_port.size(); ++j) {
    for (FeatureIndex f : per_port[j]) {
      if (instance.is_dummy(f)) continue;
      lengths.push_back(leader_length(instance.port(static_cast<int>(j)), instance.location(f)));
    }
  }
  // Summed in sorted order so that reordering within a port cannot change
  // the last bits of the total.
  std::sort(lengths.begin(), lengths.end());
  return std::accumulate(lengths.begin(), lengths.end(), 0.0);
}

}  // namespace labelkit
