#include "labelkit/stacking.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "labelkit/sweep.hpp"

namespace labelkit {

StripDecomposition decompose_strips(const Instance& instance,
                                    const std::vector<int>& port_loads) {
  struct Event {
    double x;
    int delta;  // +1 per feature, -load per port
  };
  std::vector<Event> events;
  for (const Feature& f : instance.features()) events.push_back({f.x, 1});
  for (int j = 0; j < instance.k(); ++j) {
    events.push_back({instance.port(j).x, -port_loads.at(static_cast<std::size_t>(j))});
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.x < b.x; });

  StripDecomposition result;
  int balance = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    balance += events[i].delta;
    if (i + 1 == events.size() || events[i + 1].x == events[i].x) continue;
    StripDecomposition::Strip strip;
    strip.left = events[i].x;
    strip.right = events[i + 1].x;
    strip.flow = std::abs(balance);
    strip.direction = balance > 0   ? StripDecomposition::Direction::kRightward
                      : balance < 0 ? StripDecomposition::Direction::kLeftward
                                    : StripDecomposition::Direction::kNone;
    result.strips.push_back(strip);
  }
  return result;
}

StackSet solve_stacking(const Instance& instance) {
  const std::size_t n = instance.size();
  const std::size_t k = static_cast<std::size_t>(instance.k());
  if (n == 0) throw DataError("stacking: instance has no features");
  const int depth = static_cast<int>((n + k - 1) / k);

  std::vector<FeatureIndex> all(n);
  std::iota(all.begin(), all.end(), FeatureIndex{0});
  const std::vector<int> loads = balanced_port_loads(instance, all, depth);
  auto per_port = crossing_free_assignment(instance, all, loads);

  StackSet stacks;
  stacks.stacks = std::move(per_port);
  FeatureIndex next_dummy = n;
  for (auto& stack : stacks.stacks) {
    while (static_cast<int>(stack.size()) < depth) stack.push_back(next_dummy++);
  }
  return stacks;
}

StackSet sort_stacks_by_weight(StackSet stacks, const Instance& instance) {
  for (auto& stack : stacks.stacks) {
    std::stable_sort(stack.begin(), stack.end(), [&](FeatureIndex a, FeatureIndex b) {
      const bool da = instance.is_dummy(a);
      const bool db = instance.is_dummy(b);
      if (da || db) return !da && db;
      const Feature& fa = instance.feature(a);
      const Feature& fb = instance.feature(b);
      if (fa.weight != fb.weight) return fa.weight > fb.weight;
      return std::tie(fa.x, fa.y, fa.id) < std::tie(fb.x, fb.y, fb.id);
    });
  }
  return stacks;
}

Labeling stacks_to_pages(const StackSet& stacks) {
  Labeling labeling;
  labeling.method = Method::kStacking;
  const std::size_t depth = stacks.stacks.empty() ? 0 : stacks.stacks.front().size();
  for (std::size_t i = 0; i < depth; ++i) {
    State state;
    state.page_index = static_cast<int>(i) + 1;
    for (const auto& stack : stacks.stacks) state.assignment.push_back(stack.at(i));
    labeling.states.push_back(std::move(state));
  }
  labeling.stacks = stacks;
  return labeling;
}

StackSet pages_to_stacks(const Labeling& labeling) {
  StackSet stacks;
  if (labeling.states.empty()) return stacks;
  stacks.stacks.resize(labeling.states.front().assignment.size());
  for (const State& state : labeling.states) {
    for (std::size_t j = 0; j < state.assignment.size(); ++j) {
      stacks.stacks[j].push_back(state.assignment[j]);
    }
  }
  return stacks;
}

StackSet pop_stack(StackSet stacks, int port) {
  if (port < 0 || static_cast<std::size_t>(port) >= stacks.stacks.size()) {
    throw UsageError("port: no stack " + std::to_string(port));
  }
  auto& stack = stacks.stacks[static_cast<std::size_t>(port)];
  if (!stack.empty()) std::rotate(stack.begin(), stack.begin() + 1, stack.end());
  return stacks;
}

Labeling solve_stacking_labeling(const Instance& instance) {
  StackSet stacks = sort_stacks_by_weight(solve_stacking(instance), instance);
  Labeling labeling = stacks_to_pages(stacks);
  for (const auto& stack : stacks.stacks) {
    for (FeatureIndex f : stack) {
      if (instance.is_dummy(f)) labeling.dummies.push_back(f);
    }
  }
  std::sort(labeling.dummies.begin(), labeling.dummies.end());
  return labeling;
}

double stack_leader_length(const StackSet& stacks, const Instance& instance) {
  return total_leader_length(instance, stacks.stacks);
}

int stack_crossings(const StackSet& stacks, const Instance& instance) {
  std::vector<std::pair<int, Leader>> leaders;
  for (std::size_t j = 0; j < stacks.stacks.size(); ++j) {
    for (FeatureIndex f : stacks.stacks[j]) {
      if (instance.is_dummy(f)) continue;
      leaders.emplace_back(static_cast<int>(j), make_leader(instance, static_cast<int>(j), f));
    }
  }
  int count = 0;
  for (std::size_t a = 0; a < leaders.size(); ++a) {
    for (std::size_t b = a + 1; b < leaders.size(); ++b) {
      if (leaders[a].first == leaders[b].first) continue;
      if (leaders_cross(leaders[a].second, leaders[b].second)) ++count;
    }
  }
  return count;
}

}  // namespace labelkit
