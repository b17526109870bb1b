#pragma once

#include <vector>

#include "labelkit/model.hpp"

namespace labelkit {

/// Vertical strips between consecutive distinct x-coordinates of ports and
/// features, each tagged with the direction the optimal leaders run in it.
struct StripDecomposition {
  enum class Direction { kLeftward, kRightward, kNone };
  struct Strip {
    double left = 0.0;
    double right = 0.0;
    Direction direction = Direction::kNone;
    int flow = 0;  // leaders crossing the strip
  };
  std::vector<Strip> strips;
};

/// Strips for the stacking problem: each port counted with its load.
StripDecomposition decompose_strips(const Instance& instance,
                                    const std::vector<int>& port_loads);

/// Partition into k stacks of depth ceil(n/k) with minimum total leader
/// length whose leader union is crossing-free when leaders sharing a port
/// are exempt. Dummies pad the stacks at the bottom.
StackSet solve_stacking(const Instance& instance);

/// Non-increasing weight per stack, ties by (x, y, id); dummies last.
StackSet sort_stacks_by_weight(StackSet stacks, const Instance& instance);

/// Page i shows the i-th entry of every stack.
Labeling stacks_to_pages(const StackSet& stacks);

/// Inverse of stacks_to_pages.
StackSet pages_to_stacks(const Labeling& labeling);

/// Cyclic rotation of stack `port` (0-based): the top entry moves to the
/// bottom.
StackSet pop_stack(StackSet stacks, int port);

/// Solve, sort and convert; the labeling carries the stacks.
Labeling solve_stacking_labeling(const Instance& instance);

/// Sum of leader lengths over all stacks, dummies excluded.
double stack_leader_length(const StackSet& stacks, const Instance& instance);

/// Crossing check over the complete leader set with the same-port
/// exemption. Returns the number of crossing pairs.
int stack_crossings(const StackSet& stacks, const Instance& instance);

}  // namespace labelkit
