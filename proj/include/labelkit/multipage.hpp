#pragma once

#include <span>

#include <Eigen/Dense>

#include "labelkit/model.hpp"

namespace labelkit {

/// Features (rows, real ones first, then dummies) against (port, page)
/// slots (columns). Slot of port j on page i, both 1-based, is
/// (i - 1) * k + (j - 1).
struct MatchingProblem {
  Eigen::MatrixXd cost;
  int k = 0;
  int pages = 0;
  std::size_t real_rows = 0;

  static int slot_index(int port, int page, int k) { return (page - 1) * k + (port - 1); }
};

/// (1 / (k 2^i)) * [(1 - alpha)(1 - w) + alpha * length / (width + height)].
/// Summed over a complete assignment this is exactly c_MPL.
double edge_weight(const Feature& feature, int port, int page, double alpha,
                   const Instance& instance);

/// Dummy rows sit on the last page's rightmost ports; the remaining entries
/// of those rows and columns carry a finite penalty larger than any
/// penalty-free assignment.
MatchingProblem build_matching_problem(const Instance& instance, double alpha);

/// Crossing-free, length-minimal assignment of a page's features to its
/// leftmost ports. Remaining ports on the right are filled with `dummies`.
State resolve_page_crossings(std::span<const FeatureIndex> page_features,
                             std::span<const FeatureIndex> dummies,
                             const Instance& instance, int page_index);

Labeling solve_multipage(const Instance& instance, double alpha);

}  // namespace labelkit
