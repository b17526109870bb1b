#pragma once

#include <vector>

#include <Eigen/Dense>

namespace labelkit {

/// Minimum-weight perfect matching on a square cost matrix (rows to
/// columns). Among all optimal assignments the lexicographically smallest
/// row->column vector is returned, so results are stable under ties.
///
/// Runs the O(n^3) shortest-augmenting-path Hungarian method, then walks
/// the zero-reduced-cost subgraph row by row to select the smallest
/// optimal assignment.
std::vector<int> min_cost_perfect_matching(const Eigen::MatrixXd& cost);

/// Sum of cost(r, assignment[r]) in row order.
double assignment_cost(const Eigen::MatrixXd& cost, const std::vector<int>& assignment);

}  // namespace labelkit
