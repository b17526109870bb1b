#include "labelkit/matching.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "labelkit/model.hpp"

namespace labelkit {

namespace {

struct HungarianResult {
  std::vector<int> row_to_col;
  Eigen::VectorXd u;  // row potentials
  Eigen::VectorXd v;  // column potentials
};

HungarianResult hungarian(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is the virtual root of each augmentation.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> owner(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    owner[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = owner[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const int j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  HungarianResult result;
  result.row_to_col.assign(n, -1);
  result.u.resize(n);
  result.v.resize(n);
  for (int j = 1; j <= n; ++j) result.row_to_col[owner[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) {
    result.u(i) = u[i + 1];
    result.v(i) = v[i + 1];
  }
  return result;
}

}  // namespace

std::vector<int> min_cost_perfect_matching(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols()) {
    throw DataError("matching: cost matrix is not square");
  }
  if (!cost.allFinite()) throw DataError("matching: non-finite cost entry");
  const int n = static_cast<int>(cost.rows());
  if (n == 0) return {};

  HungarianResult h = hungarian(cost);
  const double tol = 64.0 * std::numeric_limits<double>::epsilon() *
                     (1.0 + cost.cwiseAbs().maxCoeff()) * n;

  // Zero-reduced-cost edges. Every optimal assignment lies in this graph,
  // and every perfect matching in it is optimal.
  std::vector<std::vector<int>> tight(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (cost(r, c) - h.u(r) - h.v(c) <= tol) tight[r].push_back(c);
    }
  }

  std::vector<int> row_to_col = h.row_to_col;
  std::vector<int> col_to_row(n);
  for (int r = 0; r < n; ++r) col_to_row[row_to_col[r]] = r;
  for (int r = 0; r < n; ++r) {
    const auto& row = tight[r];
    if (std::find(row.begin(), row.end(), row_to_col[r]) == row.end()) {
      tight[r].push_back(row_to_col[r]);
      std::sort(tight[r].begin(), tight[r].end());
    }
  }

  std::vector<int> visited(n, -1);
  int stamp = 0;
  for (int r = 0; r < n; ++r) {
    for (int c : tight[r]) {
      if (c == row_to_col[r]) break;
      const int target = row_to_col[r];
      const int displaced = col_to_row[c];
      if (displaced < r) continue;  // column belongs to a fixed row
      ++stamp;
      visited[c] = stamp;
      // Augmenting path from the displaced row to the column r releases,
      // through unfixed rows only.
      std::vector<std::pair<int, int>> path;
      std::function<bool(int)> dfs = [&](int row) -> bool {
        for (int next : tight[row]) {
          if (visited[next] == stamp) continue;
          visited[next] = stamp;
          if (next == target) {
            path.emplace_back(row, next);
            return true;
          }
          const int owner = col_to_row[next];
          if (owner <= r) continue;
          if (dfs(owner)) {
            path.emplace_back(row, next);
            return true;
          }
        }
        return false;
      };
      if (!dfs(displaced)) continue;
      for (auto [row, col] : path) {
        row_to_col[row] = col;
        col_to_row[col] = row;
      }
      row_to_col[r] = c;
      col_to_row[c] = r;
      break;
    }
  }
  return row_to_col;
}

double assignment_cost(const Eigen::MatrixXd& cost, const std::vector<int>& assignment) {
  double total = 0.0;
  for (std::size_t r = 0; r < assignment.size(); ++r) {
    total += cost(static_cast<Eigen::Index>(r), assignment[r]);
  }
  return total;
}

}  // namespace labelkit
