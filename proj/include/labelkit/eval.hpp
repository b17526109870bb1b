#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "labelkit/json_io.hpp"
#include "labelkit/model.hpp"
#include "labelkit/sliding.hpp"

namespace labelkit {

struct Stat {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  std::size_t count = 0;
};

Stat summarize(const std::vector<double>& values);

/// The 41 trade-off weights 0, 0.025, ..., 1.
std::vector<double> alpha_grid();

/// H-set statistics of a labeling: leader pairs on the same state, how many
/// run above each other, and how many of those are closer than `small_gap`.
struct OverlapStats {
  std::size_t pairs = 0;
  std::size_t overlapping = 0;
  std::size_t small = 0;
};

OverlapStats overlap_stats(const Labeling& labeling, const Instance& instance,
                           double small_gap = 5.0);

/// Counts of vertical gaps of H-pairs in [0, max_gap) per bin of bin_width px.
std::vector<std::size_t> gap_histogram(const Labeling& labeling, const Instance& instance,
                                       double bin_width = 5.0, double max_gap = 50.0);

struct SweepOptions {
  bool hard_c1 = true;
  int iterations = 5000;
  int repetitions = 5;
  std::uint64_t seed = 1;
  std::vector<double> alphas = alpha_grid();
};

struct SweepRow {
  double alpha = 0.0;
  Stat first;   // delta_W (multipage) or delta_C (sliding)
  Stat second;  // delta_L (multipage) or delta_D (sliding)
  std::size_t skipped_first = 0;   // instances with zero reference cost
  std::size_t skipped_second = 0;
  double h_share = 0.0;
  double h_small_share = 0.0;
};

struct SweepReport {
  Method method = Method::kMultipage;
  std::string first_name;
  std::string second_name;
  std::vector<SweepRow> rows;
  // per_instance_first[i][a]; NaN when skipped.
  std::vector<std::vector<double>> per_instance_first;
  std::vector<std::vector<double>> per_instance_second;
  // Raw criterion costs behind the deltas, per instance and alpha.
  std::vector<std::vector<double>> first_costs;
  std::vector<std::vector<double>> second_costs;
  // Linear interpolation of the first alpha where mean curves meet.
  std::optional<double> crossing_alpha;
  std::size_t monotonicity_violations = 0;

  Json to_json() const;
  std::string to_csv() const;
};

/// Multipage: delta_W against S_0 and delta_L against S_1 per alpha.
/// Sliding (heuristic, mean over repetitions): delta_C against S_1 and
/// delta_D against S_0.
SweepReport sweep_alpha(const std::vector<Instance>& instances, Method method,
                        const SweepOptions& options);

struct EvalOptions {
  bool hard_c1 = true;
  int iterations = 5000;
  int repetitions = 5;
  std::uint64_t seed = 1;
  std::vector<double> alphas{0.0, 0.5, 1.0};
  bool exact = true;
  SearchBudget budget;
};

struct EvalReport {
  Json summary;
  std::string csv;  // one row per (instance, alpha)
};

EvalReport evaluate(const std::vector<Instance>& instances, Method method,
                    const EvalOptions& options);

struct BenchOptions {
  std::vector<int> ks{5, 10};
  std::vector<std::size_t> ns{30, 100};
  int runs = 20;
  int iterations = 5000;
  bool hard_c1 = true;
  std::uint64_t seed = 1;
};

struct BenchCell {
  std::string method;
  int k = 0;
  std::size_t n = 0;
  Stat millis;
};

struct BenchReport {
  std::vector<BenchCell> cells;
  Json machine;

  Json to_json() const;
  std::string to_csv() const;
};

/// Wall time per solve for multipage, stacking and the sliding heuristic on
/// each (k, n) cell. Multipage and sliding cycle alpha through the grid.
BenchReport run_bench(const BenchOptions& options);

}  // namespace labelkit
