#include "labelkit/eval.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "labelkit/costs.hpp"
#include "labelkit/multipage.hpp"
#include "labelkit/parallel.hpp"
#include "labelkit/stacking.hpp"
#include "labelkit/synthetic.hpp"

namespace labelkit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double relative_or_nan(double c, double c_ref) {
  return c_ref == 0.0 ? kNaN : relative_cost(c, c_ref);
}

Json stat_json(const Stat& s) {
  return {{"mean", canonical_real(s.mean)},
          {"stddev", canonical_real(s.stddev)},
          {"count", s.count}};
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream out;
  out.precision(9);
  out << v;
  return out.str();
}

struct SlidingMeans {
  double c_c = 0.0;
  double c_d = 0.0;
  double c_slid = 0.0;
  int crossings = 0;  // of repetition 0
  Labeling first;     // repetition 0
};

SlidingMeans heuristic_means(const Instance& instance, double alpha, bool hard_c1,
                             int iterations, int repetitions, std::uint64_t seed) {
  SlidingMeans means;
  for (int r = 0; r < repetitions; ++r) {
    SlidingResult result = solve_sliding_heuristic(instance, alpha, hard_c1, iterations,
                                                   seed + static_cast<std::uint64_t>(r));
    const LabelingCosts costs = labeling_costs(result.labeling, instance, alpha);
    means.c_c += costs.c_c / repetitions;
    means.c_d += costs.c_d / repetitions;
    means.c_slid += result.objective / repetitions;
    if (r == 0) {
      means.crossings = costs.cross_count;
      means.first = std::move(result.labeling);
    }
  }
  return means;
}

}  // namespace

Stat summarize(const std::vector<double>& values) {
  Stat s;
  double sum = 0.0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    sum += v;
    ++s.count;
  }
  if (s.count == 0) return s;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double sq = 0.0;
    for (double v : values) {
      if (!std::isnan(v)) sq += (v - s.mean) * (v - s.mean);
    }
    s.stddev = std::sqrt(sq / static_cast<double>(s.count - 1));
  }
  return s;
}

std::vector<double> alpha_grid() {
  std::vector<double> alphas;
  for (int i = 0; i <= 40; ++i) alphas.push_back(i / 40.0);
  return alphas;
}

OverlapStats overlap_stats(const Labeling& labeling, const Instance& instance,
                           double small_gap) {
  OverlapStats stats;
  for (const State& state : labeling.states) {
    std::size_t real = 0;
    for (FeatureIndex f : state.assignment) {
      if (!instance.is_dummy(f)) ++real;
    }
    stats.pairs += real * (real - (real > 0 ? 1 : 0)) / 2;
    for (double gap : overlap_vertical_gaps(state, instance)) {
      ++stats.overlapping;
      if (gap < small_gap) ++stats.small;
    }
  }
  return stats;
}

std::vector<std::size_t> gap_histogram(const Labeling& labeling, const Instance& instance,
                                       double bin_width, double max_gap) {
  const auto bins = static_cast<std::size_t>(std::ceil(max_gap / bin_width));
  std::vector<std::size_t> histogram(bins, 0);
  for (const State& state : labeling.states) {
    for (double gap : overlap_vertical_gaps(state, instance)) {
      if (gap < max_gap) ++histogram[static_cast<std::size_t>(gap / bin_width)];
    }
  }
  return histogram;
}

SweepReport sweep_alpha(const std::vector<Instance>& instances, Method method,
                        const SweepOptions& options) {
  if (method == Method::kStacking) {
    throw UsageError("sweep-alpha: stacking has no trade-off weight");
  }
  const std::size_t count = instances.size();
  const std::size_t na = options.alphas.size();
  SweepReport report;
  report.method = method;
  report.first_name = method == Method::kMultipage ? "delta_w" : "delta_c";
  report.second_name = method == Method::kMultipage ? "delta_l" : "delta_d";
  report.per_instance_first.assign(count, std::vector<double>(na, kNaN));
  report.per_instance_second.assign(count, std::vector<double>(na, kNaN));
  report.first_costs.assign(count, std::vector<double>(na, kNaN));
  report.second_costs.assign(count, std::vector<double>(na, kNaN));
  std::vector<std::vector<OverlapStats>> overlaps(count, std::vector<OverlapStats>(na));

  parallel_for(count, [&](std::size_t i) {
    const Instance& instance = instances[i];
    double ref_first = 0.0;
    double ref_second = 0.0;
    if (method == Method::kMultipage) {
      ref_first = labeling_costs(solve_multipage(instance, 0.0), instance, 0.0).c_w;
      ref_second = labeling_costs(solve_multipage(instance, 1.0), instance, 1.0).c_l;
    } else {
      ref_first = heuristic_means(instance, 1.0, options.hard_c1, options.iterations,
                                  options.repetitions, options.seed)
                      .c_c;
      ref_second = heuristic_means(instance, 0.0, options.hard_c1, options.iterations,
                                   options.repetitions, options.seed)
                       .c_d;
    }
    for (std::size_t a = 0; a < na; ++a) {
      const double alpha = options.alphas[a];
      double first = 0.0;
      double second = 0.0;
      if (method == Method::kMultipage) {
        const Labeling labeling = solve_multipage(instance, alpha);
        const LabelingCosts costs = labeling_costs(labeling, instance, alpha);
        first = costs.c_w;
        second = costs.c_l;
        overlaps[i][a] = overlap_stats(labeling, instance);
      } else {
        const SlidingMeans means = heuristic_means(instance, alpha, options.hard_c1,
                                                   options.iterations, options.repetitions,
                                                   options.seed);
        first = means.c_c;
        second = means.c_d;
        overlaps[i][a] = overlap_stats(means.first, instance);
      }
      report.first_costs[i][a] = first;
      report.second_costs[i][a] = second;
      report.per_instance_first[i][a] = relative_or_nan(first, ref_first);
      report.per_instance_second[i][a] = relative_or_nan(second, ref_second);
    }
  });

  for (std::size_t a = 0; a < na; ++a) {
    SweepRow row;
    row.alpha = options.alphas[a];
    std::vector<double> first(count), second(count);
    std::size_t pairs = 0, overlapping = 0, small = 0;
    for (std::size_t i = 0; i < count; ++i) {
      first[i] = report.per_instance_first[i][a];
      second[i] = report.per_instance_second[i][a];
      if (std::isnan(first[i])) ++row.skipped_first;
      if (std::isnan(second[i])) ++row.skipped_second;
      pairs += overlaps[i][a].pairs;
      overlapping += overlaps[i][a].overlapping;
      small += overlaps[i][a].small;
    }
    row.first = summarize(first);
    row.second = summarize(second);
    row.h_share = pairs ? static_cast<double>(overlapping) / static_cast<double>(pairs) : 0.0;
    row.h_small_share =
        overlapping ? static_cast<double>(small) / static_cast<double>(overlapping) : 0.0;
    report.rows.push_back(row);
  }

  for (std::size_t a = 1; a < na; ++a) {
    const double prev = report.rows[a - 1].first.mean - report.rows[a - 1].second.mean;
    const double cur = report.rows[a].first.mean - report.rows[a].second.mean;
    if ((prev < 0.0) != (cur < 0.0)) {
      const double a0 = report.rows[a - 1].alpha;
      const double a1 = report.rows[a].alpha;
      report.crossing_alpha = a0 + (a1 - a0) * prev / (prev - cur);
      break;
    }
  }

  if (method == Method::kMultipage) {
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t a = 1; a < na; ++a) {
        const auto& w = report.first_costs[i];
        const auto& l = report.second_costs[i];
        const double tol_w = 1e-12 * std::max(1.0, std::abs(w[a - 1]));
        const double tol_l = 1e-12 * std::max(1.0, std::abs(l[a - 1]));
        if (w[a] < w[a - 1] - tol_w || l[a] > l[a - 1] + tol_l) {
          ++report.monotonicity_violations;
        }
      }
    }
  }
  return report;
}

Json SweepReport::to_json() const {
  Json rows_json = Json::array();
  for (const SweepRow& row : rows) {
    rows_json.push_back({{"alpha", canonical_real(row.alpha)},
                         {first_name, stat_json(row.first)},
                         {second_name, stat_json(row.second)},
                         {"skipped_" + first_name, row.skipped_first},
                         {"skipped_" + second_name, row.skipped_second},
                         {"h_share", canonical_real(row.h_share)},
                         {"h_small_share", canonical_real(row.h_small_share)}});
  }
  Json out = {{"method", to_string(method)},
              {"instances", per_instance_first.size()},
              {"rows", std::move(rows_json)},
              {"monotonicity_violations", monotonicity_violations}};
  out["crossing_alpha"] =
      crossing_alpha ? Json(canonical_real(*crossing_alpha)) : Json(nullptr);
  return out;
}

std::string SweepReport::to_csv() const {
  std::ostringstream out;
  out << "alpha,mean_" << first_name << ",std_" << first_name << ",mean_" << second_name
      << ",std_" << second_name << ",skipped_" << first_name << ",skipped_" << second_name
      << ",h_share,h_small_share\n";
  for (const SweepRow& row : rows) {
    out << fmt(row.alpha) << ',' << fmt(row.first.mean) << ',' << fmt(row.first.stddev) << ','
        << fmt(row.second.mean) << ',' << fmt(row.second.stddev) << ',' << row.skipped_first
        << ',' << row.skipped_second << ',' << fmt(row.h_share) << ','
        << fmt(row.h_small_share) << '\n';
  }
  return out.str();
}

namespace {

EvalReport evaluate_multipage(const std::vector<Instance>& instances,
                              const EvalOptions& options) {
  const std::size_t count = instances.size();
  const std::size_t na = options.alphas.size();
  std::vector<std::vector<LabelingCosts>> costs(count, std::vector<LabelingCosts>(na));
  std::vector<std::vector<OverlapStats>> overlaps(count, std::vector<OverlapStats>(na));
  parallel_for(count, [&](std::size_t i) {
    for (std::size_t a = 0; a < na; ++a) {
      const Labeling labeling = solve_multipage(instances[i], options.alphas[a]);
      costs[i][a] = labeling_costs(labeling, instances[i], options.alphas[a]);
      overlaps[i][a] = overlap_stats(labeling, instances[i]);
    }
  });
  EvalReport report;
  std::ostringstream csv;
  csv << "instance,alpha,c_w,c_l,c_mpl,c_d,pairs,h_pairs,h_small\n";
  Json per_alpha = Json::array();
  for (std::size_t a = 0; a < na; ++a) {
    std::vector<double> w, l, mpl;
    std::size_t pairs = 0, overlapping = 0, small = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const LabelingCosts& c = costs[i][a];
      w.push_back(c.c_w);
      l.push_back(c.c_l);
      mpl.push_back(c.c_mpl);
      pairs += overlaps[i][a].pairs;
      overlapping += overlaps[i][a].overlapping;
      small += overlaps[i][a].small;
      csv << i << ',' << fmt(options.alphas[a]) << ',' << fmt(c.c_w) << ',' << fmt(c.c_l)
          << ',' << fmt(c.c_mpl) << ',' << fmt(c.c_d) << ',' << overlaps[i][a].pairs << ','
          << overlaps[i][a].overlapping << ',' << overlaps[i][a].small << '\n';
    }
    per_alpha.push_back(
        {{"alpha", canonical_real(options.alphas[a])},
         {"c_w", stat_json(summarize(w))},
         {"c_l", stat_json(summarize(l))},
         {"c_mpl", stat_json(summarize(mpl))},
         {"h_share", canonical_real(pairs ? double(overlapping) / double(pairs) : 0.0)},
         {"h_small_share",
          canonical_real(overlapping ? double(small) / double(overlapping) : 0.0)}});
  }
  report.summary = {{"method", "multipage"},
                    {"instances", count},
                    {"per_alpha", std::move(per_alpha)}};
  report.csv = csv.str();
  return report;
}

EvalReport evaluate_stacking(const std::vector<Instance>& instances) {
  const std::size_t count = instances.size();
  std::vector<double> delta_w(count, kNaN), length(count), h_share(count, kNaN);
  std::vector<OverlapStats> overlaps(count);
  parallel_for(count, [&](std::size_t i) {
    const Instance& instance = instances[i];
    const Labeling stacking = solve_stacking_labeling(instance);
    const Labeling reference = solve_multipage(instance, 0.0);
    delta_w[i] = relative_or_nan(labeling_costs(stacking, instance, 0.0).c_w,
                                 labeling_costs(reference, instance, 0.0).c_w);
    length[i] = stack_leader_length(*stacking.stacks, instance);
    overlaps[i] = overlap_stats(stacking, instance);
  });
  std::ostringstream csv;
  csv << "instance,delta_w_vs_multipage,total_leader_length,pairs,h_pairs,h_small\n";
  std::size_t pairs = 0, overlapping = 0, small = 0;
  for (std::size_t i = 0; i < count; ++i) {
    csv << i << ',' << fmt(delta_w[i]) << ',' << fmt(length[i]) << ',' << overlaps[i].pairs
        << ',' << overlaps[i].overlapping << ',' << overlaps[i].small << '\n';
    pairs += overlaps[i].pairs;
    overlapping += overlaps[i].overlapping;
    small += overlaps[i].small;
  }
  EvalReport report;
  report.summary = {
      {"method", "stacking"},
      {"instances", count},
      {"delta_w_vs_multipage", stat_json(summarize(delta_w))},
      {"total_leader_length", stat_json(summarize(length))},
      {"h_share", canonical_real(pairs ? double(overlapping) / double(pairs) : 0.0)},
      {"h_small_share", canonical_real(overlapping ? double(small) / double(overlapping) : 0.0)}};
  report.csv = csv.str();
  return report;
}

struct SlidingCell {
  double exact = kNaN;
  bool exact_optimal = false;
  int exact_crossings = 0;
  double exact_c_d = kNaN;
  double heuristic = kNaN;
  double delta_h = kNaN;
  double random = kNaN;
  int random_crossings = 0;
  double random_c_d = kNaN;
  std::vector<std::size_t> histogram;
  OverlapStats overlaps;
};

EvalReport evaluate_sliding(const std::vector<Instance>& instances,
                            const EvalOptions& options) {
  const std::size_t count = instances.size();
  const std::size_t na = options.alphas.size();
  std::vector<std::vector<SlidingCell>> cells(count, std::vector<SlidingCell>(na));
  std::vector<int> max_c2(count, 0);
  std::vector<double> max_c3(count, kNaN);
  std::vector<char> max_optimal(count, 1);

  parallel_for(count, [&](std::size_t i) {
    const Instance& instance = instances[i];
    if (options.exact) {
      const SlidingResult c2 = max_cost_sliding(instance, SlidingCriterion::kCrossings,
                                                options.hard_c1, options.budget);
      const SlidingResult c3 = max_cost_sliding(instance, SlidingCriterion::kDistance,
                                                options.hard_c1, options.budget);
      max_c2[i] = labeling_costs(c2.labeling, instance, 1.0).cross_count;
      max_c3[i] = labeling_costs(c3.labeling, instance, 0.0).c_d;
      max_optimal[i] = c2.optimal && c3.optimal;
    }
    for (std::size_t a = 0; a < na; ++a) {
      const double alpha = options.alphas[a];
      SlidingCell& cell = cells[i][a];
      const SlidingMeans means = heuristic_means(instance, alpha, options.hard_c1,
                                                 options.iterations, options.repetitions,
                                                 options.seed);
      cell.heuristic = means.c_slid;
      cell.histogram = gap_histogram(means.first, instance);
      cell.overlaps = overlap_stats(means.first, instance);
      const SlidingResult random =
          random_sliding_baseline(instance, alpha, options.hard_c1, options.seed + i);
      cell.random = random.objective;
      const LabelingCosts random_costs = labeling_costs(random.labeling, instance, alpha);
      cell.random_crossings = random_costs.cross_count;
      cell.random_c_d = random_costs.c_d;
      if (options.exact) {
        const SlidingResult exact =
            solve_sliding_exact(instance, alpha, options.hard_c1, options.budget);
        const LabelingCosts exact_costs = labeling_costs(exact.labeling, instance, alpha);
        cell.exact = exact.objective;
        cell.exact_optimal = exact.optimal;
        cell.exact_crossings = exact_costs.cross_count;
        cell.exact_c_d = exact_costs.c_d;
        cell.delta_h = relative_or_nan(cell.heuristic, cell.exact);
      }
    }
  });

  std::ostringstream csv;
  csv << "instance,alpha,exact,exact_optimal,heuristic,delta_h,random,exact_crossings,"
         "random_crossings,max_c2_crossings,exact_c_d,random_c_d,max_c3_c_d,h_pairs,h_small\n";
  Json per_alpha = Json::array();
  for (std::size_t a = 0; a < na; ++a) {
    std::vector<double> exact, heuristic, delta_h, random, ex_cross, rnd_cross, mx_cross,
        ex_cd, rnd_cd, mx_cd;
    std::vector<std::size_t> histogram;
    std::size_t pairs = 0, overlapping = 0, small = 0, chain_violations = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const SlidingCell& c = cells[i][a];
      exact.push_back(c.exact);
      heuristic.push_back(c.heuristic);
      delta_h.push_back(c.delta_h);
      random.push_back(c.random);
      ex_cross.push_back(options.exact ? c.exact_crossings : kNaN);
      rnd_cross.push_back(c.random_crossings);
      mx_cross.push_back(options.exact ? max_c2[i] : kNaN);
      ex_cd.push_back(c.exact_c_d);
      rnd_cd.push_back(c.random_c_d);
      mx_cd.push_back(max_c3[i]);
      if (histogram.size() < c.histogram.size()) histogram.resize(c.histogram.size(), 0);
      for (std::size_t b = 0; b < c.histogram.size(); ++b) histogram[b] += c.histogram[b];
      pairs += c.overlaps.pairs;
      overlapping += c.overlaps.overlapping;
      small += c.overlaps.small;
      if (options.exact && c.exact_optimal &&
          (c.exact > c.random + 1e-9 || c.exact > c.heuristic + 1e-9)) {
        ++chain_violations;
      }
      csv << i << ',' << fmt(options.alphas[a]) << ',' << fmt(c.exact) << ','
          << (c.exact_optimal ? 1 : 0) << ',' << fmt(c.heuristic) << ',' << fmt(c.delta_h)
          << ',' << fmt(c.random) << ',' << c.exact_crossings << ',' << c.random_crossings
          << ',' << max_c2[i] << ',' << fmt(c.exact_c_d) << ',' << fmt(c.random_c_d) << ','
          << fmt(max_c3[i]) << ',' << c.overlaps.overlapping << ',' << c.overlaps.small
          << '\n';
    }
    per_alpha.push_back(
        {{"alpha", canonical_real(options.alphas[a])},
         {"exact", stat_json(summarize(exact))},
         {"heuristic", stat_json(summarize(heuristic))},
         {"delta_h", stat_json(summarize(delta_h))},
         {"random", stat_json(summarize(random))},
         {"crossings_exact", stat_json(summarize(ex_cross))},
         {"crossings_random", stat_json(summarize(rnd_cross))},
         {"crossings_max_c2", stat_json(summarize(mx_cross))},
         {"c_d_exact", stat_json(summarize(ex_cd))},
         {"c_d_random", stat_json(summarize(rnd_cd))},
         {"c_d_max_c3", stat_json(summarize(mx_cd))},
         {"gap_histogram_0_50_px", histogram},
         {"h_share", canonical_real(pairs ? double(overlapping) / double(pairs) : 0.0)},
         {"h_small_share",
          canonical_real(overlapping ? double(small) / double(overlapping) : 0.0)},
         {"chain_violations", chain_violations}});
  }
  std::size_t non_optimal = 0;
  for (char ok : max_optimal) non_optimal += ok ? 0 : 1;
  EvalReport report;
  report.summary = {{"method", "sliding"},
                    {"instances", count},
                    {"hard_c1", options.hard_c1},
                    {"iterations", options.iterations},
                    {"repetitions", options.repetitions},
                    {"max_searches_not_optimal", non_optimal},
                    {"per_alpha", std::move(per_alpha)}};
  report.csv = csv.str();
  return report;
}

}  // namespace

EvalReport evaluate(const std::vector<Instance>& instances, Method method,
                    const EvalOptions& options) {
  switch (method) {
    case Method::kMultipage:
      return evaluate_multipage(instances, options);
    case Method::kStacking:
      return evaluate_stacking(instances);
    case Method::kSliding:
      return evaluate_sliding(instances, options);
  }
  throw UsageError("eval: unknown method");
}

BenchReport run_bench(const BenchOptions& options) {
  using Clock = std::chrono::steady_clock;
  const std::vector<double> alphas = alpha_grid();
  BenchReport report;
  for (int k : options.ks) {
    for (std::size_t n : options.ns) {
      GeneratorOptions gen;
      gen.n = n;
      gen.k = k;
      gen.label.width = std::min(gen.label.width, gen.screen.width / k);
      const std::size_t runs = static_cast<std::size_t>(std::max(options.runs, 1));
      const std::vector<Instance> instances = generate_instances(gen, runs, options.seed);
      for (const std::string method : {"multipage", "stacking", "sliding-heuristic"}) {
        const std::size_t total =
            method == "stacking" ? runs : std::max(runs, alphas.size());
        std::vector<double> millis;
        for (std::size_t r = 0; r < total; ++r) {
          const Instance& instance = instances[r % instances.size()];
          const double alpha = alphas[r % alphas.size()];
          const auto start = Clock::now();
          if (method == "multipage") {
            (void)solve_multipage(instance, alpha);
          } else if (method == "stacking") {
            (void)solve_stacking_labeling(instance);
          } else {
            (void)solve_sliding_heuristic(instance, alpha, options.hard_c1, options.iterations,
                                          options.seed + r);
          }
          millis.push_back(
              std::chrono::duration<double, std::milli>(Clock::now() - start).count());
        }
        report.cells.push_back({method, k, n, summarize(millis)});
      }
    }
  }
  report.machine = {{"hardware_threads", std::thread::hardware_concurrency()},
#if defined(__clang__)
                    {"compiler", "clang " __clang_version__},
#elif defined(__GNUC__)
                    {"compiler", "gcc " __VERSION__},
#else
                    {"compiler", "unknown"},
#endif
                    {"iterations", options.iterations},
                    {"hard_c1", options.hard_c1}};
  return report;
}

Json BenchReport::to_json() const {
  Json cells_json = Json::array();
  for (const BenchCell& c : cells) {
    cells_json.push_back({{"method", c.method},
                          {"k", c.k},
                          {"n", c.n},
                          {"runs", c.millis.count},
                          {"mean_ms", canonical_real(c.millis.mean)},
                          {"stddev_ms", canonical_real(c.millis.stddev)}});
  }
  return {{"cells", std::move(cells_json)}, {"machine", machine}};
}

std::string BenchReport::to_csv() const {
  std::ostringstream out;
  out << "method,k,n,runs,mean_ms,stddev_ms\n";
  for (const BenchCell& c : cells) {
    out << c.method << ',' << c.k << ',' << c.n << ',' << c.millis.count << ','
        << fmt(c.millis.mean) << ',' << fmt(c.millis.stddev) << '\n';
  }
  return out.str();
}

}  // namespace labelkit
