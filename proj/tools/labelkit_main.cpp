// labelkit command-line driver.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "labelkit/eval.hpp"
#include "labelkit/ingest.hpp"
#include "labelkit/json_io.hpp"
#include "labelkit/multipage.hpp"
#include "labelkit/service.hpp"
#include "labelkit/sliding.hpp"
#include "labelkit/stacking.hpp"
#include "labelkit/synthetic.hpp"

namespace fs = std::filesystem;
using namespace labelkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitBudget = 4;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

std::string numbered(const std::string& prefix, std::size_t i, std::size_t count) {
  const std::size_t width = std::max<std::size_t>(3, std::to_string(count - 1).size());
  std::string digits = std::to_string(i);
  return prefix + std::string(width - std::min(width, digits.size()), '0') + digits + ".json";
}

void save_all(const std::vector<Instance>& instances, const fs::path& dir) {
  for (std::size_t i = 0; i < instances.size(); ++i) {
    save_instance(instances[i], dir / numbered("inst_", i, instances.size()));
  }
}

// Where sweep/eval read their instances: a directory of JSON files, explicit
// files, or a freshly generated synthetic set.
struct InstanceSource {
  std::string dir;
  std::vector<std::string> files;
  std::size_t count = 100;
  GeneratorOptions gen;
  std::uint64_t seed = 1;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--instances", dir, "Directory of instance JSON files");
    cmd->add_option("--input", files, "Instance JSON files");
    cmd->add_option("--count", count, "Synthetic instances when no input is given");
    cmd->add_option("--n", gen.n, "Features per synthetic instance");
    cmd->add_option("--k", gen.k, "Ports per synthetic instance");
    cmd->add_option("--max-group", gen.max_group, "Largest equal-weight group (0: any)");
    cmd->add_option("--gen-seed", seed, "Seed of the synthetic set");
  }

  std::vector<Instance> load() const {
    std::vector<fs::path> paths(files.begin(), files.end());
    if (!dir.empty()) {
      std::vector<fs::path> listed;
      std::error_code ec;
      for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
        if (it->path().extension() == ".json") listed.push_back(it->path());
      }
      if (ec) throw DataError("instances: cannot read directory " + dir);
      std::sort(listed.begin(), listed.end());
      paths.insert(paths.end(), listed.begin(), listed.end());
    }
    if (paths.empty()) return generate_instances(gen, count, seed);
    std::vector<Instance> instances;
    for (const auto& p : paths) instances.push_back(load_instance(p));
    return instances;
  }
};

void add_budget_options(CLI::App* cmd, SearchBudget& budget, double& max_seconds) {
  cmd->add_option("--exact-cap", budget.exact_size_cap,
                  "Largest n for unconstrained exact sliding");
  cmd->add_option("--order-cap", budget.hard_c1_order_cap,
                  "Largest number of feasible orders for hard-C1 exact sliding");
  cmd->add_option("--max-nodes", budget.max_nodes, "Search node budget");
  cmd->add_option("--max-seconds", max_seconds, "Search time budget");
}

int cmd_solve(const std::string& method_name, const std::string& input, std::optional<double> alpha,
              const std::string& mode, bool hard_c1, int iterations, std::uint64_t seed,
              std::optional<int> k, const std::string& output, SearchBudget budget,
              double max_seconds) {
  const Method method = method_from_string(method_name);
  if (!mode.empty() && method != Method::kSliding) {
    throw UsageError("--mode: only valid with --method sliding");
  }
  if (method != Method::kStacking && !alpha) throw UsageError("--alpha: required");
  const double a = alpha.value_or(0.0);
  if (!(a >= 0.0 && a <= 1.0)) throw UsageError("--alpha: must lie in [0,1]");
  if (iterations < 1) throw UsageError("--iterations: must be positive");

  Instance instance = load_instance(input);
  if (k) {
    const auto features = instance.features();
    instance = Instance(instance.screen(), instance.label(), *k,
                        std::vector<Feature>(features.begin(), features.end()));
  }

  Labeling labeling;
  bool budget_exceeded = false;
  switch (method) {
    case Method::kMultipage:
      labeling = solve_multipage(instance, a);
      break;
    case Method::kStacking:
      labeling = solve_stacking_labeling(instance);
      labeling.alpha = a;
      break;
    case Method::kSliding:
      if (mode == "exact") {
        budget.max_time = std::chrono::milliseconds(static_cast<long long>(max_seconds * 1000));
        SlidingResult result = solve_sliding_exact(instance, a, hard_c1, budget);
        budget_exceeded = !result.optimal;
        labeling = std::move(result.labeling);
      } else {
        labeling = solve_sliding_heuristic(instance, a, hard_c1, iterations, seed).labeling;
      }
      break;
  }
  emit(dump_canonical(labeling_to_json(labeling, instance)), output);
  if (budget_exceeded) {
    std::cerr << "labelkit: budget exceeded; wrote the incumbent with \"optimal\": false\n";
    return kExitBudget;
  }
  return kExitOk;
}

bool near_zero(const Stat& s) { return s.count > 0 && std::abs(s.mean) <= 1e-9; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zoomless map labeling: multipage, sliding and stacking boundary labelings"};
  app.require_subcommand(1);
  int exit_code = kExitOk;

  // solve
  auto* solve = app.add_subcommand("solve", "Label one instance");
  std::string method, input, mode, output;
  std::optional<double> alpha;
  bool hard_c1 = false;
  int iterations = 5000;
  std::uint64_t seed = 1;
  std::optional<int> k_override;
  SearchBudget budget;
  double max_seconds = 30.0;
  solve->add_option("--method", method, "multipage, sliding or stacking")
      ->required()
      ->check(CLI::IsMember({"multipage", "sliding", "stacking"}));
  solve->add_option("--input", input, "Instance JSON")->required();
  solve->add_option("--alpha", alpha, "Trade-off weight in [0,1]");
  solve->add_option("--mode", mode, "Sliding solver")->check(CLI::IsMember({"exact", "heuristic"}));
  solve->add_flag("--hard-c1", hard_c1, "Restrict sliding orders to non-increasing weight");
  solve->add_option("--iterations", iterations, "Heuristic swap proposals");
  solve->add_option("--seed", seed, "Heuristic seed");
  solve->add_option("--k", k_override, "Override the port count");
  solve->add_option("--output", output, "Output file (default stdout)");
  add_budget_options(solve, budget, max_seconds);
  solve->callback([&] {
    exit_code = cmd_solve(method, input, alpha, mode, hard_c1, iterations, seed, k_override,
                          output, budget, max_seconds);
  });

  // sweep-alpha
  auto* sweep = app.add_subcommand("sweep-alpha", "Relative endpoint costs over the alpha grid");
  InstanceSource sweep_source;
  SweepOptions sweep_options;
  std::string sweep_method, sweep_json, sweep_csv;
  sweep->add_option("--method", sweep_method, "multipage or sliding")
      ->required()
      ->check(CLI::IsMember({"multipage", "sliding"}));
  sweep_source.add_options(sweep);
  sweep->add_flag("--hard-c1,!--no-hard-c1", sweep_options.hard_c1,
                  "Hard-C1 sliding (default on)");
  sweep->add_option("--iterations", sweep_options.iterations, "Heuristic swap proposals");
  sweep->add_option("--repetitions", sweep_options.repetitions, "Heuristic seeds per cell");
  sweep->add_option("--seed", sweep_options.seed, "First heuristic seed");
  sweep->add_option("--out-json", sweep_json, "JSON report (default stdout)");
  sweep->add_option("--out-csv", sweep_csv, "CSV table");
  sweep->callback([&] {
    const auto instances = sweep_source.load();
    const Method m = method_from_string(sweep_method);
    const SweepReport report = sweep_alpha(instances, m, sweep_options);
    Json json = report.to_json();
    bool failed = false;
    if (m == Method::kMultipage) {
      const bool zero_w = near_zero(report.rows.front().first);
      const bool zero_l = near_zero(report.rows.back().second);
      const bool monotone = report.monotonicity_violations == 0;
      const bool crossing = report.crossing_alpha && *report.crossing_alpha > 0.0 &&
                            *report.crossing_alpha < 1.0;
      json["endpoint_checks"] = {{"delta_w_zero_at_0", zero_w},
                                 {"delta_l_zero_at_1", zero_l},
                                 {"monotone", monotone},
                                 {"curves_cross", crossing}};
      failed = !(zero_w && zero_l && monotone && crossing);
    }
    emit(dump_canonical(json), sweep_json);
    if (!sweep_csv.empty()) write_text(sweep_csv, report.to_csv());
    if (failed) {
      std::cerr << "labelkit: endpoint checks failed\n";
      exit_code = kExitData;
    }
  });

  // eval
  auto* eval = app.add_subcommand("eval", "Baseline, exactness and overlap statistics");
  InstanceSource eval_source;
  EvalOptions eval_options;
  std::string eval_method, eval_json, eval_csv;
  bool no_exact = false;
  double eval_seconds = 30.0;
  eval->add_option("--method", eval_method, "multipage, sliding or stacking")
      ->required()
      ->check(CLI::IsMember({"multipage", "sliding", "stacking"}));
  eval_source.add_options(eval);
  eval->add_option("--alphas", eval_options.alphas, "Trade-off weights")->delimiter(',');
  eval->add_flag("--hard-c1,!--no-hard-c1", eval_options.hard_c1, "Hard-C1 sliding (default on)");
  eval->add_option("--iterations", eval_options.iterations, "Heuristic swap proposals");
  eval->add_option("--repetitions", eval_options.repetitions, "Heuristic seeds per cell");
  eval->add_option("--seed", eval_options.seed, "First heuristic seed");
  eval->add_flag("--no-exact", no_exact, "Skip exact and max-cost sliding searches");
  add_budget_options(eval, eval_options.budget, eval_seconds);
  eval->add_option("--out-json", eval_json, "JSON summary (default stdout)");
  eval->add_option("--out-csv", eval_csv, "Per-instance CSV");
  eval->callback([&] {
    eval_options.exact = !no_exact;
    eval_options.budget.max_time =
        std::chrono::milliseconds(static_cast<long long>(eval_seconds * 1000));
    for (double a : eval_options.alphas) {
      if (!(a >= 0.0 && a <= 1.0)) throw UsageError("--alphas: must lie in [0,1]");
    }
    const auto instances = eval_source.load();
    const EvalReport report = evaluate(instances, method_from_string(eval_method), eval_options);
    emit(dump_canonical(report.summary), eval_json);
    if (!eval_csv.empty()) write_text(eval_csv, report.csv);
  });

  // gen
  auto* gen = app.add_subcommand("gen", "Generate synthetic instances");
  GeneratorOptions gen_options;
  std::size_t gen_count = 100;
  std::uint64_t gen_seed = 1;
  double gen_screen = 300.0;
  double gen_label = 60.0;
  std::string gen_out;
  gen->add_option("--n", gen_options.n, "Features per instance");
  gen->add_option("--count", gen_count, "Number of instances");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--screen", gen_screen, "Square screen side in px");
  gen->add_option("--label", gen_label, "Square label side in px");
  gen->add_option("--k", gen_options.k, "Ports");
  gen->add_option("--max-group", gen_options.max_group, "Largest equal-weight group (0: any)");
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->callback([&] {
    if (gen_count == 0) throw UsageError("--count: must be positive");
    if (!(gen_screen > 1.0) || !(gen_label > 0.0)) throw UsageError("--screen/--label: invalid");
    gen_options.screen = {gen_screen, gen_screen};
    gen_options.label = {gen_label, gen_label};
    if (gen_options.k < 1 || gen_options.k * gen_label > gen_screen) {
      throw UsageError("--k: k labels must fit the screen width");
    }
    save_all(generate_instances(gen_options, gen_count, gen_seed), gen_out);
  });

  // bench
  auto* bench = app.add_subcommand("bench", "Time the polynomial solvers");
  BenchOptions bench_options;
  std::string bench_json, bench_csv;
  bench->add_option("--ks", bench_options.ks, "Port counts")->delimiter(',');
  bench->add_option("--ns", bench_options.ns, "Feature counts")->delimiter(',');
  bench->add_option("--runs", bench_options.runs, "Runs per cell (at least 20 recommended)");
  bench->add_option("--iterations", bench_options.iterations, "Heuristic swap proposals");
  bench->add_flag("--hard-c1,!--no-hard-c1", bench_options.hard_c1, "Hard-C1 sliding");
  bench->add_option("--seed", bench_options.seed, "Seed");
  bench->add_option("--out-json", bench_json, "JSON report");
  bench->add_option("--out-csv", bench_csv, "CSV table (default stdout)");
  bench->callback([&] {
    const BenchReport report = run_bench(bench_options);
    if (!bench_json.empty()) write_text(bench_json, dump_canonical(report.to_json()));
    emit(report.to_csv(), bench_csv);
  });

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Sample instances from a POI CSV");
  std::string csv_path, map_spec, ingest_out;
  std::size_t ingest_count = 100, ingest_n = 30;
  std::uint64_t ingest_seed = 1;
  int grid = 4;
  ProjectionOptions projection;
  bool source_y_down = false;
  std::string points_path;
  auto* csv_opt = ingest->add_option("--csv", csv_path, "CSV file");
  auto* points_opt =
      ingest->add_option("--points", points_path, "GeoJSON or JSON array of points");
  csv_opt->excludes(points_opt);
  points_opt->excludes(csv_opt);
  ingest->add_option("--map", map_spec, "id=COL,x=COL,y=COL,stars=COL,name=COL,category=COL");
  ingest->add_option("--count", ingest_count, "Number of map sections");
  ingest->add_option("--n", ingest_n, "Features per section");
  ingest->add_option("--seed", ingest_seed, "Seed");
  ingest->add_option("--grid", grid, "Sections per side of the sampling grid");
  ingest->add_option("--k", projection.k, "Ports");
  ingest->add_flag("--y-down", source_y_down, "Source y grows downward like the screen");
  ingest->add_option("--out", ingest_out, "Output directory")->required();
  ingest->callback([&] {
    projection.source_y_up = !source_y_down;
    projection.jitter_seed = ingest_seed;
    if (csv_path.empty() && points_path.empty()) {
      throw UsageError("ingest: one of --csv and --points is required");
    }
    const ColumnMapping mapping = ColumnMapping::parse(map_spec);
    const auto records =
        csv_path.empty() ? load_points_json(points_path, mapping) : load_csv(csv_path, mapping);
    const auto instances =
        sample_instances(records, ingest_count, ingest_n, ingest_seed, projection, grid);
    save_all(instances, ingest_out);
  });

  // serve
  auto* serve = app.add_subcommand("serve", "HTTP API for the web UI");
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string instances_dir = "data";
  serve->add_option("--port", port, "TCP port");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--instances-dir", instances_dir, "Directory of instance JSON files");
  serve->callback([&] { exit_code = run_server(instances_dir, host, port); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    std::cerr << "labelkit: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::kUsage:
        return kExitUsage;
      case ErrorKind::kBudget:
        return kExitBudget;
      case ErrorKind::kData:
        return kExitData;
    }
  } catch (const std::exception& e) {
    std::cerr << "labelkit: " << e.what() << '\n';
    return kExitData;
  }
  return exit_code;
}
