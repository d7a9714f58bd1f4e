#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chaoslearn/experiment.hpp"

namespace {

using chaoslearn::ExperimentConfig;
using chaoslearn::Report;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::string data_dir;
  std::string mode;
  long long seed = -1;
  int n_threads = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON config file");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--data-dir", args.data_dir, "dataset directory");
  cmd->add_option("--mode", args.mode, "evaluation protocol: paper|honest")
      ->check(CLI::IsMember({"paper", "honest"}));
  cmd->add_option("--seed", args.seed, "split seed");
  cmd->add_option("--threads", args.n_threads, "worker threads (0 = auto)");
}

ExperimentConfig build_config(const CommonArgs& args,
                              const std::string& benchmark) {
  nlohmann::json j;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in)
      throw chaoslearn::ConfigError("cannot open config '" + args.config_path +
                                    "'");
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw chaoslearn::ConfigError("config '" + args.config_path +
                                    "': " + e.what());
    }
  }
  if (!benchmark.empty()) j["benchmark"] = benchmark;
  if (!args.mode.empty()) j["mode"] = args.mode;
  if (args.seed >= 0) {
    j["seed"] = args.seed;
    if (j.contains("split")) j["split"]["seed"] = args.seed;
  }
  if (!args.out_dir.empty()) j["out_dir"] = args.out_dir;
  if (!args.data_dir.empty()) j["data_dir"] = args.data_dir;
  if (args.n_threads >= 0) j["n_threads"] = args.n_threads;
  return ExperimentConfig::from_json(j);
}

void finish(const Report& r, const ExperimentConfig& cfg) {
  chaoslearn::write_report_files(r, cfg.out_dir);
  std::printf("%s\n", r.experiment.c_str());
  if (r.results.contains("metric_kind")) {
    std::printf("  baseline %-9s  %.6f\n",
                r.results.at("metric_kind").get<std::string>().c_str(),
                r.results.at("baseline_metric").get<double>());
    std::printf("  best iteration    %d\n",
                r.results.at("best_iteration").get<int>());
    std::printf("  best %-13s %.6f\n",
                r.results.at("metric_kind").get<std::string>().c_str(),
                r.results.at("best_metric").get<double>());
  }
  if (r.results.contains("mean_accuracy"))
    std::printf("  accuracy over splits  %.4f +/- %.4f\n",
                r.results.at("mean_accuracy").get<double>(),
                r.results.at("std_accuracy").get<double>());
  if (r.results.contains("pearson_r_chaotic"))
    std::printf("  pearson r (chaotic rows)  %.4f\n",
                r.results.at("pearson_r_chaotic").get<double>());
  if (r.results.contains("best_objective"))
    std::printf("  best objective    %.6f\n",
                r.results.at("best_objective").get<double>());
  if (r.results.contains("power"))
    std::printf("  power (max bound) %.1f mW\n",
                r.results.at("power").at("total_mw").get<double>());
  std::printf("  report written to %s/report.json (%.2fs)\n",
              cfg.out_dir.c_str(), r.seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"machine learning with chaotic strange attractor transforms"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string benchmark_name;
  int n_splits = 20;
  std::string export_path = "tensor.bin";
  int export_slice = -1;

  CLI::App* benchmark =
      app.add_subcommand("benchmark", "run a named benchmark pipeline");
  benchmark
      ->add_option("name", benchmark_name,
                   "sinc | sinc-dual | abalone | iris | liver | mnist")
      ->required();
  add_common(benchmark, args);

  CLI::App* scan =
      app.add_subcommand("scan", "rho scan: LLE vs best readout accuracy");
  add_common(scan, args);

  CLI::App* optimize =
      app.add_subcommand("optimize", "search attractor parameters");
  add_common(optimize, args);

  CLI::App* circuit =
      app.add_subcommand("circuit", "behavioral analog-circuit pipeline");
  add_common(circuit, args);

  CLI::App* split_study = app.add_subcommand(
      "split-study", "accuracy mean/std over repeated dataset splits");
  split_study
      ->add_option("name", benchmark_name, "classification benchmark name")
      ->required();
  split_study->add_option("--splits", n_splits, "number of splits");
  add_common(split_study, args);

  CLI::App* transform_cmd =
      app.add_subcommand("transform", "export a trajectory tensor");
  transform_cmd->add_option("name", benchmark_name, "benchmark name")
      ->required();
  transform_cmd->add_option("--export", export_path, "tensor output path");
  transform_cmd->add_option("--slice", export_slice,
                            "also export this iteration (0-based) as CSV");
  add_common(transform_cmd, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    ExperimentConfig cfg = build_config(args, benchmark_name);
    Report report;
    if (benchmark->parsed()) {
      report = chaoslearn::run_benchmark(cfg);
    } else if (scan->parsed()) {
      report = chaoslearn::run_scan(cfg);
    } else if (optimize->parsed()) {
      report = chaoslearn::run_optimize(cfg);
    } else if (circuit->parsed()) {
      report = chaoslearn::run_circuit(cfg);
    } else if (split_study->parsed()) {
      report = chaoslearn::emit_split_study(cfg, n_splits);
    } else if (transform_cmd->parsed()) {
      chaoslearn::export_transform(cfg, export_path, export_slice);
      std::printf("tensor written to %s\n", export_path.c_str());
      return 0;
    }
    finish(report, cfg);
    return 0;
  } catch (const chaoslearn::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const chaoslearn::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 2;
  } catch (const chaoslearn::DivergenceError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
