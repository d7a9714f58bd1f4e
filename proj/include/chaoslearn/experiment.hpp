#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaoslearn/attractor.hpp"
#include "chaoslearn/circuit.hpp"
#include "chaoslearn/dataset.hpp"
#include "chaoslearn/hyperopt.hpp"
#include "chaoslearn/lyapunov.hpp"
#include "chaoslearn/readout.hpp"
#include "chaoslearn/transform.hpp"

namespace chaoslearn {

struct OptimizeConfig {
  std::string target = "sinc-rho";  // sinc-rho | sinc-dual | abalone
  int budget = 60;
  SearchStrategy strategy = SearchStrategy::CoarseToFine;
  std::uint64_t seed = 0;
};

// Fully resolved experiment description. Parsing from JSON fills
// benchmark-appropriate defaults for absent keys, so the embedded config
// echo in a report is complete and reproduces the run exactly.
struct ExperimentConfig {
  std::string benchmark = "sinc";  // sinc | sinc-dual | abalone | iris | liver | mnist
  EvalMode mode = EvalMode::Paper;
  std::uint64_t seed = 0;       // split seed
  std::uint64_t data_seed = 0;  // synthetic generation / SMOTE seed
  std::string data_dir = "data";
  std::string out_dir = "out";
  int n_threads = 0;

  // dataset options
  std::string dataset_path;  // overrides the default file under data_dir
  Index sinc_n = 2048;
  bool abalone_one_hot_sex = false;
  bool hcv_drop_suspect = true;
  int smote_k = 5;
  std::string mnist_embedding;  // external embedding CSV; empty = built-in PCA
  int pca_dim = 7;

  AttractorSpec attractor = AttractorSpec::lorenz(10.0, 8.0 / 3.0, 28.0);
  std::optional<AttractorSpec> attractor_b;  // dual-transformer runs
  IntegrationConfig integration{1e-2, 100};
  bool streaming = false;

  SplitConfig split{0.8, 0};
  ReadoutConfig readout;

  ScanConfig scan;
  std::string scan_benchmark = "liver";
  OptimizeConfig optimize;
  CircuitConfig circuit;
  std::string circuit_benchmark = "iris";

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);
  nlohmann::json to_json() const;

  void validate() const;
};

struct Report {
  std::string experiment;
  nlohmann::json config;   // exact echo of the resolved config
  nlohmann::json results;  // deterministic given the config
  double seconds = 0.0;

  nlohmann::json to_json() const;
};

// dataset + preprocessing as the corresponding paper pipeline prescribes;
// also carries the split indices used by every downstream stage
struct PreparedData {
  Dataset ds;          // transform input (normalized, balanced, reduced)
  SplitIndices split;
};

PreparedData prepare_benchmark(const ExperimentConfig& cfg);

Report run_benchmark(const ExperimentConfig& cfg);
Report run_scan(const ExperimentConfig& cfg);
Report run_optimize(const ExperimentConfig& cfg);
Report run_circuit(const ExperimentConfig& cfg);
Report emit_split_study(const ExperimentConfig& cfg, int n_splits = 20);

// Writes report.json plus the CSV artifacts present in the results
// (curve.csv, confusion.csv, scan.csv, optimize_log.csv).
void write_report_files(const Report& r, const std::string& out_dir);

// Materializes the benchmark's trajectory tensor to a binary file; when
// slice_k0 >= 0 also writes that iteration as CSV next to it.
void export_transform(const ExperimentConfig& cfg, const std::string& path,
                      int slice_k0 = -1);

}  // namespace chaoslearn
