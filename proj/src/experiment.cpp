#include "chaoslearn/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "chaoslearn/io.hpp"

namespace chaoslearn {

using nlohmann::json;

namespace {

bool is_known_benchmark(const std::string& name) {
  return name == "sinc" || name == "sinc-dual" || name == "abalone" ||
         name == "iris" || name == "liver" || name == "mnist";
}

bool is_regression_benchmark(const std::string& name) {
  return name == "sinc" || name == "sinc-dual" || name == "abalone";
}

AttractorSpec default_attractor(const std::string& benchmark) {
  if (benchmark == "sinc") return AttractorSpec::lorenz(10.0, 8.0 / 3.0, 28.0);
  if (benchmark == "abalone")
    return AttractorSpec::lorenz(10.0, 2.667, 64.917);
  // the coefficients the paper settles on for everything after sinc
  return AttractorSpec::lorenz(10.0, 8.0 / 3.0, 97.0);
}

ReadoutKind default_readout(const std::string& benchmark) {
  return is_regression_benchmark(benchmark) ? ReadoutKind::Ols
                                            : ReadoutKind::RidgeClassifier;
}

json spec_to_json(const AttractorSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind());
  json params;
  for (const auto& [name, value] : spec.params()) params[name] = value;
  j["params"] = params;
  return j;
}

AttractorSpec spec_from_json(const json& j) {
  const AttractorKind kind =
      attractor_kind_from_string(j.at("kind").get<std::string>());
  std::map<std::string, double> params;
  for (const auto& [name, value] : j.at("params").items())
    params[name] = value.get<double>();
  return AttractorSpec::make(kind, params);
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!is_known_benchmark(benchmark))
    throw ConfigError("unknown benchmark '" + benchmark +
                      "' (expected sinc, sinc-dual, abalone, iris, liver or "
                      "mnist)");
  if (!is_known_benchmark(scan_benchmark) ||
      is_regression_benchmark(scan_benchmark))
    throw ConfigError("scan benchmark must be a classification benchmark");
  if (!is_known_benchmark(circuit_benchmark))
    throw ConfigError("unknown circuit benchmark '" + circuit_benchmark + "'");
  if (benchmark == "sinc-dual" && !attractor_b)
    throw ConfigError("sinc-dual requires a second attractor");
  integration.validate();
  circuit.validate();
  if (!(split.train_fraction > 0 && split.train_fraction < 1))
    throw ConfigError("train_fraction must lie in (0, 1)");
  if (sinc_n < 2) throw ConfigError("sinc_n must be >= 2");
  if (pca_dim < 1) throw ConfigError("pca_dim must be >= 1");
  if (optimize.budget < 1) throw ConfigError("optimize budget must be >= 1");
  if (optimize.target != "sinc-rho" && optimize.target != "sinc-dual" &&
      optimize.target != "abalone")
    throw ConfigError("unknown optimize target '" + optimize.target + "'");
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.benchmark = j.value("benchmark", cfg.benchmark);
  if (!is_known_benchmark(cfg.benchmark))
    throw ConfigError("unknown benchmark '" + cfg.benchmark + "'");

  const std::string mode = j.value("mode", "paper");
  if (mode == "paper")
    cfg.mode = EvalMode::Paper;
  else if (mode == "honest")
    cfg.mode = EvalMode::Honest;
  else
    throw ConfigError("mode must be 'paper' or 'honest'");

  cfg.seed = j.value("seed", cfg.seed);
  cfg.data_seed = j.value("data_seed", cfg.data_seed);
  cfg.data_dir = j.value("data_dir", cfg.data_dir);
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  cfg.n_threads = j.value("n_threads", cfg.n_threads);

  if (j.contains("dataset")) {
    const json& d = j.at("dataset");
    cfg.dataset_path = d.value("path", cfg.dataset_path);
    cfg.sinc_n = d.value("sinc_n", cfg.sinc_n);
    cfg.abalone_one_hot_sex =
        d.value("abalone_one_hot_sex", cfg.abalone_one_hot_sex);
    cfg.hcv_drop_suspect = d.value("hcv_drop_suspect", cfg.hcv_drop_suspect);
    cfg.smote_k = d.value("smote_k", cfg.smote_k);
    cfg.mnist_embedding = d.value("mnist_embedding", cfg.mnist_embedding);
    cfg.pca_dim = d.value("pca_dim", cfg.pca_dim);
  }

  cfg.attractor = j.contains("attractor") ? spec_from_json(j.at("attractor"))
                                          : default_attractor(cfg.benchmark);
  if (j.contains("attractor_b") && !j.at("attractor_b").is_null())
    cfg.attractor_b = spec_from_json(j.at("attractor_b"));
  else if (cfg.benchmark == "sinc-dual")
    cfg.attractor_b = AttractorSpec::lorenz(10.0, 8.0 / 3.0, 97.0);

  if (j.contains("integration")) {
    cfg.integration.dt = j.at("integration").value("dt", cfg.integration.dt);
    cfg.integration.n_steps =
        j.at("integration").value("n_steps", cfg.integration.n_steps);
  }
  cfg.streaming = j.value("streaming", cfg.benchmark == "mnist");

  cfg.split.train_fraction = cfg.benchmark == "iris" ? 0.7 : 0.8;
  if (j.contains("split")) {
    cfg.split.train_fraction =
        j.at("split").value("train_fraction", cfg.split.train_fraction);
    cfg.split.seed = j.at("split").value("seed", cfg.seed);
  } else {
    cfg.split.seed = cfg.seed;
  }

  cfg.readout.kind = default_readout(cfg.benchmark);
  cfg.readout.lda_stage = cfg.benchmark == "iris";
  if (j.contains("readout")) {
    const json& r = j.at("readout");
    if (r.contains("kind"))
      cfg.readout.kind = readout_kind_from_string(r.at("kind").get<std::string>());
    cfg.readout.lambda = r.value("lambda", cfg.readout.lambda);
    cfg.readout.svm_cost = r.value("svm_cost", cfg.readout.svm_cost);
    cfg.readout.svm_max_epochs =
        r.value("svm_max_epochs", cfg.readout.svm_max_epochs);
    cfg.readout.knn_k = r.value("knn_k", cfg.readout.knn_k);
    cfg.readout.lda_stage = r.value("lda_stage", cfg.readout.lda_stage);
    cfg.readout.lda_components =
        r.value("lda_components", cfg.readout.lda_components);
    cfg.readout.seed = r.value("seed", cfg.readout.seed);
  }

  if (j.contains("scan")) {
    const json& s = j.at("scan");
    cfg.scan_benchmark = s.value("benchmark", cfg.scan_benchmark);
    const double lo = s.value("rho_min", 1.0);
    const double hi = s.value("rho_max", 100.0);
    const double step = s.value("rho_step", 1.0);
    if (!(step > 0) || !(hi >= lo)) throw ConfigError("invalid scan grid");
    cfg.scan.rho_grid.clear();
    for (double r = lo; r <= hi + 1e-12; r += step) cfg.scan.rho_grid.push_back(r);
    cfg.scan.sigma = s.value("sigma", cfg.scan.sigma);
    cfg.scan.beta = s.value("beta", cfg.scan.beta);
    cfg.scan.series_len = s.value("series_len", cfg.scan.series_len);
    cfg.scan.series_transient =
        s.value("series_transient", cfg.scan.series_transient);
    cfg.scan.rosenstein.fit_lo = s.value("fit_lo", cfg.scan.rosenstein.fit_lo);
    cfg.scan.rosenstein.fit_hi = s.value("fit_hi", cfg.scan.rosenstein.fit_hi);
  }
  cfg.scan.integration = cfg.integration;

  if (j.contains("optimize")) {
    const json& o = j.at("optimize");
    cfg.optimize.target = o.value("target", cfg.optimize.target);
    cfg.optimize.budget = o.value("budget", cfg.optimize.budget);
    if (o.contains("strategy"))
      cfg.optimize.strategy =
          search_strategy_from_string(o.at("strategy").get<std::string>());
    cfg.optimize.seed = o.value("seed", cfg.optimize.seed);
  }

  if (j.contains("circuit")) {
    const json& c = j.at("circuit");
    cfg.circuit.r4 = c.value("r4", cfg.circuit.r4);
    cfg.circuit.r5 = c.value("r5", cfg.circuit.r5);
    cfg.circuit.r8 = c.value("r8", cfg.circuit.r8);
    cfg.circuit.r9 = c.value("r9", cfg.circuit.r9);
    cfg.circuit.sigma = c.value("sigma", cfg.circuit.sigma);
    cfg.circuit.dt = c.value("dt", cfg.circuit.dt);
    cfg.circuit.n_steps = c.value("n_steps", cfg.circuit.n_steps);
    cfg.circuit.tau_per_step = c.value("tau_per_step", cfg.circuit.tau_per_step);
    cfg.circuit.voltage_scale =
        c.value("voltage_scale", cfg.circuit.voltage_scale);
    cfg.circuit.n_multipliers = c.value("n_multipliers", cfg.circuit.n_multipliers);
    cfg.circuit.n_opamps = c.value("n_opamps", cfg.circuit.n_opamps);
    cfg.circuit_benchmark = c.value("benchmark", cfg.circuit_benchmark);
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return from_json(j);
}

json ExperimentConfig::to_json() const {
  json j;
  j["benchmark"] = benchmark;
  j["mode"] = mode == EvalMode::Paper ? "paper" : "honest";
  j["seed"] = seed;
  j["data_seed"] = data_seed;
  j["data_dir"] = data_dir;
  j["out_dir"] = out_dir;
  j["n_threads"] = n_threads;
  j["dataset"] = {{"path", dataset_path},
                  {"sinc_n", sinc_n},
                  {"abalone_one_hot_sex", abalone_one_hot_sex},
                  {"hcv_drop_suspect", hcv_drop_suspect},
                  {"smote_k", smote_k},
                  {"mnist_embedding", mnist_embedding},
                  {"pca_dim", pca_dim}};
  j["attractor"] = spec_to_json(attractor);
  j["attractor_b"] = attractor_b ? spec_to_json(*attractor_b) : json();
  j["integration"] = {{"dt", integration.dt}, {"n_steps", integration.n_steps}};
  j["streaming"] = streaming;
  j["split"] = {{"train_fraction", split.train_fraction}, {"seed", split.seed}};
  j["readout"] = {{"kind", to_string(readout.kind)},
                  {"lambda", readout.lambda},
                  {"svm_cost", readout.svm_cost},
                  {"svm_max_epochs", readout.svm_max_epochs},
                  {"knn_k", readout.knn_k},
                  {"lda_stage", readout.lda_stage},
                  {"lda_components", readout.lda_components},
                  {"seed", readout.seed}};
  j["scan"] = {{"benchmark", scan_benchmark},
               {"rho_min", scan.rho_grid.empty() ? 1.0 : scan.rho_grid.front()},
               {"rho_max", scan.rho_grid.empty() ? 100.0 : scan.rho_grid.back()},
               {"rho_step",
                scan.rho_grid.size() > 1 ? scan.rho_grid[1] - scan.rho_grid[0] : 1.0},
               {"sigma", scan.sigma},
               {"beta", scan.beta},
               {"series_len", scan.series_len},
               {"series_transient", scan.series_transient},
               {"fit_lo", scan.rosenstein.fit_lo},
               {"fit_hi", scan.rosenstein.fit_hi}};
  j["optimize"] = {{"target", optimize.target},
                   {"budget", optimize.budget},
                   {"strategy", to_string(optimize.strategy)},
                   {"seed", optimize.seed}};
  j["circuit"] = {{"r4", circuit.r4},
                  {"r5", circuit.r5},
                  {"r8", circuit.r8},
                  {"r9", circuit.r9},
                  {"sigma", circuit.sigma},
                  {"dt", circuit.dt},
                  {"n_steps", circuit.n_steps},
                  {"tau_per_step", circuit.tau_per_step},
                  {"voltage_scale", circuit.voltage_scale},
                  {"n_multipliers", circuit.n_multipliers},
                  {"n_opamps", circuit.n_opamps},
                  {"benchmark", circuit_benchmark}};
  return j;
}

json Report::to_json() const {
  json j;
  j["experiment"] = experiment;
  j["config"] = config;
  j["results"] = results;
  j["timing"] = {{"seconds", seconds}};
  return j;
}

// ---------------------------------------------------------------------------
// dataset preparation

namespace {

std::string default_path(const ExperimentConfig& cfg, const std::string& name) {
  if (!cfg.dataset_path.empty()) return cfg.dataset_path;
  return cfg.data_dir + "/" + name;
}

void require_file(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw DataError("dataset file '" + path +
                    "' not found; supply it (see tools/fetch_datasets.py) or "
                    "point dataset.path at it");
}

Dataset prepare_for(const ExperimentConfig& cfg, const std::string& benchmark) {
  if (benchmark == "sinc" || benchmark == "sinc-dual") {
    // synthetic and intentionally left unnormalized
    return generate_sinc(cfg.sinc_n, cfg.data_seed);
  }

  if (benchmark == "abalone") {
    const std::string path = default_path(cfg, "abalone.data");
    require_file(path);
    Dataset ds = load_csv(path, abalone_schema(cfg.abalone_one_hot_sex));
    ds.y = normalize_target_01(ds.y);
    ds.X = zscore_apply(zscore_fit(ds.X), ds.X);
    return ds;
  }

  if (benchmark == "iris") {
    const std::string path = default_path(cfg, "iris.csv");
    require_file(path);
    Dataset ds = load_csv(path, iris_schema());
    ds.X = zscore_apply(zscore_fit(ds.X), ds.X);
    return ds;
  }

  if (benchmark == "liver") {
    const std::string path = default_path(cfg, "hcvdat0.csv");
    require_file(path);
    Dataset ds = load_csv(path, hcv_schema(cfg.hcv_drop_suspect));
    ds.X = zscore_apply(zscore_fit(ds.X), ds.X);
    return smote_balance(ds, cfg.smote_k, cfg.data_seed);
  }

  if (benchmark == "mnist") {
    const std::string train_images = cfg.data_dir + "/train-images-idx3-ubyte";
    const std::string train_labels = cfg.data_dir + "/train-labels-idx1-ubyte";
    const std::string test_images = cfg.data_dir + "/t10k-images-idx3-ubyte";
    const std::string test_labels = cfg.data_dir + "/t10k-labels-idx1-ubyte";
    require_file(train_images);
    require_file(train_labels);
    require_file(test_images);
    require_file(test_labels);

    Dataset train = load_mnist_idx(train_images, train_labels);
    Dataset test = load_mnist_idx(test_images, test_labels);
    Dataset all;
    all.task = Task::Classification;
    all.class_names = train.class_names;
    all.X.resize(train.n_samples() + test.n_samples(), train.n_vars());
    all.X.topRows(train.n_samples()) = train.X;
    all.X.bottomRows(test.n_samples()) = test.X;
    all.y.resize(train.n_samples() + test.n_samples());
    all.y.head(train.n_samples()) = train.y;
    all.y.tail(test.n_samples()) = test.y;

    Matrix reduced;
    if (!cfg.mnist_embedding.empty()) {
      reduced = import_embedding(cfg.mnist_embedding, all.n_samples());
    } else {
      reduced = pca_reduce(all.X, cfg.pca_dim).second;
    }
    all.X = zscore_apply(zscore_fit(reduced), reduced);
    return all;
  }

  throw ConfigError("unknown benchmark '" + benchmark + "'");
}

}  // namespace

PreparedData prepare_benchmark(const ExperimentConfig& cfg) {
  cfg.validate();
  PreparedData out;
  out.ds = prepare_for(cfg, cfg.benchmark);
  out.split = split_indices(out.ds.n_samples(), cfg.split);
  return out;
}

// ---------------------------------------------------------------------------
// runners

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

json confusion_to_json(const ConfusionMatrix& cm) {
  json counts = json::array();
  for (Index i = 0; i < cm.counts.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < cm.counts.cols(); ++j) row.push_back(cm.counts(i, j));
    counts.push_back(std::move(row));
  }
  json normalized = json::array();
  for (Index i = 0; i < cm.normalized.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < cm.normalized.cols(); ++j)
      row.push_back(cm.normalized(i, j));
    normalized.push_back(std::move(row));
  }
  return {{"counts", counts},
          {"normalized", normalized},
          {"empty_rows", cm.empty_rows}};
}

std::vector<AttractorSpec> transformer_specs(const ExperimentConfig& cfg) {
  std::vector<AttractorSpec> specs{cfg.attractor};
  if (cfg.benchmark == "sinc-dual" && cfg.attractor_b)
    specs.push_back(*cfg.attractor_b);
  return specs;
}

// features at a single iteration (1-based) for the given transformer set
Matrix features_at_iteration(const Matrix& X,
                             const std::vector<AttractorSpec>& specs,
                             const IntegrationConfig& cfg, int iteration,
                             int n_threads) {
  IntegrationConfig upto = cfg;
  upto.n_steps = iteration;
  Matrix out;
  for_each_iteration(
      X, specs, upto,
      [&](int k, const Matrix& f) {
        if (k == iteration) out = f;
        return true;
      },
      n_threads);
  return out;
}

}  // namespace

Report run_benchmark(const ExperimentConfig& cfg) {
  Timer timer;
  const PreparedData data = prepare_benchmark(cfg);
  const std::vector<AttractorSpec> specs = transformer_specs(cfg);

  // pre-transform baseline with the same readout and split
  const double baseline =
      evaluate_readout(data.ds.X, data.ds, data.split, cfg.readout);

  SweepResult sweep;
  if (cfg.streaming) {
    sweep = sweep_streaming(data.ds.X, specs, cfg.integration, data.ds,
                            data.split, cfg.readout, cfg.mode, cfg.n_threads);
  } else if (specs.size() == 1) {
    const TrajectoryTensor t =
        transform(data.ds.X, specs[0], cfg.integration, cfg.n_threads);
    sweep = iteration_sweep(t, data.ds, data.split, cfg.readout, cfg.mode);
  } else {
    const TrajectoryTensor ta =
        transform(data.ds.X, specs[0], cfg.integration, cfg.n_threads);
    const TrajectoryTensor tb =
        transform(data.ds.X, specs[1], cfg.integration, cfg.n_threads);
    sweep = sweep_over_slices(
        cfg.integration.n_steps,
        [&](int k) {
          Matrix f(ta.n_samples(), 6 * ta.n_vars());
          f.leftCols(3 * ta.n_vars()) = ta.slice_matrix(k);
          f.rightCols(3 * ta.n_vars()) = tb.slice_matrix(k);
          return f;
        },
        data.ds, data.split, cfg.readout, cfg.mode);
  }

  Report r;
  r.experiment = "benchmark:" + cfg.benchmark;
  r.config = cfg.to_json();
  r.results["metric_kind"] =
      sweep.metric == MetricKind::RMSE ? "rmse" : "accuracy";
  r.results["baseline_metric"] = baseline;
  r.results["best_iteration"] = sweep.best_iteration;
  r.results["best_metric"] = sweep.best_metric;
  r.results["curve"] = vector_to_json(sweep.metric_curve);
  r.results["n_samples"] = data.ds.n_samples();
  r.results["n_vars"] = data.ds.n_vars();
  r.results["n_train"] = data.split.train.size();
  r.results["n_test"] = data.split.test.size();

  if (data.ds.task == Task::Classification) {
    const Matrix best_features =
        features_at_iteration(data.ds.X, specs, cfg.integration,
                              sweep.best_iteration, cfg.n_threads);
    std::vector<int> pred;
    evaluate_readout(best_features, data.ds, data.split, cfg.readout, &pred);
    std::vector<int> truth(data.split.test.size());
    for (std::size_t i = 0; i < data.split.test.size(); ++i)
      truth[i] = data.ds.label(data.split.test[i]);
    r.results["confusion"] =
        confusion_to_json(confusion(pred, truth, data.ds.n_classes()));
    r.results["class_names"] = data.ds.class_names;

    std::vector<int> base_pred;
    evaluate_readout(data.ds.X, data.ds, data.split, cfg.readout, &base_pred);
    r.results["baseline_confusion"] =
        confusion_to_json(confusion(base_pred, truth, data.ds.n_classes()));
  }

  r.seconds = timer.seconds();
  return r;
}

Report run_scan(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentConfig data_cfg = cfg;
  data_cfg.benchmark = cfg.scan_benchmark;
  const PreparedData data = prepare_benchmark(data_cfg);

  ReadoutConfig readout = cfg.readout;
  if (readout.kind == ReadoutKind::Ols || readout.kind == ReadoutKind::Ridge)
    readout.kind = ReadoutKind::LinearSvm;
  readout.lda_stage = false;

  const std::vector<ScanRow> rows =
      lle_accuracy_scan(data.ds, data.split, readout, cfg.scan);

  Vector lle(static_cast<Index>(rows.size()));
  Vector acc(static_cast<Index>(rows.size()));
  json table = json::array();
  std::vector<double> lle_chaotic, acc_chaotic;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    lle[static_cast<Index>(i)] = rows[i].lle;
    acc[static_cast<Index>(i)] = rows[i].best_accuracy;
    table.push_back({{"rho", rows[i].rho},
                     {"lle", rows[i].lle},
                     {"best_accuracy", rows[i].best_accuracy},
                     {"best_iteration", rows[i].best_iteration}});
    if (rows[i].lle > 0) {
      lle_chaotic.push_back(rows[i].lle);
      acc_chaotic.push_back(rows[i].best_accuracy);
    }
  }

  Report r;
  r.experiment = "scan:" + cfg.scan_benchmark;
  r.config = cfg.to_json();
  r.results["rows"] = table;
  r.results["readout"] = to_string(readout.kind);
  if (rows.size() >= 3) r.results["pearson_r_all"] = pearson_r(lle, acc);
  if (lle_chaotic.size() >= 3) {
    Vector lc = Eigen::Map<Vector>(lle_chaotic.data(),
                                   static_cast<Index>(lle_chaotic.size()));
    Vector ac = Eigen::Map<Vector>(acc_chaotic.data(),
                                   static_cast<Index>(acc_chaotic.size()));
    r.results["pearson_r_chaotic"] = pearson_r(lc, ac);
  }
  r.seconds = timer.seconds();
  return r;
}

Report run_optimize(const ExperimentConfig& cfg) {
  Timer timer;
  cfg.validate();

  Report r;
  r.experiment = "optimize:" + cfg.optimize.target;
  r.config = cfg.to_json();

  const auto sweep_rmse = [&](const std::vector<AttractorSpec>& specs,
                              const PreparedData& data) {
    return sweep_streaming(data.ds.X, specs, cfg.integration, data.ds,
                           data.split, cfg.readout, EvalMode::Paper,
                           cfg.n_threads)
        .best_metric;
  };

  OptResult opt;
  std::vector<std::string> param_names;
  if (cfg.optimize.target == "sinc-rho") {
    ExperimentConfig dc = cfg;
    dc.benchmark = "sinc";
    dc.readout.kind = ReadoutKind::Ols;
    const PreparedData data = prepare_benchmark(dc);
    param_names = {"rho"};
    SearchSpace space;
    space.params = {{"rho", 1.0, 100.0}};
    opt = optimize(
        [&](const Vector& x) {
          return sweep_rmse({AttractorSpec::lorenz(10.0, 8.0 / 3.0, x[0])},
                            data);
        },
        space, cfg.optimize.budget, cfg.optimize.strategy, cfg.optimize.seed);
  } else if (cfg.optimize.target == "sinc-dual") {
    ExperimentConfig dc = cfg;
    dc.benchmark = "sinc";
    dc.readout.kind = ReadoutKind::Ols;
    const PreparedData data = prepare_benchmark(dc);
    param_names = {"rho1", "rho2"};
    opt = optimize_dual_rho(
        [&](double r1, double r2) {
          return sweep_rmse({AttractorSpec::lorenz(10.0, 8.0 / 3.0, r1),
                             AttractorSpec::lorenz(10.0, 8.0 / 3.0, r2)},
                            data);
        },
        {"rho", 1.0, 100.0}, cfg.optimize.budget, cfg.optimize.seed);
  } else {  // abalone over (beta, rho), sigma = 10 fixed
    ExperimentConfig dc = cfg;
    dc.benchmark = "abalone";
    dc.readout.kind = ReadoutKind::Ols;
    const PreparedData data = prepare_benchmark(dc);
    param_names = {"beta", "rho"};
    SearchSpace space;
    space.params = {{"beta", 1.0, 4.0}, {"rho", 1.0, 100.0}};
    opt = optimize(
        [&](const Vector& x) {
          return sweep_rmse({AttractorSpec::lorenz(10.0, x[0], x[1])}, data);
        },
        space, cfg.optimize.budget, cfg.optimize.strategy, cfg.optimize.seed);
  }

  r.results["param_names"] = param_names;
  r.results["best_params"] = vector_to_json(opt.best);
  r.results["best_objective"] = opt.best_value;
  json log = json::array();
  for (const auto& e : opt.log)
    log.push_back({{"params", vector_to_json(e.x)}, {"objective", e.value}});
  r.results["log"] = log;
  r.seconds = timer.seconds();
  return r;
}

Report run_circuit(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentConfig data_cfg = cfg;
  data_cfg.benchmark = cfg.circuit_benchmark;
  const PreparedData data = prepare_benchmark(data_cfg);

  const LorenzParams params = resistors_to_params(cfg.circuit);
  const AttractorSpec spec =
      AttractorSpec::lorenz(cfg.circuit.sigma, params.beta, params.rho);

  // behavioral circuit trajectory tensor, in volts
  TrajectoryTensor t(data.ds.n_samples(), data.ds.n_vars(), cfg.circuit.n_steps);
  t.dt = cfg.circuit.tau_per_step;
  t.specs = {spec};
  for (Index i = 0; i < data.ds.n_samples(); ++i)
    for (Index j = 0; j < data.ds.n_vars(); ++j) {
      const Vec3 init =
          cfg.circuit.voltage_scale * encode_initial(data.ds.X(i, j));
      const std::vector<Vec3> traj = simulate_circuit(cfg.circuit, init);
      for (std::size_t k = 0; k < traj.size(); ++k)
        t.set(i, j, static_cast<Index>(k), traj[k]);
    }

  const double baseline =
      evaluate_readout(data.ds.X, data.ds, data.split, cfg.readout);
  const SweepResult sweep =
      iteration_sweep(t, data.ds, data.split, cfg.readout, cfg.mode);

  Report r;
  r.experiment = "circuit:" + cfg.circuit_benchmark;
  r.config = cfg.to_json();
  r.results["metric_kind"] =
      sweep.metric == MetricKind::RMSE ? "rmse" : "accuracy";
  r.results["baseline_metric"] = baseline;
  r.results["best_iteration"] = sweep.best_iteration;
  r.results["best_metric"] = sweep.best_metric;
  r.results["curve"] = vector_to_json(sweep.metric_curve);
  r.results["rho"] = params.rho;
  r.results["beta"] = params.beta;

  const PowerReport power = power_estimate(cfg.circuit);
  r.results["power"] = {{"mw_per_multiplier", power.mw_per_multiplier},
                        {"mw_per_opamp", power.mw_per_opamp},
                        {"n_multipliers", power.n_multipliers},
                        {"n_opamps", power.n_opamps},
                        {"multipliers_mw", power.multipliers_mw},
                        {"opamps_mw", power.opamps_mw},
                        {"total_mw", power.total_mw},
                        {"note", power.note}};

  if (data.ds.task == Task::Classification) {
    std::vector<int> pred;
    evaluate_readout(t.slice_matrix(sweep.best_iteration - 1), data.ds,
                     data.split, cfg.readout, &pred);
    std::vector<int> truth(data.split.test.size());
    for (std::size_t i = 0; i < data.split.test.size(); ++i)
      truth[i] = data.ds.label(data.split.test[i]);
    r.results["confusion"] =
        confusion_to_json(confusion(pred, truth, data.ds.n_classes()));
  }

  r.seconds = timer.seconds();
  return r;
}

Report emit_split_study(const ExperimentConfig& cfg, int n_splits) {
  Timer timer;
  if (n_splits < 1) throw ConfigError("split study needs n_splits >= 1");
  const PreparedData seed_data = prepare_benchmark(cfg);
  if (seed_data.ds.task != Task::Classification)
    throw ConfigError("split study requires a classification benchmark");

  const std::vector<AttractorSpec> specs = transformer_specs(cfg);
  const TrajectoryTensor t =
      transform(seed_data.ds.X, specs[0], cfg.integration, cfg.n_threads);

  // best iteration fixed on the canonical (seed-0) split, then the
  // pipeline is re-evaluated on fresh splits at that iteration
  const SweepResult sweep =
      iteration_sweep(t, seed_data.ds, seed_data.split, cfg.readout, cfg.mode);
  const Matrix features = t.slice_matrix(sweep.best_iteration - 1);

  std::vector<double> accuracies;
  json per_seed = json::array();
  for (int s = 0; s < n_splits; ++s) {
    SplitConfig sc = cfg.split;
    sc.seed = static_cast<std::uint64_t>(s);
    const SplitIndices split = split_indices(seed_data.ds.n_samples(), sc);
    const double acc =
        evaluate_readout(features, seed_data.ds, split, cfg.readout);
    accuracies.push_back(acc);
    per_seed.push_back({{"seed", s}, {"accuracy", acc}});
  }

  double mean = 0.0;
  for (double a : accuracies) mean += a;
  mean /= static_cast<double>(accuracies.size());
  double var = 0.0;
  for (double a : accuracies) var += (a - mean) * (a - mean);
  const double std_dev =
      accuracies.size() > 1
          ? std::sqrt(var / static_cast<double>(accuracies.size() - 1))
          : 0.0;

  Report r;
  r.experiment = "split-study:" + cfg.benchmark;
  r.config = cfg.to_json();
  r.results["n_splits"] = n_splits;
  r.results["best_iteration"] = sweep.best_iteration;
  r.results["mean_accuracy"] = mean;
  r.results["std_accuracy"] = std_dev;
  r.results["per_seed"] = per_seed;
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------

void write_report_files(const Report& r, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);

  {
    std::ofstream out(out_dir + "/report.json");
    if (!out) throw DataError("cannot write '" + out_dir + "/report.json'");
    out << r.to_json().dump(2) << "\n";
  }

  if (r.results.contains("curve")) {
    std::ofstream out(out_dir + "/curve.csv");
    out << "iteration,metric\n";
    out.precision(17);
    const auto& curve = r.results.at("curve");
    for (std::size_t k = 0; k < curve.size(); ++k)
      out << (k + 1) << "," << curve[k].get<double>() << "\n";
  }

  if (r.results.contains("confusion")) {
    std::ofstream out(out_dir + "/confusion.csv");
    out.precision(17);
    const auto& normalized = r.results.at("confusion").at("normalized");
    for (const auto& row : normalized) {
      for (std::size_t j = 0; j < row.size(); ++j)
        out << (j ? "," : "") << row[j].get<double>();
      out << "\n";
    }
  }

  if (r.results.contains("rows")) {
    std::ofstream out(out_dir + "/scan.csv");
    out << "rho,lle,best_accuracy,best_iteration\n";
    out.precision(17);
    for (const auto& row : r.results.at("rows"))
      out << row.at("rho").get<double>() << "," << row.at("lle").get<double>()
          << "," << row.at("best_accuracy").get<double>() << ","
          << row.at("best_iteration").get<int>() << "\n";
  }

  if (r.results.contains("log")) {
    std::ofstream out(out_dir + "/optimize_log.csv");
    const auto& names = r.results.at("param_names");
    for (std::size_t i = 0; i < names.size(); ++i)
      out << (i ? "," : "") << names[i].get<std::string>();
    out << ",objective\n";
    out.precision(17);
    for (const auto& e : r.results.at("log")) {
      for (std::size_t i = 0; i < e.at("params").size(); ++i)
        out << (i ? "," : "") << e.at("params")[i].get<double>();
      out << "," << e.at("objective").get<double>() << "\n";
    }
  }
}

void export_transform(const ExperimentConfig& cfg, const std::string& path,
                      int slice_k0) {
  const PreparedData data = prepare_benchmark(cfg);
  const TrajectoryTensor t =
      transform(data.ds.X, cfg.attractor, cfg.integration, cfg.n_threads);
  save_tensor(path, t);
  if (slice_k0 >= 0) {
    const FeatureMatrix f = slice_iteration(t, slice_k0);
    write_matrix_csv(path + ".iter" + std::to_string(f.iteration) + ".csv",
                     f.values);
  }
}

}  // namespace chaoslearn
