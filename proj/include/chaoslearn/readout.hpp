#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chaoslearn/attractor.hpp"
#include "chaoslearn/dataset.hpp"
#include "chaoslearn/transform.hpp"
#include "chaoslearn/types.hpp"

namespace chaoslearn {

// ---------------------------------------------------------------------------
// linear models

struct RidgeModel {
  Matrix weights;    // features x outputs
  Vector intercept;  // outputs
  double lambda = 1.0;
  bool classifier = false;
  int n_classes = 0;
};

// Normal equations on centered data, intercept unpenalized.
RidgeModel ridge_fit(const Matrix& X, const Vector& y, double lambda = 1.0);
Vector ridge_predict(const RidgeModel& m, const Matrix& X);

// Minimum-norm least squares (rank-safe plain linear regression).
RidgeModel ols_fit(const Matrix& X, const Vector& y);

// One-hot +/-1 targets per class, argmax prediction. A binary problem uses
// the sign of a single score, ties resolving to the lower class index.
RidgeModel ridge_classify_fit(const Matrix& X, const std::vector<int>& labels,
                              int n_classes, double lambda = 1.0);
std::vector<int> ridge_classify_predict(const RidgeModel& m, const Matrix& X);

struct LinearSVMModel {
  Matrix weights;  // features x n_problems (1 when binary)
  Vector bias;
  double C = 1.0;
  int n_classes = 0;
  bool converged = true;
  // best-so-far primal objective after each epoch, summed over the
  // one-vs-rest problems; non-increasing by construction
  std::vector<double> primal_curve;
};

// L2-regularized hinge loss via dual coordinate descent with a seeded
// permutation schedule; the bias enters as an augmented constant feature.
LinearSVMModel linear_svm_fit(const Matrix& X, const std::vector<int>& labels,
                              int n_classes, double C = 1.0,
                              int max_epochs = 200, std::uint64_t seed = 0);
std::vector<int> linear_svm_predict(const LinearSVMModel& m, const Matrix& X);

std::vector<int> knn_predict(const Matrix& train_x,
                             const std::vector<int>& train_labels,
                             const Matrix& X, int k = 5);

// ---------------------------------------------------------------------------
// discriminant projection

struct LDAProjection {
  Matrix projection;   // features x components
  Vector eigenvalues;  // descending
};

LDAProjection lda_fit(const Matrix& X, const std::vector<int>& labels,
                      int n_classes, int components);
Matrix lda_transform(const LDAProjection& p, const Matrix& X);

// ---------------------------------------------------------------------------
// metrics

double rmse(const Vector& pred, const Vector& truth);
double accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

struct ConfusionMatrix {
  Eigen::MatrixXi counts;  // rows = true class
  Matrix normalized;       // row-stochastic; zero-support rows all-zero
  std::vector<int> empty_rows;
};

ConfusionMatrix confusion(const std::vector<int>& pred,
                          const std::vector<int>& truth, int n_classes);

// ---------------------------------------------------------------------------
// iteration sweep

enum class ReadoutKind { Ols, Ridge, RidgeClassifier, LinearSvm, Knn };

const char* to_string(ReadoutKind kind);
ReadoutKind readout_kind_from_string(const std::string& name);

enum class MetricKind { RMSE, Accuracy };
enum class EvalMode { Paper, Honest };

struct ReadoutConfig {
  ReadoutKind kind = ReadoutKind::Ridge;
  double lambda = 1.0;
  double svm_cost = 1.0;
  int svm_max_epochs = 200;
  int knn_k = 5;
  bool lda_stage = false;
  int lda_components = 2;
  std::uint64_t seed = 0;
};

struct SweepResult {
  Vector metric_curve;     // per iteration; validation curve in honest mode
  int best_iteration = 0;  // 1-based
  double best_metric = 0.0;
  MetricKind metric = MetricKind::RMSE;
};

// Fits the configured readout on the training rows of `features` and
// returns the test metric (RMSE or accuracy by task). The optional LDA
// stage is fitted on training rows only.
double evaluate_readout(const Matrix& features, const Dataset& ds,
                        const SplitIndices& split, const ReadoutConfig& rc,
                        std::vector<int>* test_predictions = nullptr);

// Sweeps iterations k = 1..n_steps. Paper mode records the test metric per
// iteration and reports its optimum (the paper's protocol). Honest mode
// selects the iteration on an inner validation split of the training rows,
// refits on the full training set, and reports the test metric there.
SweepResult sweep_over_slices(int n_steps,
                              const std::function<Matrix(int)>& slice_at,
                              const Dataset& ds, const SplitIndices& split,
                              const ReadoutConfig& rc,
                              EvalMode mode = EvalMode::Paper);

SweepResult iteration_sweep(const TrajectoryTensor& t, const Dataset& ds,
                            const SplitIndices& split, const ReadoutConfig& rc,
                            EvalMode mode = EvalMode::Paper);

// Streaming sweep over lockstep-integrated iterations; avoids holding the
// trajectory tensor for large datasets.
SweepResult sweep_streaming(const Matrix& X,
                            const std::vector<AttractorSpec>& specs,
                            const IntegrationConfig& cfg, const Dataset& ds,
                            const SplitIndices& split, const ReadoutConfig& rc,
                            EvalMode mode = EvalMode::Paper, int n_threads = 0);

// ---------------------------------------------------------------------------
// model persistence (JSON text records)

void save_ridge_model(const std::string& path, const RidgeModel& m,
                      const std::vector<std::string>& class_names = {},
                      const std::string& provenance = "");
RidgeModel load_ridge_model(const std::string& path);

void save_svm_model(const std::string& path, const LinearSVMModel& m,
                    const std::vector<std::string>& class_names = {},
                    const std::string& provenance = "");
LinearSVMModel load_svm_model(const std::string& path);

}  // namespace chaoslearn
