#include "chaoslearn/readout.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "chaoslearn/rng.hpp"

namespace chaoslearn {

namespace {

// shared core: centered multi-output ridge
void ridge_solve(const Matrix& X, const Matrix& Y, double lambda,
                 Matrix& weights, Vector& intercept) {
  if (X.rows() != Y.rows()) throw DataError("feature/target row mismatch");
  if (X.rows() < 1) throw DataError("empty training set");
  if (lambda < 0) throw ConfigError("lambda must be >= 0");

  const Eigen::RowVectorXd xmean = X.colwise().mean();
  const Eigen::RowVectorXd ymean = Y.colwise().mean();
  const Matrix Xc = X.rowwise() - xmean;
  const Matrix Yc = Y.rowwise() - ymean;

  Matrix A = Xc.transpose() * Xc;
  A.diagonal().array() += lambda;
  Eigen::LDLT<Matrix> ldlt(A);
  if (lambda == 0.0) {
    const Vector d = ldlt.vectorD();
    const double dmax = d.cwiseAbs().maxCoeff();
    if (d.minCoeff() <= 1e-10 * std::max(dmax, 1.0))
      throw Error("singular normal equations at lambda = 0; set lambda > 0");
  }
  weights = ldlt.solve(Xc.transpose() * Yc);
  intercept = (ymean - xmean * weights).transpose();
}

}  // namespace

RidgeModel ridge_fit(const Matrix& X, const Vector& y, double lambda) {
  RidgeModel m;
  m.lambda = lambda;
  ridge_solve(X, y, lambda, m.weights, m.intercept);
  return m;
}

Vector ridge_predict(const RidgeModel& m, const Matrix& X) {
  if (X.cols() != m.weights.rows())
    throw DataError("model fitted on a different feature count");
  return (X * m.weights).col(0).array() + m.intercept[0];
}

RidgeModel ols_fit(const Matrix& X, const Vector& y) {
  if (X.rows() != y.size()) throw DataError("feature/target row mismatch");
  RidgeModel m;
  m.lambda = 0.0;
  const Eigen::RowVectorXd xmean = X.colwise().mean();
  const double ymean = y.mean();
  const Matrix Xc = X.rowwise() - xmean;
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(Xc);
  m.weights = cod.solve(Matrix(y.array() - ymean));
  m.intercept.resize(1);
  m.intercept[0] = ymean - (xmean * m.weights)(0, 0);
  return m;
}

RidgeModel ridge_classify_fit(const Matrix& X, const std::vector<int>& labels,
                              int n_classes, double lambda) {
  if (n_classes < 2) throw DataError("classification needs at least 2 classes");
  if (X.rows() != static_cast<Index>(labels.size()))
    throw DataError("feature/label row mismatch");

  const Index outputs = n_classes == 2 ? 1 : n_classes;
  Matrix Y(X.rows(), outputs);
  for (Index i = 0; i < X.rows(); ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    if (n_classes == 2)
      Y(i, 0) = l == 1 ? 1.0 : -1.0;
    else
      for (Index c = 0; c < outputs; ++c) Y(i, c) = l == c ? 1.0 : -1.0;
  }

  RidgeModel m;
  m.lambda = lambda;
  m.classifier = true;
  m.n_classes = n_classes;
  ridge_solve(X, Y, lambda, m.weights, m.intercept);
  return m;
}

std::vector<int> ridge_classify_predict(const RidgeModel& m, const Matrix& X) {
  if (!m.classifier) throw Error("model is not a classifier");
  const Matrix scores = (X * m.weights).rowwise() + m.intercept.transpose();
  std::vector<int> out(static_cast<std::size_t>(X.rows()));
  for (Index i = 0; i < X.rows(); ++i) {
    if (m.n_classes == 2) {
      out[static_cast<std::size_t>(i)] = scores(i, 0) > 0 ? 1 : 0;
    } else {
      int best = 0;
      for (Index c = 1; c < scores.cols(); ++c)
        if (scores(i, c) > scores(i, best)) best = static_cast<int>(c);
      out[static_cast<std::size_t>(i)] = best;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// linear SVM, dual coordinate descent

namespace {

struct BinarySvm {
  Vector w;
  double b = 0.0;
  std::vector<double> primal_curve;  // best-so-far
  bool converged = false;
};

BinarySvm svm_binary(const Matrix& X, const Vector& y, double C,
                     int max_epochs, std::uint64_t seed) {
  const Index n = X.rows();
  const Index d = X.cols();

  Vector q(n);  // ||x_i||^2 + 1 (augmented bias feature)
  for (Index i = 0; i < n; ++i) q[i] = X.row(i).squaredNorm() + 1.0;

  BinarySvm s;
  s.w = Vector::Zero(d);
  Vector alpha = Vector::Zero(n);

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  Rng rng(seed);

  double best_primal = std::numeric_limits<double>::infinity();
  Vector best_w = s.w;
  double best_b = 0.0;

  for (int epoch = 0; epoch < max_epochs; ++epoch) {
    rng.shuffle(order);
    double max_violation = 0.0;
    for (Index i : order) {
      const double yi = y[i];
      const double g = yi * (X.row(i).dot(s.w) + s.b) - 1.0;
      double pg = g;
      if (alpha[i] <= 0.0)
        pg = std::min(g, 0.0);
      else if (alpha[i] >= C)
        pg = std::max(g, 0.0);
      max_violation = std::max(max_violation, std::abs(pg));
      if (std::abs(pg) > 1e-12) {
        const double a_new =
            std::clamp(alpha[i] - g / q[i], 0.0, C);
        const double delta = a_new - alpha[i];
        if (delta != 0.0) {
          s.w += delta * yi * X.row(i).transpose();
          s.b += delta * yi;
          alpha[i] = a_new;
        }
      }
    }

    double hinge = 0.0;
    for (Index i = 0; i < n; ++i)
      hinge += std::max(0.0, 1.0 - y[i] * (X.row(i).dot(s.w) + s.b));
    const double primal = 0.5 * (s.w.squaredNorm() + s.b * s.b) + C * hinge;
    if (primal < best_primal) {
      best_primal = primal;
      best_w = s.w;
      best_b = s.b;
    }
    s.primal_curve.push_back(best_primal);

    if (max_violation < 1e-6) {
      s.converged = true;
      break;
    }
  }

  s.w = best_w;
  s.b = best_b;
  return s;
}

}  // namespace

LinearSVMModel linear_svm_fit(const Matrix& X, const std::vector<int>& labels,
                              int n_classes, double C, int max_epochs,
                              std::uint64_t seed) {
  if (n_classes < 2) throw DataError("classification needs at least 2 classes");
  if (!(C > 0)) throw ConfigError("SVM cost C must be positive");
  if (X.rows() != static_cast<Index>(labels.size()))
    throw DataError("feature/label row mismatch");

  const int n_problems = n_classes == 2 ? 1 : n_classes;
  LinearSVMModel m;
  m.C = C;
  m.n_classes = n_classes;
  m.weights.resize(X.cols(), n_problems);
  m.bias.resize(n_problems);
  m.converged = true;

  std::vector<std::vector<double>> curves;
  for (int p = 0; p < n_problems; ++p) {
    Vector y(X.rows());
    for (Index i = 0; i < X.rows(); ++i) {
      const int l = labels[static_cast<std::size_t>(i)];
      const int positive = n_classes == 2 ? 1 : p;
      y[i] = l == positive ? 1.0 : -1.0;
    }
    const BinarySvm s = svm_binary(X, y, C, max_epochs,
                                   seed ^ (0x9E3779B97F4A7C15ull * (p + 1)));
    m.weights.col(p) = s.w;
    m.bias[p] = s.b;
    m.converged = m.converged && s.converged;
    curves.push_back(s.primal_curve);
  }
  if (!m.converged) {
    static std::atomic<int> warned{0};
    const int n = ++warned;
    if (n <= 3)
      std::fprintf(stderr,
                   "warning: linear SVM reached %d epochs before convergence; "
                   "returning best iterate%s\n",
                   max_epochs,
                   n == 3 ? " (suppressing further warnings)" : "");
  }

  std::size_t longest = 0;
  for (const auto& c : curves) longest = std::max(longest, c.size());
  m.primal_curve.assign(longest, 0.0);
  for (const auto& c : curves)
    for (std::size_t e = 0; e < longest; ++e)
      m.primal_curve[e] += e < c.size() ? c[e] : c.back();

  return m;
}

std::vector<int> linear_svm_predict(const LinearSVMModel& m, const Matrix& X) {
  if (X.cols() != m.weights.rows())
    throw DataError("model fitted on a different feature count");
  const Matrix scores = (X * m.weights).rowwise() + m.bias.transpose();
  std::vector<int> out(static_cast<std::size_t>(X.rows()));
  for (Index i = 0; i < X.rows(); ++i) {
    if (m.n_classes == 2) {
      out[static_cast<std::size_t>(i)] = scores(i, 0) > 0 ? 1 : 0;
    } else {
      int best = 0;
      for (Index c = 1; c < scores.cols(); ++c)
        if (scores(i, c) > scores(i, best)) best = static_cast<int>(c);
      out[static_cast<std::size_t>(i)] = best;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<int> knn_predict(const Matrix& train_x,
                             const std::vector<int>& train_labels,
                             const Matrix& X, int k) {
  const Index n = train_x.rows();
  if (k < 1 || k > n) throw ConfigError("knn: k must lie in [1, train size]");
  if (n != static_cast<Index>(train_labels.size()))
    throw DataError("feature/label row mismatch");

  const int n_classes =
      1 + *std::max_element(train_labels.begin(), train_labels.end());
  std::vector<int> out(static_cast<std::size_t>(X.rows()));
  std::vector<std::pair<double, Index>> dist(static_cast<std::size_t>(n));
  for (Index i = 0; i < X.rows(); ++i) {
    for (Index j = 0; j < n; ++j)
      dist[static_cast<std::size_t>(j)] = {
          (train_x.row(j) - X.row(i)).squaredNorm(), j};
    std::sort(dist.begin(), dist.end());
    std::vector<int> votes(static_cast<std::size_t>(n_classes), 0);
    for (int t = 0; t < k; ++t)
      ++votes[static_cast<std::size_t>(
          train_labels[static_cast<std::size_t>(dist[static_cast<std::size_t>(t)].second)])];
    int best = 0;
    for (int c = 1; c < n_classes; ++c)
      if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)])
        best = c;
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

// ---------------------------------------------------------------------------

LDAProjection lda_fit(const Matrix& X, const std::vector<int>& labels,
                      int n_classes, int components) {
  if (n_classes < 2) throw DataError("LDA needs at least 2 classes");
  if (components < 1 || components > n_classes - 1)
    throw ConfigError("LDA components must lie in [1, n_classes - 1]");
  if (X.rows() != static_cast<Index>(labels.size()))
    throw DataError("feature/label row mismatch");

  const Index n = X.rows();
  const Index d = X.cols();

  // priors-weighted within-class covariance, total covariance split
  Matrix sw = Matrix::Zero(d, d);
  for (int c = 0; c < n_classes; ++c) {
    std::vector<Index> rows;
    for (Index i = 0; i < n; ++i)
      if (labels[static_cast<std::size_t>(i)] == c) rows.push_back(i);
    if (rows.empty()) throw DataError("LDA class without samples");
    Matrix xc(static_cast<Index>(rows.size()), d);
    for (std::size_t r = 0; r < rows.size(); ++r) xc.row(static_cast<Index>(r)) = X.row(rows[r]);
    const Eigen::RowVectorXd mu = xc.colwise().mean();
    xc.rowwise() -= mu;
    sw += xc.transpose() * xc / static_cast<double>(n);
  }
  const Eigen::RowVectorXd mean = X.colwise().mean();
  const Matrix centered = X.rowwise() - mean;
  const Matrix st = centered.transpose() * centered / static_cast<double>(n);
  const Matrix sb = st - sw;

  Eigen::LLT<Matrix> llt(sw);
  Matrix sw_reg = sw;
  if (llt.info() != Eigen::Success) {
    const double eps = 1e-6 * sw.trace() / static_cast<double>(d);
    std::fprintf(stderr,
                 "warning: singular within-class scatter; adding %.3e ridge\n",
                 eps);
    sw_reg.diagonal().array() += eps;
  }

  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(sb, sw_reg);
  if (ges.info() != Eigen::Success)
    throw Error("LDA generalized eigenproblem failed");

  LDAProjection p;
  p.projection.resize(d, components);
  p.eigenvalues.resize(components);
  for (int j = 0; j < components; ++j) {
    const Index src = d - 1 - j;  // eigenvalues ascend
    Vector v = ges.eigenvectors().col(src);
    Index imax;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0) v = -v;
    p.projection.col(j) = v;
    p.eigenvalues[j] = ges.eigenvalues()[src];
  }
  return p;
}

Matrix lda_transform(const LDAProjection& p, const Matrix& X) {
  if (X.cols() != p.projection.rows())
    throw DataError("projection fitted on a different feature count");
  return X * p.projection;
}

// ---------------------------------------------------------------------------

double rmse(const Vector& pred, const Vector& truth) {
  if (pred.size() != truth.size()) throw DataError("length mismatch");
  if (pred.size() == 0) throw DataError("empty metric input");
  return std::sqrt((pred - truth).squaredNorm() /
                   static_cast<double>(pred.size()));
}

double accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.size() != truth.size()) throw DataError("length mismatch");
  if (pred.empty()) throw DataError("empty metric input");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    if (pred[i] == truth[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

ConfusionMatrix confusion(const std::vector<int>& pred,
                          const std::vector<int>& truth, int n_classes) {
  if (pred.size() != truth.size()) throw DataError("length mismatch");
  if (pred.empty()) throw DataError("empty metric input");
  ConfusionMatrix cm;
  cm.counts = Eigen::MatrixXi::Zero(n_classes, n_classes);
  for (std::size_t i = 0; i < pred.size(); ++i)
    ++cm.counts(truth[i], pred[i]);
  cm.normalized = Matrix::Zero(n_classes, n_classes);
  for (int r = 0; r < n_classes; ++r) {
    const int support = cm.counts.row(r).sum();
    if (support == 0) {
      cm.empty_rows.push_back(r);
      continue;
    }
    cm.normalized.row(r) =
        cm.counts.row(r).cast<double>() / static_cast<double>(support);
  }
  return cm;
}

// ---------------------------------------------------------------------------

const char* to_string(ReadoutKind kind) {
  switch (kind) {
    case ReadoutKind::Ols:
      return "ols";
    case ReadoutKind::Ridge:
      return "ridge";
    case ReadoutKind::RidgeClassifier:
      return "ridge-classifier";
    case ReadoutKind::LinearSvm:
      return "linear-svm";
    case ReadoutKind::Knn:
      return "knn";
  }
  return "?";
}

ReadoutKind readout_kind_from_string(const std::string& name) {
  if (name == "ols") return ReadoutKind::Ols;
  if (name == "ridge") return ReadoutKind::Ridge;
  if (name == "ridge-classifier") return ReadoutKind::RidgeClassifier;
  if (name == "linear-svm") return ReadoutKind::LinearSvm;
  if (name == "knn") return ReadoutKind::Knn;
  throw ConfigError("unknown readout kind '" + name + "'");
}

namespace {

Matrix take_rows(const Matrix& m, const std::vector<Index>& rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

}  // namespace

double evaluate_readout(const Matrix& features, const Dataset& ds,
                        const SplitIndices& split, const ReadoutConfig& rc,
                        std::vector<int>* test_predictions) {
  if (features.rows() != ds.n_samples())
    throw DataError("feature rows do not match dataset");

  Matrix train_f = take_rows(features, split.train);
  Matrix test_f = take_rows(features, split.test);

  if (ds.task == Task::Regression) {
    Vector train_y(static_cast<Index>(split.train.size()));
    Vector test_y(static_cast<Index>(split.test.size()));
    for (std::size_t i = 0; i < split.train.size(); ++i)
      train_y[static_cast<Index>(i)] = ds.y[split.train[i]];
    for (std::size_t i = 0; i < split.test.size(); ++i)
      test_y[static_cast<Index>(i)] = ds.y[split.test[i]];

    RidgeModel m;
    switch (rc.kind) {
      case ReadoutKind::Ols:
        m = ols_fit(train_f, train_y);
        break;
      case ReadoutKind::Ridge:
        m = ridge_fit(train_f, train_y, rc.lambda);
        break;
      default:
        throw ConfigError("readout kind not usable for regression");
    }
    return rmse(ridge_predict(m, test_f), test_y);
  }

  std::vector<int> train_l(split.train.size()), test_l(split.test.size());
  for (std::size_t i = 0; i < split.train.size(); ++i)
    train_l[i] = ds.label(split.train[i]);
  for (std::size_t i = 0; i < split.test.size(); ++i)
    test_l[i] = ds.label(split.test[i]);

  if (rc.lda_stage) {
    const LDAProjection p =
        lda_fit(train_f, train_l, ds.n_classes(), rc.lda_components);
    train_f = lda_transform(p, train_f);
    test_f = lda_transform(p, test_f);
  }

  std::vector<int> pred;
  switch (rc.kind) {
    case ReadoutKind::RidgeClassifier: {
      const RidgeModel m =
          ridge_classify_fit(train_f, train_l, ds.n_classes(), rc.lambda);
      pred = ridge_classify_predict(m, test_f);
      break;
    }
    case ReadoutKind::LinearSvm: {
      const LinearSVMModel m =
          linear_svm_fit(train_f, train_l, ds.n_classes(), rc.svm_cost,
                         rc.svm_max_epochs, rc.seed);
      pred = linear_svm_predict(m, test_f);
      break;
    }
    case ReadoutKind::Knn:
      pred = knn_predict(train_f, train_l, test_f, rc.knn_k);
      break;
    default:
      throw ConfigError("readout kind not usable for classification");
  }
  if (test_predictions) *test_predictions = pred;
  return accuracy(pred, test_l);
}

namespace {

bool better(MetricKind metric, double a, double b) {
  return metric == MetricKind::RMSE ? a < b : a > b;
}

// inner validation split of the training rows for honest-mode selection
SplitIndices inner_validation_split(const SplitIndices& split,
                                    std::uint64_t seed) {
  const SplitIndices inner = split_indices(
      static_cast<Index>(split.train.size()),
      SplitConfig{0.75, seed ^ 0x5851F42D4C957F2Dull});
  SplitIndices mapped;
  for (Index i : inner.train) mapped.train.push_back(split.train[static_cast<std::size_t>(i)]);
  for (Index i : inner.test) mapped.test.push_back(split.train[static_cast<std::size_t>(i)]);
  return mapped;
}

}  // namespace

SweepResult sweep_over_slices(int n_steps,
                              const std::function<Matrix(int)>& slice_at,
                              const Dataset& ds, const SplitIndices& split,
                              const ReadoutConfig& rc, EvalMode mode) {
  if (n_steps < 1) throw ConfigError("sweep needs at least one iteration");
  SweepResult r;
  r.metric = ds.task == Task::Regression ? MetricKind::RMSE : MetricKind::Accuracy;
  r.metric_curve.resize(n_steps);

  const SplitIndices eval_split =
      mode == EvalMode::Paper ? split : inner_validation_split(split, rc.seed);

  int best_k = 0;
  for (int k = 0; k < n_steps; ++k) {
    const double m = evaluate_readout(slice_at(k), ds, eval_split, rc);
    r.metric_curve[k] = m;
    if (k == 0 || better(r.metric, m, r.metric_curve[best_k])) best_k = k;
  }
  r.best_iteration = best_k + 1;

  if (mode == EvalMode::Paper)
    r.best_metric = r.metric_curve[best_k];
  else
    r.best_metric = evaluate_readout(slice_at(best_k), ds, split, rc);
  return r;
}

SweepResult iteration_sweep(const TrajectoryTensor& t, const Dataset& ds,
                            const SplitIndices& split, const ReadoutConfig& rc,
                            EvalMode mode) {
  if (t.n_samples() != ds.n_samples())
    throw DataError("tensor and dataset are not aligned");
  return sweep_over_slices(
      static_cast<int>(t.n_steps()),
      [&t](int k) { return t.slice_matrix(k); }, ds, split, rc, mode);
}

SweepResult sweep_streaming(const Matrix& X,
                            const std::vector<AttractorSpec>& specs,
                            const IntegrationConfig& cfg, const Dataset& ds,
                            const SplitIndices& split, const ReadoutConfig& rc,
                            EvalMode mode, int n_threads) {
  SweepResult r;
  r.metric = ds.task == Task::Regression ? MetricKind::RMSE : MetricKind::Accuracy;
  r.metric_curve.resize(cfg.n_steps);

  const SplitIndices eval_split =
      mode == EvalMode::Paper ? split : inner_validation_split(split, rc.seed);

  int best_k = 0;
  for_each_iteration(
      X, specs, cfg,
      [&](int k1, const Matrix& features) {
        const double m = evaluate_readout(features, ds, eval_split, rc);
        r.metric_curve[k1 - 1] = m;
        if (k1 == 1 || better(r.metric, m, r.metric_curve[best_k])) best_k = k1 - 1;
        return true;
      },
      n_threads);
  r.best_iteration = best_k + 1;

  if (mode == EvalMode::Paper) {
    r.best_metric = r.metric_curve[best_k];
  } else {
    IntegrationConfig upto = cfg;
    upto.n_steps = best_k + 1;
    double final_metric = 0.0;
    for_each_iteration(
        X, specs, upto,
        [&](int k1, const Matrix& features) {
          if (k1 == best_k + 1)
            final_metric = evaluate_readout(features, ds, split, rc);
          return true;
        },
        n_threads);
    r.best_metric = final_metric;
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  const auto r = static_cast<Index>(j.size());
  if (r == 0) return Matrix(0, 0);
  const auto c = static_cast<Index>(j.at(0).size());
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index k = 0; k < c; ++k)
      m(i, k) = j.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>();
  return m;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vector vector_from_json(const json& j) {
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = j.at(i).get<double>();
  return v;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw DataError("'" + path + "': " + e.what());
  }
  return j;
}

}  // namespace

void save_ridge_model(const std::string& path, const RidgeModel& m,
                      const std::vector<std::string>& class_names,
                      const std::string& provenance) {
  json j;
  j["type"] = "ridge";
  j["lambda"] = m.lambda;
  j["classifier"] = m.classifier;
  j["n_classes"] = m.n_classes;
  j["weights"] = matrix_to_json(m.weights);
  j["intercept"] = vector_to_json(m.intercept);
  j["class_names"] = class_names;
  j["provenance"] = provenance;
  write_json(path, j);
}

RidgeModel load_ridge_model(const std::string& path) {
  const json j = read_json(path);
  if (j.value("type", "") != "ridge")
    throw DataError("'" + path + "': not a ridge model record");
  RidgeModel m;
  m.lambda = j.at("lambda").get<double>();
  m.classifier = j.at("classifier").get<bool>();
  m.n_classes = j.at("n_classes").get<int>();
  m.weights = matrix_from_json(j.at("weights"));
  m.intercept = vector_from_json(j.at("intercept"));
  return m;
}

void save_svm_model(const std::string& path, const LinearSVMModel& m,
                    const std::vector<std::string>& class_names,
                    const std::string& provenance) {
  json j;
  j["type"] = "linear-svm";
  j["C"] = m.C;
  j["n_classes"] = m.n_classes;
  j["weights"] = matrix_to_json(m.weights);
  j["bias"] = vector_to_json(m.bias);
  j["converged"] = m.converged;
  j["class_names"] = class_names;
  j["provenance"] = provenance;
  write_json(path, j);
}

LinearSVMModel load_svm_model(const std::string& path) {
  const json j = read_json(path);
  if (j.value("type", "") != "linear-svm")
    throw DataError("'" + path + "': not a linear-svm model record");
  LinearSVMModel m;
  m.C = j.at("C").get<double>();
  m.n_classes = j.at("n_classes").get<int>();
  m.weights = matrix_from_json(j.at("weights"));
  m.bias = vector_from_json(j.at("bias"));
  m.converged = j.at("converged").get<bool>();
  return m;
}

}  // namespace chaoslearn
