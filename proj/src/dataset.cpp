#include "chaoslearn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "chaoslearn/rng.hpp"

namespace chaoslearn {

void Dataset::validate() const {
  if (X.rows() != y.size())
    throw DataError("dataset row count does not match target length");
  if (!X.allFinite() || !y.allFinite())
    throw DataError("dataset contains non-finite entries");
  if (task == Task::Classification) {
    const int nc = n_classes();
    if (nc < 1) throw DataError("classification dataset without class names");
    for (Index i = 0; i < y.size(); ++i) {
      const double v = y[i];
      if (v != std::floor(v) || v < 0 || v >= nc)
        throw DataError("class index out of range at row " + std::to_string(i));
    }
  }
}

Scaler zscore_fit(const Matrix& X) {
  if (X.rows() < 2) throw DataError("zscore_fit requires at least 2 samples");
  Scaler s;
  s.mean = X.colwise().mean();
  const Index n = X.rows();
  s.std.resize(X.cols());
  for (Index j = 0; j < X.cols(); ++j) {
    const double ss = (X.col(j).array() - s.mean[j]).square().sum();
    s.std[j] = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(s.std[j] > 0))
      throw DataError("zero variance column " + std::to_string(j));
  }
  return s;
}

Matrix zscore_apply(const Scaler& s, const Matrix& X) {
  if (X.cols() != s.mean.size())
    throw DataError("scaler fitted on a different column count");
  return (X.rowwise() - s.mean.transpose()).array().rowwise() /
         s.std.transpose().array();
}

Vector normalize_target_01(const Vector& y) {
  const double lo = y.minCoeff(), hi = y.maxCoeff();
  if (!(hi > lo)) throw DataError("constant target cannot be normalized");
  return (y.array() - lo) / (hi - lo);
}

SplitIndices split_indices(Index n, const SplitConfig& cfg) {
  if (n < 1) throw DataError("cannot split an empty dataset");
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0))
    throw ConfigError("train_fraction must lie in (0, 1)");
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  Rng rng(cfg.seed);
  rng.shuffle(order);
  const auto n_train = static_cast<std::size_t>(
      std::floor(cfg.train_fraction * static_cast<double>(n)));
  if (n_train == 0 || n_train == order.size())
    throw DataError("split produces an empty partition");
  SplitIndices out;
  out.train.assign(order.begin(), order.begin() + static_cast<long>(n_train));
  out.test.assign(order.begin() + static_cast<long>(n_train), order.end());
  return out;
}

Dataset take_rows(const Dataset& ds, const std::vector<Index>& rows) {
  Dataset out;
  out.task = ds.task;
  out.class_names = ds.class_names;
  out.X.resize(static_cast<Index>(rows.size()), ds.X.cols());
  out.y.resize(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.X.row(static_cast<Index>(i)) = ds.X.row(rows[i]);
    out.y[static_cast<Index>(i)] = ds.y[rows[i]];
  }
  return out;
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds,
                                             const SplitConfig& cfg) {
  const SplitIndices idx = split_indices(ds.n_samples(), cfg);
  return {take_rows(ds, idx.train), take_rows(ds, idx.test)};
}

Dataset generate_sinc(Index n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("generate_sinc requires n >= 1");
  Dataset ds;
  ds.task = Task::Regression;
  ds.X.resize(n, 1);
  ds.y.resize(n);
  Rng rng(seed);
  const double pi = M_PI;
  for (Index i = 0; i < n; ++i) {
    const double x = rng.uniform(-pi, pi);
    ds.X(i, 0) = x;
    // normalized sinc: sin(pi x) / (pi x), with the removable singularity
    // filled at 1. Matches the target function behind the reported
    // regression figures.
    ds.y[i] = (x == 0.0) ? 1.0 : std::sin(pi * x) / (pi * x);
  }
  return ds;
}

Dataset smote_balance(const Dataset& ds, int k, std::uint64_t seed) {
  if (ds.task != Task::Classification)
    throw DataError("smote_balance requires a classification dataset");
  ds.validate();
  const int nc = ds.n_classes();

  std::vector<std::vector<Index>> by_class(static_cast<std::size_t>(nc));
  for (Index i = 0; i < ds.n_samples(); ++i)
    by_class[static_cast<std::size_t>(ds.label(i))].push_back(i);

  std::size_t majority = 0;
  for (const auto& rows : by_class) majority = std::max(majority, rows.size());

  std::size_t total = 0;
  for (const auto& rows : by_class) {
    if (rows.size() < 2 && rows.size() < majority)
      throw DataError("minority class needs at least 2 samples for SMOTE");
    total += majority;
  }

  Dataset out;
  out.task = ds.task;
  out.class_names = ds.class_names;
  out.X.resize(static_cast<Index>(total), ds.X.cols());
  out.y.resize(static_cast<Index>(total));
  out.X.topRows(ds.n_samples()) = ds.X;
  out.y.head(ds.n_samples()) = ds.y;

  Rng rng(seed);
  Index row = ds.n_samples();
  for (int c = 0; c < nc; ++c) {
    const auto& rows = by_class[static_cast<std::size_t>(c)];
    const std::size_t need = majority - rows.size();
    if (need == 0) continue;

    int kk = k;
    if (kk >= static_cast<int>(rows.size())) {
      kk = static_cast<int>(rows.size()) - 1;
      std::fprintf(stderr,
                   "warning: SMOTE k clamped to %d for class %d (size %zu)\n",
                   kk, c, rows.size());
    }

    // k nearest same-class neighbours of each class member, by index
    const std::size_t m = rows.size();
    std::vector<std::vector<Index>> nn(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::pair<double, Index>> dist;
      dist.reserve(m - 1);
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        const double d = (ds.X.row(rows[i]) - ds.X.row(rows[j])).squaredNorm();
        dist.emplace_back(d, rows[j]);
      }
      std::sort(dist.begin(), dist.end());
      nn[i].reserve(static_cast<std::size_t>(kk));
      for (int t = 0; t < kk; ++t) nn[i].push_back(dist[static_cast<std::size_t>(t)].second);
    }

    for (std::size_t t = 0; t < need; ++t) {
      const std::size_t base = rng.uniform_int(m);
      const auto& cand = nn[base];
      const Index nb = cand[rng.uniform_int(cand.size())];
      const double lambda = rng.uniform();
      out.X.row(row) =
          ds.X.row(rows[base]) + lambda * (ds.X.row(nb) - ds.X.row(rows[base]));
      out.y[row] = c;
      ++row;
    }
  }
  return out;
}

std::pair<PcaProjection, Matrix> pca_reduce(const Matrix& X, Index d) {
  if (d < 1 || d > std::min(X.rows(), X.cols()))
    throw ConfigError("pca_reduce: invalid component count");
  PcaProjection p;
  p.mean = X.colwise().mean();
  Matrix centered = X.rowwise() - p.mean.transpose();
  Matrix cov = centered.transpose() * centered /
               static_cast<double>(std::max<Index>(X.rows() - 1, 1));
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
  if (es.info() != Eigen::Success) throw Error("PCA eigendecomposition failed");

  // Eigen returns ascending order; take the top d, descending.
  p.components.resize(X.cols(), d);
  p.eigenvalues.resize(d);
  for (Index j = 0; j < d; ++j) {
    const Index src = X.cols() - 1 - j;
    Vector v = es.eigenvectors().col(src);
    Index imax;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0) v = -v;
    p.components.col(j) = v;
    p.eigenvalues[j] = es.eigenvalues()[src];
  }
  return {p, centered * p.components};
}

Matrix pca_apply(const PcaProjection& p, const Matrix& X) {
  if (X.cols() != p.mean.size())
    throw DataError("PCA projection fitted on a different column count");
  return (X.rowwise() - p.mean.transpose()) * p.components;
}

}  // namespace chaoslearn
