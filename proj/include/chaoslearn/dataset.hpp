#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chaoslearn/error.hpp"
#include "chaoslearn/types.hpp"

namespace chaoslearn {

enum class Task { Regression, Classification };

struct Dataset {
  Matrix X;  // samples x vars
  Vector y;  // regression target, or dense class indices
  Task task = Task::Regression;
  std::vector<std::string> class_names;  // classification only

  Index n_samples() const { return X.rows(); }
  Index n_vars() const { return X.cols(); }
  int n_classes() const { return static_cast<int>(class_names.size()); }
  int label(Index i) const { return static_cast<int>(y[i]); }

  // row/target consistency, finiteness, dense class indices
  void validate() const;
};

// Per-column mean and sample standard deviation (ddof = 1).
struct Scaler {
  Vector mean;
  Vector std;
};

Scaler zscore_fit(const Matrix& X);
Matrix zscore_apply(const Scaler& s, const Matrix& X);

// Affine map of the target onto [0, 1]; min -> 0, max -> 1.
Vector normalize_target_01(const Vector& y);

struct SplitConfig {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
};

struct SplitIndices {
  std::vector<Index> train;
  std::vector<Index> test;
};

// Seeded shuffle of 0..n-1, then partition with train size
// floor(train_fraction * n). Deterministic per seed.
SplitIndices split_indices(Index n, const SplitConfig& cfg);

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds,
                                             const SplitConfig& cfg);

Dataset take_rows(const Dataset& ds, const std::vector<Index>& rows);

// n uniform samples on [-pi, pi] with y = sinc(x) = sin(pi x)/(pi x)
// (y(0) = 1). The data is left unnormalized by design.
Dataset generate_sinc(Index n, std::uint64_t seed);

// Upsamples every class to the majority count by interpolating between a
// class sample and one of its k nearest same-class neighbours. Original
// rows are preserved verbatim ahead of the synthetic ones.
Dataset smote_balance(const Dataset& ds, int k = 5, std::uint64_t seed = 0);

struct PcaProjection {
  Vector mean;
  Matrix components;    // vars x d, ordered by descending eigenvalue
  Vector eigenvalues;   // length d, non-increasing
};

std::pair<PcaProjection, Matrix> pca_reduce(const Matrix& X, Index d);
Matrix pca_apply(const PcaProjection& p, const Matrix& X);

}  // namespace chaoslearn
