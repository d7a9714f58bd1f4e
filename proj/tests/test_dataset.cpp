#include <doctest.h>

#include <cmath>
#include <set>

#include "chaoslearn/dataset.hpp"

using namespace chaoslearn;

TEST_CASE("sinc generation: range, singular value, determinism") {
  const Dataset ds = generate_sinc(2048, 0);
  CHECK(ds.n_samples() == 2048);
  CHECK(ds.n_vars() == 1);
  for (Index i = 0; i < ds.n_samples(); ++i) {
    CHECK(std::abs(ds.X(i, 0)) <= M_PI);
    const double x = ds.X(i, 0);
    const double expect = x == 0.0 ? 1.0 : std::sin(M_PI * x) / (M_PI * x);
    CHECK(ds.y[i] == expect);
  }

  // removable singularity at 0 and zeros at the nonzero integers
  CHECK(std::sin(M_PI * 1.0) / (M_PI * 1.0) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // target statistics behind the reported pre-transform regression error
  const double mean = ds.y.mean();
  const double stddev =
      std::sqrt((ds.y.array() - mean).square().sum() / (2048.0 - 1.0));
  CHECK(stddev == doctest::Approx(0.346).epsilon(0.05));

  const Dataset again = generate_sinc(2048, 0);
  CHECK(ds.X == again.X);
  const Dataset other = generate_sinc(2048, 1);
  CHECK(ds.X != other.X);
}

TEST_CASE("zscore fit/apply") {
  SUBCASE("two-point column is symmetric") {
    Matrix x(2, 1);
    x << 1.0, 3.0;
    const Scaler s = zscore_fit(x);
    CHECK(s.mean[0] == 2.0);
    CHECK(s.std[0] == doctest::Approx(std::sqrt(2.0)));  // sample std
    const Matrix z = zscore_apply(s, x);
    CHECK(z(0, 0) == doctest::Approx(-z(1, 0)));
  }

  SUBCASE("fit data is centered and unit-variance after transform") {
    Matrix x(40, 3);
    for (Index i = 0; i < x.rows(); ++i)
      for (Index j = 0; j < x.cols(); ++j)
        x(i, j) = std::sin(0.7 * static_cast<double>(i + 3 * j)) * (j + 1.0) + j;
    const Matrix z = zscore_apply(zscore_fit(x), x);
    for (Index j = 0; j < z.cols(); ++j) {
      CHECK(std::abs(z.col(j).mean()) < 1e-12);
      const double var =
          (z.col(j).array() - z.col(j).mean()).square().sum() /
          static_cast<double>(z.rows() - 1);
      CHECK(std::sqrt(var) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  SUBCASE("constant column is rejected") {
    Matrix x(3, 1);
    x << 5.0, 5.0, 5.0;
    CHECK_THROWS_WITH_AS(zscore_fit(x), "zero variance column 0", DataError);
  }
}

TEST_CASE("target normalization to [0, 1]") {
  Vector y(2);
  y << 1.0, 29.0;
  const Vector z = normalize_target_01(y);
  CHECK(z[0] == 0.0);
  CHECK(z[1] == 1.0);

  Vector y3(3);
  y3 << 0.0, 5.0, 10.0;
  const Vector z3 = normalize_target_01(y3);
  CHECK(z3[1] == doctest::Approx(0.5));

  Vector flat = Vector::Constant(4, 2.0);
  CHECK_THROWS_AS(normalize_target_01(flat), DataError);
}

TEST_CASE("train/test split") {
  SUBCASE("iris-style 70/30 counts") {
    const SplitIndices idx = split_indices(150, {0.7, 0});
    CHECK(idx.train.size() == 105);
    CHECK(idx.test.size() == 45);
  }

  SUBCASE("same seed gives the identical partition, it is a permutation") {
    const SplitIndices a = split_indices(97, {0.8, 7});
    const SplitIndices b = split_indices(97, {0.8, 7});
    CHECK(a.train == b.train);
    CHECK(a.test == b.test);
    std::set<Index> all(a.train.begin(), a.train.end());
    all.insert(a.test.begin(), a.test.end());
    CHECK(all.size() == 97);
  }

  SUBCASE("twenty seeds give twenty distinct partitions") {
    std::set<std::vector<Index>> seen;
    for (std::uint64_t s = 0; s < 20; ++s)
      seen.insert(split_indices(200, {0.8, s}).train);
    CHECK(seen.size() == 20);
  }

  SUBCASE("degenerate splits rejected") {
    CHECK_THROWS_AS(split_indices(0, {0.8, 0}), DataError);
    CHECK_THROWS_AS(split_indices(3, {0.1, 0}), DataError);   // empty train
    CHECK_THROWS_AS(split_indices(10, {1.0, 0}), ConfigError);
  }
}

namespace {

Dataset two_class_toy() {
  Dataset ds;
  ds.task = Task::Classification;
  ds.class_names = {"a", "b"};
  ds.X.resize(60, 2);
  ds.y.resize(60);
  // class a: 10 points near the origin; class b: 50 points near (5, 5)
  for (Index i = 0; i < 10; ++i) {
    ds.X(i, 0) = 0.1 * static_cast<double>(i);
    ds.X(i, 1) = 0.05 * static_cast<double>(i % 3);
    ds.y[i] = 0;
  }
  for (Index i = 10; i < 60; ++i) {
    ds.X(i, 0) = 5.0 + 0.01 * static_cast<double>(i);
    ds.X(i, 1) = 5.0 - 0.02 * static_cast<double>(i % 7);
    ds.y[i] = 1;
  }
  return ds;
}

}  // namespace

TEST_CASE("smote balances classes exactly and interpolates within class") {
  const Dataset ds = two_class_toy();
  const Dataset up = smote_balance(ds, 5, 0);

  SUBCASE("histogram is uniform at the majority count") {
    std::vector<int> counts(2, 0);
    for (Index i = 0; i < up.n_samples(); ++i) ++counts[up.label(i)];
    CHECK(counts[0] == 50);
    CHECK(counts[1] == 50);
  }

  SUBCASE("original rows survive verbatim") {
    for (Index i = 0; i < ds.n_samples(); ++i) {
      CHECK(up.X.row(i) == ds.X.row(i));
      CHECK(up.y[i] == ds.y[i]);
    }
  }

  SUBCASE("synthetic rows are convex combinations of two real class rows") {
    for (Index i = ds.n_samples(); i < up.n_samples(); ++i) {
      const int c = up.label(i);
      bool writable = false;
      for (Index a = 0; a < ds.n_samples() && !writable; ++a) {
        if (ds.label(a) != c) continue;
        for (Index b = 0; b < ds.n_samples() && !writable; ++b) {
          if (b == a || ds.label(b) != c) continue;
          // solve for lambda on the first coordinate, verify the rest
          const double dx = ds.X(b, 0) - ds.X(a, 0);
          if (dx == 0.0) continue;
          const double lambda = (up.X(i, 0) - ds.X(a, 0)) / dx;
          if (lambda < -1e-9 || lambda > 1.0 + 1e-9) continue;
          const Vector expect =
              ds.X.row(a).transpose() +
              lambda * (ds.X.row(b) - ds.X.row(a)).transpose();
          if ((expect - up.X.row(i).transpose()).norm() < 1e-9) writable = true;
        }
      }
      CHECK(writable);
    }
  }

  SUBCASE("deterministic per seed") {
    const Dataset again = smote_balance(ds, 5, 0);
    CHECK(up.X == again.X);
    const Dataset other = smote_balance(ds, 5, 1);
    CHECK(up.X != other.X);
  }

  SUBCASE("k is clamped when it reaches the class size") {
    Dataset tiny = ds;
    // shrink class a to 3 members
    Dataset t;
    t.task = Task::Classification;
    t.class_names = ds.class_names;
    t.X = ds.X.bottomRows(53);
    t.y = ds.y.tail(53);
    for (Index i = 0; i < 3; ++i) {
      t.X.row(i) = ds.X.row(i);
      t.y[i] = 0;
    }
    const Dataset balanced = smote_balance(t, 5, 0);
    std::vector<int> counts(2, 0);
    for (Index i = 0; i < balanced.n_samples(); ++i) ++counts[balanced.label(i)];
    CHECK(counts[0] == counts[1]);
  }
}

TEST_CASE("pca: exact subspace recovery and ordered spectrum") {
  // rank-2 data in 5 dims
  Matrix basis(5, 2);
  basis << 1, 0, 0, 1, 1, 1, 0.5, -0.3, -1, 2;
  Matrix coeffs(40, 2);
  for (Index i = 0; i < 40; ++i) {
    coeffs(i, 0) = std::cos(0.37 * static_cast<double>(i)) * 3.0;
    coeffs(i, 1) = std::sin(0.59 * static_cast<double>(i)) * 1.5;
  }
  const Matrix x = coeffs * basis.transpose();

  auto [proj, reduced] = pca_reduce(x, 2);
  CHECK(reduced.rows() == 40);
  CHECK(reduced.cols() == 2);

  // reconstruction error vanishes for data already in a 2-dim subspace
  const Matrix recon =
      (reduced * proj.components.transpose()).rowwise() + proj.mean.transpose();
  CHECK((recon - x).norm() < 1e-9);

  auto [proj5, r5] = pca_reduce(x, 5);
  for (Index j = 1; j < 5; ++j)
    CHECK(proj5.eigenvalues[j] <= proj5.eigenvalues[j - 1] + 1e-12);

  CHECK_THROWS_AS(pca_reduce(x, 6), ConfigError);
  CHECK_THROWS_AS(pca_reduce(x, 0), ConfigError);

  // out-of-sample application uses the fitted mean
  const Matrix applied = pca_apply(proj, x);
  CHECK((applied - reduced).norm() < 1e-12);
}

TEST_CASE("dataset validation catches inconsistencies") {
  Dataset ds;
  ds.task = Task::Classification;
  ds.class_names = {"a", "b"};
  ds.X = Matrix::Zero(3, 2);
  ds.y.resize(3);
  ds.y << 0, 1, 0;
  CHECK_NOTHROW(ds.validate());

  Dataset bad = ds;
  bad.y.resize(2);
  CHECK_THROWS_AS(bad.validate(), DataError);

  bad = ds;
  bad.y[0] = 2;  // outside [0, n_classes)
  CHECK_THROWS_AS(bad.validate(), DataError);

  bad = ds;
  bad.X(1, 1) = NAN;
  CHECK_THROWS_AS(bad.validate(), DataError);
}
