#include <doctest.h>

#include <cmath>

#include "chaoslearn/lyapunov.hpp"
#include "chaoslearn/rng.hpp"

using namespace chaoslearn;

TEST_CASE("delay embedding") {
  Vector s(6);
  s << 1, 2, 3, 4, 5, 6;

  SUBCASE("dim 1 is the identity column") {
    const Matrix e = delay_embed(s, 1, 3);
    CHECK(e.rows() == 6);
    CHECK(e.cols() == 1);
    CHECK(e.col(0) == s);
  }

  SUBCASE("dim 2 tau 2 gives the lagged pairs") {
    const Matrix e = delay_embed(s, 2, 2);
    REQUIRE(e.rows() == 4);
    CHECK(e(0, 0) == 1);
    CHECK(e(0, 1) == 3);
    CHECK(e(3, 0) == 4);
    CHECK(e(3, 1) == 6);
  }

  SUBCASE("length arithmetic") {
    Vector five(5);
    five << 1, 2, 3, 4, 5;
    CHECK(delay_embed(five, 3, 1).rows() == 3);
    CHECK(delay_embed(five, 3, 2).rows() == 1);  // length > (dim-1)*tau holds
    CHECK_THROWS_AS(delay_embed(five, 3, 3), DataError);
  }
}

TEST_CASE("autocorrelation delay and mean period heuristics") {
  // clean sinusoid of period 40 steps
  Vector s(2000);
  for (Index i = 0; i < s.size(); ++i)
    s[i] = std::sin(2.0 * M_PI * static_cast<double>(i) / 40.0);

  // first acf minimum of a sinusoid sits at the half period
  const int tau = first_autocorr_min(s);
  CHECK(tau > 15);
  CHECK(tau < 25);

  const double period = mean_period_fft(s);
  CHECK(period == doctest::Approx(40.0).epsilon(0.05));

  // degenerate series fall back
  Vector flat = Vector::Constant(100, 1.0);
  CHECK(first_autocorr_min(flat) == 10);
  CHECK(mean_period_fft(flat) == 100.0);
}

TEST_CASE("rosenstein estimates") {
  SUBCASE("pure sinusoid has a near-zero exponent") {
    // incommensurate period keeps neighbour distances finite instead of
    // floating-point noise
    Vector s(3000);
    const double period = 40.0 * std::sqrt(2.0);
    for (Index i = 0; i < s.size(); ++i)
      s[i] = std::sin(2.0 * M_PI * static_cast<double>(i) / period);
    RosensteinParams p;
    p.fit_lo = 1;
    p.fit_hi = 200;
    const LLEEstimate est = rosenstein_lle(s, p);
    CHECK(std::abs(est.lambda_max) < 0.05);
  }

  SUBCASE("non-chaotic lorenz (rho = 2) contracts") {
    const Vector s =
        reference_series(AttractorSpec::lorenz(10.0, 8.0 / 3.0, 2.0), 3000,
                         1e-2, 0);
    RosensteinParams p;
    const LLEEstimate est = rosenstein_lle(s, p);
    CHECK(est.lambda_max <= 0.0);
  }

  SUBCASE("estimate is invariant under uniform scaling of the series") {
    const Vector s =
        reference_series(AttractorSpec::lorenz(10.0, 8.0 / 3.0, 28.0), 3000);
    RosensteinParams p;
    const double a = rosenstein_lle(s, p).lambda_max;
    const double b = rosenstein_lle(Vector(10.0 * s), p).lambda_max;
    CHECK(std::abs(a - b) < 1e-6);
  }

  SUBCASE("divergence curve and window are reported") {
    const Vector s =
        reference_series(AttractorSpec::lorenz(10.0, 8.0 / 3.0, 28.0), 2000);
    RosensteinParams p;
    p.fit_lo = 1;
    p.fit_hi = 100;
    const LLEEstimate est = rosenstein_lle(s, p);
    CHECK(est.fit_window == std::pair<int, int>{1, 100});
    CHECK(est.divergence_curve.size() == 151);  // follow = fit_hi + 50
    CHECK(est.embedding_dim == 3);
    CHECK(est.delay >= 1);
  }

  SUBCASE("too-short series is rejected") {
    Vector s(100);
    for (Index i = 0; i < 100; ++i) s[i] = std::sin(0.3 * static_cast<double>(i));
    RosensteinParams p;  // default follow = 250 exceeds the series
    CHECK_THROWS_AS(rosenstein_lle(s, p), DataError);
  }
}

TEST_CASE("pearson correlation") {
  Vector a(5);
  a << 1, 2, 3, 4, 5;
  CHECK(pearson_r(a, a) == doctest::Approx(1.0));
  CHECK(pearson_r(a, Vector(-a)) == doctest::Approx(-1.0));

  Vector b(5);
  b << 2, 4, 6, 8, 10;
  CHECK(pearson_r(a, b) == doctest::Approx(1.0));

  CHECK_THROWS_AS(pearson_r(a, Vector::Constant(5, 3.0)), DataError);
  CHECK_THROWS_AS(pearson_r(a, Vector::Zero(4)), DataError);
}

TEST_CASE("welch t statistic") {
  SUBCASE("identical means give t near zero") {
    Vector a(6), b(6);
    a << 1, 2, 3, 3, 2, 1;
    b << 2, 1, 3, 1, 3, 2;
    const WelchResult r = welch_t(a, b);
    CHECK(std::abs(r.t) < 1e-12);
  }

  SUBCASE("hand-computed example") {
    // a = [1,2,3,4]: mean 2.5, var 5/3 ; b = [2,4,6]: mean 4, var 4
    // se^2 = 5/12 + 4/3 = 1.75 ; t = -1.5/sqrt(1.75)
    // dof = 1.75^2 / ((5/12)^2/3 + (4/3)^2/2) = 3.0625/0.946759... = 3.23472
    Vector a(4), b(3);
    a << 1, 2, 3, 4;
    b << 2, 4, 6;
    const WelchResult r = welch_t(a, b);
    CHECK(r.t == doctest::Approx(-1.5 / std::sqrt(1.75)).epsilon(1e-12));
    CHECK(r.dof == doctest::Approx(3.234721).epsilon(1e-5));
  }

  SUBCASE("zero variance is rejected") {
    Vector a(3), b(3);
    a << 1, 1, 1;
    b << 1, 2, 3;
    CHECK_THROWS_AS(welch_t(a, b), DataError);
  }
}

namespace {

Dataset tiny_classification(Index n, std::uint64_t seed) {
  Dataset ds;
  ds.task = Task::Classification;
  ds.class_names = {"lo", "hi"};
  ds.X.resize(n, 2);
  ds.y.resize(n);
  Rng rng(seed);
  for (Index i = 0; i < n; ++i) {
    const int c = static_cast<int>(i % 2);
    ds.X(i, 0) = rng.uniform(-1, 1) + (c ? 0.8 : -0.8);
    ds.X(i, 1) = rng.uniform(-1, 1) * (c ? 1.5 : 0.5);
    ds.y[i] = c;
  }
  return ds;
}

}  // namespace

TEST_CASE("lle/accuracy scan") {
  const Dataset ds = tiny_classification(40, 9);
  const SplitIndices split = split_indices(ds.n_samples(), {0.8, 0});

  ReadoutConfig rc;
  rc.kind = ReadoutKind::LinearSvm;
  rc.svm_max_epochs = 60;

  ScanConfig cfg;
  cfg.rho_grid = {2.0, 28.0, 97.0};
  cfg.series_len = 3000;
  cfg.integration.n_steps = 25;

  const auto rows = lle_accuracy_scan(ds, split, rc, cfg);
  REQUIRE(rows.size() == 3);

  // the non-chaotic attractor really is non-chaotic
  CHECK(rows[0].rho == 2.0);
  CHECK(rows[0].lle <= 0.0);
  CHECK(rows[1].lle > 0.0);
  CHECK(rows[2].lle > rows[1].lle);

  for (const auto& row : rows) {
    CHECK(row.best_accuracy >= 0.0);
    CHECK(row.best_accuracy <= 1.0);
    CHECK(row.best_iteration >= 1);
  }

  SUBCASE("reproducible") {
    const auto again = lle_accuracy_scan(ds, split, rc, cfg);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].lle == again[i].lle);
      CHECK(rows[i].best_accuracy == again[i].best_accuracy);
      CHECK(rows[i].best_iteration == again[i].best_iteration);
    }
  }

  SUBCASE("default grid covers 1..100") {
    ScanConfig defaults;
    CHECK(defaults.rho_grid.empty());  // resolved to 100 rows inside the scan
  }

  SUBCASE("regression dataset is rejected") {
    Dataset reg = ds;
    reg.task = Task::Regression;
    CHECK_THROWS_AS(lle_accuracy_scan(reg, split, rc, cfg), DataError);
  }
}
