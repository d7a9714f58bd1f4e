#include "chaoslearn/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include <unsupported/Eigen/FFT>

#include "chaoslearn/transform.hpp"

namespace chaoslearn {

Matrix delay_embed(const Vector& series, int dim, int tau) {
  if (dim < 1) throw ConfigError("embedding dimension must be >= 1");
  if (dim > 1 && tau < 1) throw ConfigError("delay must be >= 1");
  const Index span = static_cast<Index>(dim - 1) * tau;
  if (series.size() <= span)
    throw DataError("series too short for the requested embedding");
  const Index rows = series.size() - span;
  Matrix out(rows, dim);
  for (Index t = 0; t < rows; ++t)
    for (int d = 0; d < dim; ++d) out(t, d) = series[t + static_cast<Index>(d) * tau];
  return out;
}

int first_autocorr_min(const Vector& series, int max_lag, int fallback) {
  const Index n = series.size();
  if (n < 3) return fallback;
  const Vector x = series.array() - series.mean();
  const double denom = x.squaredNorm();
  if (!(denom > 0)) return fallback;
  double prev = 1.0;
  const int limit = static_cast<int>(std::min<Index>(max_lag, n - 1));
  for (int lag = 1; lag <= limit; ++lag) {
    const double c = x.head(n - lag).dot(x.tail(n - lag)) / denom;
    if (c > prev && lag > 1) return lag - 1;
    prev = c;
  }
  return fallback;
}

double mean_period_fft(const Vector& series) {
  const Index n = series.size();
  if (n < 4) return 100.0;
  std::vector<double> centered(static_cast<std::size_t>(n));
  const double mu = series.mean();
  for (Index i = 0; i < n; ++i) centered[static_cast<std::size_t>(i)] = series[i] - mu;

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, centered);

  double power_sum = 0.0, weighted = 0.0;
  const std::size_t half = spectrum.size() / 2;
  for (std::size_t k = 1; k <= half; ++k) {
    const double p = std::norm(spectrum[k]);
    const double f = static_cast<double>(k) / static_cast<double>(n);
    power_sum += p;
    weighted += f * p;
  }
  if (!(power_sum > 0) || !(weighted > 0)) return 100.0;
  return power_sum / weighted;
}

LLEEstimate rosenstein_lle(const Vector& series, const RosensteinParams& p) {
  RosensteinParams q = p;
  if (q.tau <= 0) q.tau = first_autocorr_min(series);
  if (!(q.mean_period > 0)) q.mean_period = mean_period_fft(series);
  if (q.follow <= 0) q.follow = q.fit_hi + 50;
  if (q.fit_lo < 0 || q.fit_hi <= q.fit_lo)
    throw ConfigError("invalid LLE fit window");

  const Matrix embedded = delay_embed(series, q.dim, q.tau);
  const Index m = embedded.rows();
  const Index usable = m - q.follow;
  if (usable < 2)
    throw DataError("series too short for the requested divergence window");

  const auto sep = static_cast<Index>(std::lround(q.mean_period));

  // nearest neighbour of each point with temporal separation > mean period
  std::vector<Index> nn(static_cast<std::size_t>(usable), -1);
  Index n_pairs = 0;
  for (Index i = 0; i < usable; ++i) {
    double best = std::numeric_limits<double>::infinity();
    Index best_j = -1;
    for (Index j = 0; j < usable; ++j) {
      if (std::abs(j - i) <= sep) continue;
      const double d = (embedded.row(j) - embedded.row(i)).squaredNorm();
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    nn[static_cast<std::size_t>(i)] = best_j;
    if (best_j >= 0) ++n_pairs;
  }
  if (n_pairs == 0)
    throw DataError("no valid neighbour pairs; series too short or mean "
                    "period too large");

  LLEEstimate est;
  est.embedding_dim = q.dim;
  est.delay = q.tau;
  est.fit_window = {q.fit_lo, q.fit_hi};
  est.divergence_curve = Vector::Zero(q.follow + 1);

  Vector counts = Vector::Zero(q.follow + 1);
  for (Index i = 0; i < usable; ++i) {
    const Index j = nn[static_cast<std::size_t>(i)];
    if (j < 0) continue;
    for (int s = 0; s <= q.follow; ++s) {
      const double d = (embedded.row(i + s) - embedded.row(j + s)).norm();
      if (d > 0) {
        est.divergence_curve[s] += std::log(d);
        counts[s] += 1.0;
      }
    }
  }
  for (int s = 0; s <= q.follow; ++s)
    if (counts[s] > 0) est.divergence_curve[s] /= counts[s];

  // least-squares slope over the fit window, in steps, then per unit time
  const int lo = q.fit_lo, hi = std::min(q.fit_hi, q.follow);
  const int n_fit = hi - lo + 1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int s = lo; s <= hi; ++s) {
    sx += s;
    sy += est.divergence_curve[s];
    sxx += static_cast<double>(s) * s;
    sxy += s * est.divergence_curve[s];
  }
  const double denom = n_fit * sxx - sx * sx;
  if (!(std::abs(denom) > 0)) throw DataError("degenerate LLE fit window");
  const double slope = (n_fit * sxy - sx * sy) / denom;
  est.lambda_max = slope / q.dt;
  return est;
}

Vector reference_series(const AttractorSpec& spec, int n, double dt,
                        int transient, const Vec3& init) {
  if (n < 1) throw ConfigError("series length must be >= 1");
  Vec3 s = init;
  IntegrationConfig warmup{dt, transient};
  if (transient > 0)
    integrate_visit(spec, s, warmup, [&s](int, const Vec3& v) { s = v; });
  Vector out(n);
  IntegrationConfig cfg{dt, n};
  integrate_visit(spec, s, cfg, [&out](int k, const Vec3& v) { out[k - 1] = v[0]; });
  return out;
}

double pearson_r(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DataError("length mismatch");
  if (a.size() < 3) throw DataError("pearson_r needs at least 3 samples");
  const Vector xa = a.array() - a.mean();
  const Vector xb = b.array() - b.mean();
  const double na = xa.norm(), nb = xb.norm();
  if (!(na > 0) || !(nb > 0)) throw DataError("zero variance input");
  return xa.dot(xb) / (na * nb);
}

WelchResult welch_t(const Vector& a, const Vector& b) {
  if (a.size() < 3 || b.size() < 3)
    throw DataError("welch_t needs at least 3 samples per group");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = (a.array() - a.mean()).square().sum() / (na - 1);
  const double vb = (b.array() - b.mean()).square().sum() / (nb - 1);
  if (!(va > 0) || !(vb > 0)) throw DataError("zero variance input");
  const double se2 = va / na + vb / nb;
  WelchResult r;
  r.t = (a.mean() - b.mean()) / std::sqrt(se2);
  r.dof = se2 * se2 /
          ((va / na) * (va / na) / (na - 1) + (vb / nb) * (vb / nb) / (nb - 1));
  return r;
}

std::vector<ScanRow> lle_accuracy_scan(const Dataset& ds,
                                       const SplitIndices& split,
                                       const ReadoutConfig& readout,
                                       const ScanConfig& cfg) {
  if (ds.task != Task::Classification)
    throw DataError("the scan requires a classification dataset");

  std::vector<double> grid = cfg.rho_grid;
  if (grid.empty())
    for (int r = 1; r <= 100; ++r) grid.push_back(r);

  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (double rho : grid) {
    const AttractorSpec spec = AttractorSpec::lorenz(cfg.sigma, cfg.beta, rho);

    ScanRow row;
    row.rho = rho;

    const Vector series = reference_series(spec, cfg.series_len,
                                           cfg.integration.dt,
                                           cfg.series_transient);
    RosensteinParams rp = cfg.rosenstein;
    rp.dt = cfg.integration.dt;
    row.lle = rosenstein_lle(series, rp).lambda_max;

    const TrajectoryTensor t = transform(ds.X, spec, cfg.integration);
    const SweepResult sweep = iteration_sweep(t, ds, split, readout);
    row.best_accuracy = sweep.best_metric;
    row.best_iteration = sweep.best_iteration;

    rows.push_back(row);
  }
  return rows;
}

}  // namespace chaoslearn
