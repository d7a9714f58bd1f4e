#pragma once

#include <utility>
#include <vector>

#include "chaoslearn/attractor.hpp"
#include "chaoslearn/dataset.hpp"
#include "chaoslearn/readout.hpp"
#include "chaoslearn/types.hpp"

namespace chaoslearn {

// Row t = (s_t, s_{t+tau}, ..., s_{t+(dim-1)tau}).
Matrix delay_embed(const Vector& series, int dim, int tau);

// Lag of the first local minimum of the autocorrelation; falls back to
// `fallback` when none is found within max_lag.
int first_autocorr_min(const Vector& series, int max_lag = 500,
                       int fallback = 10);

// Mean period in steps from the power-spectrum-weighted mean frequency;
// falls back to 100 steps for degenerate spectra.
double mean_period_fft(const Vector& series);

struct RosensteinParams {
  int dim = 3;
  int tau = 0;             // 0 = first autocorrelation minimum
  double mean_period = 0;  // 0 = FFT-weighted mean period
  int fit_lo = 1;          // divergence-curve fit window, in steps
  int fit_hi = 200;
  int follow = 0;          // 0 = fit_hi + 50
  double dt = 1e-2;
};

struct LLEEstimate {
  double lambda_max = 0.0;  // per unit of flow time
  int embedding_dim = 0;
  int delay = 0;
  std::pair<int, int> fit_window{0, 0};
  Vector divergence_curve;  // mean log-distance per step offset
};

// Largest Lyapunov exponent of a scalar series: embed, find each point's
// nearest neighbour outside the mean period, track the mean log distance
// while both trajectories run forward, and fit the growth slope.
LLEEstimate rosenstein_lle(const Vector& series, const RosensteinParams& p);

// x-coordinate of a reference trajectory, recorded after a transient.
Vector reference_series(const AttractorSpec& spec, int n, double dt = 1e-2,
                        int transient = 1000,
                        const Vec3& init = Vec3(1.0, 1.05, -1.0));

double pearson_r(const Vector& a, const Vector& b);

struct WelchResult {
  double t = 0.0;
  double dof = 0.0;
};

// Unequal-variance t statistic with Welch-Satterthwaite degrees of freedom.
WelchResult welch_t(const Vector& a, const Vector& b);

struct ScanRow {
  double rho = 0.0;
  double lle = 0.0;
  double best_accuracy = 0.0;
  int best_iteration = 0;
};

struct ScanConfig {
  std::vector<double> rho_grid;      // defaults to 1..100 when empty
  double sigma = 10.0;
  double beta = 8.0 / 3.0;
  IntegrationConfig integration;     // transform settings
  RosensteinParams rosenstein;       // fit window = operating range
  int series_len = 5000;
  int series_transient = 1000;
};

// For each rho: best sweep accuracy of the configured readout on the
// transformed dataset, plus the LLE of that attractor's reference series.
std::vector<ScanRow> lle_accuracy_scan(const Dataset& ds,
                                       const SplitIndices& split,
                                       const ReadoutConfig& readout,
                                       const ScanConfig& cfg);

}  // namespace chaoslearn
