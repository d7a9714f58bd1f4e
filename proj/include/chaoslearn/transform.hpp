#pragma once

#include <functional>
#include <string>
#include <vector>

#include "chaoslearn/attractor.hpp"
#include "chaoslearn/dataset.hpp"
#include "chaoslearn/types.hpp"

namespace chaoslearn {

// Input encoding: a scalar becomes the initial condition (v, 1.05, -v).
inline Vec3 encode_initial(double v) {
  if (!std::isfinite(v)) throw Error("non-finite input value");
  return Vec3(v, 1.05, -v);
}

// Evolved states for every (sample, variable) cell, all iterations.
// Storage is iteration-major so a single iteration's feature block is one
// contiguous slab: value(i, j, k, axis) lives at
// ((k*n_samples + i)*n_vars + j)*3 + axis.
class TrajectoryTensor {
 public:
  TrajectoryTensor() = default;
  TrajectoryTensor(Index n_samples, Index n_vars, Index n_steps);

  Index n_samples() const { return n_samples_; }
  Index n_vars() const { return n_vars_; }
  Index n_steps() const { return n_steps_; }

  double at(Index sample, Index var, Index step, int axis) const {
    return data_[offset(sample, var, step, axis)];
  }
  void set(Index sample, Index var, Index step, const Vec3& s) {
    const std::size_t base = offset(sample, var, step, 0);
    data_[base] = s[0];
    data_[base + 1] = s[1];
    data_[base + 2] = s[2];
  }

  // One iteration as a (samples x 3*vars) matrix, columns ordered
  // var0.x var0.y var0.z var1.x ...
  Matrix slice_matrix(Index step) const;

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  // provenance, carried into exports
  double dt = 0.0;
  std::vector<AttractorSpec> specs;

 private:
  std::size_t offset(Index sample, Index var, Index step, int axis) const {
    return ((static_cast<std::size_t>(step) * static_cast<std::size_t>(n_samples_) +
             static_cast<std::size_t>(sample)) *
                static_cast<std::size_t>(n_vars_) +
            static_cast<std::size_t>(var)) *
               3 +
           static_cast<std::size_t>(axis);
  }

  Index n_samples_ = 0, n_vars_ = 0, n_steps_ = 0;
  std::vector<double> data_;
};

struct FeatureMatrix {
  Matrix values;  // samples x (3 * vars * n_transformers)
  int iteration = 0;  // 1-based, matching reported iteration indices
  std::vector<AttractorSpec> transformers;
};

// Integrates every (sample, variable) cell from its encoded initial
// condition. Work is distributed over a worker pool; assembly is
// order-preserving, so results do not depend on the worker count.
TrajectoryTensor transform(const Matrix& X, const AttractorSpec& spec,
                           const IntegrationConfig& cfg, int n_threads = 0);

inline TrajectoryTensor transform(const Dataset& ds, const AttractorSpec& spec,
                                  const IntegrationConfig& cfg,
                                  int n_threads = 0) {
  return transform(ds.X, spec, cfg, n_threads);
}

// step is 0-based; the returned FeatureMatrix reports it 1-based.
FeatureMatrix slice_iteration(const TrajectoryTensor& t, Index step);

// Parallel transformers over the same input, concatenated at one iteration.
FeatureMatrix dual_transform(const Dataset& ds, const AttractorSpec& spec_a,
                             const AttractorSpec& spec_b,
                             const IntegrationConfig& cfg, Index step,
                             int n_threads = 0);

// Streaming alternative to materializing the tensor: advances all cells in
// lockstep and hands each iteration's feature matrix to the visitor. The
// visitor returns false to stop early. Memory stays O(samples * vars).
void for_each_iteration(
    const Matrix& X, const std::vector<AttractorSpec>& specs,
    const IntegrationConfig& cfg,
    const std::function<bool(int iteration_1based, const Matrix& features)>&
        visit,
    int n_threads = 0);

// Flat binary export with a self-describing header (dims, dt, specs).
void save_tensor(const std::string& path, const TrajectoryTensor& t);
TrajectoryTensor load_tensor(const std::string& path);

}  // namespace chaoslearn
