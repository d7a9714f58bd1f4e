#include "chaoslearn/transform.hpp"

#include <cstring>
#include <fstream>
#include <limits>
#include <mutex>

#include "chaoslearn/parallel.hpp"

namespace chaoslearn {

TrajectoryTensor::TrajectoryTensor(Index n_samples, Index n_vars,
                                   Index n_steps)
    : n_samples_(n_samples), n_vars_(n_vars), n_steps_(n_steps) {
  if (n_samples < 1 || n_vars < 1 || n_steps < 1)
    throw ConfigError("trajectory tensor dimensions must be positive");
  data_.assign(static_cast<std::size_t>(n_samples) *
                   static_cast<std::size_t>(n_vars) *
                   static_cast<std::size_t>(n_steps) * 3,
               0.0);
}

Matrix TrajectoryTensor::slice_matrix(Index step) const {
  if (step < 0 || step >= n_steps_)
    throw ConfigError("iteration index out of range");
  using RowMajor =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const std::size_t base = static_cast<std::size_t>(step) *
                           static_cast<std::size_t>(n_samples_) *
                           static_cast<std::size_t>(n_vars_) * 3;
  return Eigen::Map<const RowMajor>(data_.data() + base, n_samples_,
                                    n_vars_ * 3);
}

namespace {

struct CellError {
  Index sample = -1, var = -1;
  long step = 0;
  bool set = false;
};

[[noreturn]] void throw_cell(const CellError& e) {
  throw DivergenceError("chaotic transform diverged at sample " +
                            std::to_string(e.sample) + ", variable " +
                            std::to_string(e.var) + ", step " +
                            std::to_string(e.step),
                        e.step);
}

}  // namespace

TrajectoryTensor transform(const Matrix& X, const AttractorSpec& spec,
                           const IntegrationConfig& cfg, int n_threads) {
  cfg.validate();
  if (X.rows() < 1 || X.cols() < 1) throw DataError("empty input matrix");
  if (!X.allFinite()) throw DataError("input matrix has non-finite entries");

  TrajectoryTensor t(X.rows(), X.cols(), cfg.n_steps);
  t.dt = cfg.dt;
  t.specs = {spec};

  const Index n_cells = X.rows() * X.cols();
  std::mutex err_mutex;
  CellError first_error;

  parallel_for(
      n_cells,
      [&](Index begin, Index end) {
        for (Index cell = begin; cell < end; ++cell) {
          const Index i = cell / X.cols();
          const Index j = cell % X.cols();
          try {
            integrate_visit(spec, encode_initial(X(i, j)), cfg,
                            [&](int k, const Vec3& s) { t.set(i, j, k - 1, s); });
          } catch (const DivergenceError& e) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!first_error.set || i < first_error.sample ||
                (i == first_error.sample && j < first_error.var)) {
              first_error = {i, j, e.step(), true};
            }
            return;
          }
        }
      },
      n_threads);

  if (first_error.set) throw_cell(first_error);
  return t;
}

FeatureMatrix slice_iteration(const TrajectoryTensor& t, Index step) {
  FeatureMatrix f;
  f.values = t.slice_matrix(step);
  f.iteration = static_cast<int>(step) + 1;
  f.transformers = t.specs;
  return f;
}

FeatureMatrix dual_transform(const Dataset& ds, const AttractorSpec& spec_a,
                             const AttractorSpec& spec_b,
                             const IntegrationConfig& cfg, Index step,
                             int n_threads) {
  if (spec_a.kind() != spec_b.kind())
    throw ConfigError("dual transformers must share the attractor kind");
  const TrajectoryTensor ta = transform(ds.X, spec_a, cfg, n_threads);
  const TrajectoryTensor tb = transform(ds.X, spec_b, cfg, n_threads);
  FeatureMatrix f;
  f.values.resize(ds.n_samples(), 6 * ds.n_vars());
  f.values.leftCols(3 * ds.n_vars()) = ta.slice_matrix(step);
  f.values.rightCols(3 * ds.n_vars()) = tb.slice_matrix(step);
  f.iteration = static_cast<int>(step) + 1;
  f.transformers = {spec_a, spec_b};
  return f;
}

void for_each_iteration(
    const Matrix& X, const std::vector<AttractorSpec>& specs,
    const IntegrationConfig& cfg,
    const std::function<bool(int, const Matrix&)>& visit, int n_threads) {
  cfg.validate();
  if (specs.empty()) throw ConfigError("at least one transformer required");
  if (X.rows() < 1 || X.cols() < 1) throw DataError("empty input matrix");
  if (!X.allFinite()) throw DataError("input matrix has non-finite entries");

  const Index n = X.rows();
  const Index v = X.cols();
  const Index block = v * 3;
  const auto n_specs = static_cast<Index>(specs.size());

  // current states, one Vec3 per (sample, var, spec)
  std::vector<Vec3> states(static_cast<std::size_t>(n * v * n_specs));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < v; ++j)
      for (Index s = 0; s < n_specs; ++s)
        states[static_cast<std::size_t>((i * v + j) * n_specs + s)] =
            encode_initial(X(i, j));

  Matrix features(n, block * n_specs);
  std::mutex err_mutex;
  CellError first_error;

  for (int k = 1; k <= cfg.n_steps; ++k) {
    parallel_for(
        n,
        [&](Index begin, Index end) {
          for (Index i = begin; i < end; ++i) {
            for (Index j = 0; j < v; ++j) {
              for (Index s = 0; s < n_specs; ++s) {
                Vec3& st = states[static_cast<std::size_t>((i * v + j) * n_specs + s)];
                st = rk4_step(
                    [&](const Vec3& u) { return detail::flow(specs[static_cast<std::size_t>(s)], u); },
                    st, cfg.dt);
                if (!st.allFinite() ||
                    st.cwiseAbs().maxCoeff() > kDivergenceLimit) {
                  std::lock_guard<std::mutex> lock(err_mutex);
                  if (!first_error.set || i < first_error.sample ||
                      (i == first_error.sample && j < first_error.var))
                    first_error = {i, j, k, true};
                  return;
                }
                features.block(i, s * block + j * 3, 1, 3) = st.transpose();
              }
            }
          }
        },
        n_threads);
    if (first_error.set) throw_cell(first_error);
    if (!visit(k, features)) return;
  }
}

namespace {

constexpr char kTensorMagic[4] = {'C', 'L', 'T', 'R'};
constexpr std::uint32_t kTensorVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in, const std::string& path) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw DataError("'" + path + "': truncated tensor file");
  return v;
}

}  // namespace

void save_tensor(const std::string& path, const TrajectoryTensor& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out.write(kTensorMagic, 4);
  write_pod(out, kTensorVersion);
  write_pod(out, static_cast<std::uint64_t>(t.n_samples()));
  write_pod(out, static_cast<std::uint64_t>(t.n_vars()));
  write_pod(out, static_cast<std::uint64_t>(t.n_steps()));
  write_pod(out, t.dt);
  write_pod(out, static_cast<std::uint32_t>(t.specs.size()));
  for (const auto& spec : t.specs) {
    write_pod(out, static_cast<std::uint32_t>(spec.kind()));
    const auto params = spec.params();
    write_pod(out, static_cast<std::uint32_t>(params.size()));
    for (const auto& [name, value] : params) {
      write_pod(out, static_cast<std::uint32_t>(name.size()));
      out.write(name.data(), static_cast<long>(name.size()));
      write_pod(out, value);
    }
  }
  out.write(reinterpret_cast<const char*>(t.data().data()),
            static_cast<long>(t.data().size() * sizeof(double)));
  if (!out) throw DataError("write failed for '" + path + "'");
}

TrajectoryTensor load_tensor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kTensorMagic, 4) != 0)
    throw DataError("'" + path + "': not a trajectory tensor file");
  const auto version = read_pod<std::uint32_t>(in, path);
  if (version != kTensorVersion)
    throw DataError("'" + path + "': unsupported tensor version " +
                    std::to_string(version));
  const auto n_samples = read_pod<std::uint64_t>(in, path);
  const auto n_vars = read_pod<std::uint64_t>(in, path);
  const auto n_steps = read_pod<std::uint64_t>(in, path);
  TrajectoryTensor t(static_cast<Index>(n_samples), static_cast<Index>(n_vars),
                     static_cast<Index>(n_steps));
  t.dt = read_pod<double>(in, path);
  const auto n_specs = read_pod<std::uint32_t>(in, path);
  for (std::uint32_t s = 0; s < n_specs; ++s) {
    const auto kind = static_cast<AttractorKind>(read_pod<std::uint32_t>(in, path));
    const auto n_params = read_pod<std::uint32_t>(in, path);
    std::map<std::string, double> params;
    for (std::uint32_t i = 0; i < n_params; ++i) {
      const auto len = read_pod<std::uint32_t>(in, path);
      std::string name(len, '\0');
      in.read(name.data(), static_cast<long>(len));
      if (!in) throw DataError("'" + path + "': truncated tensor file");
      params[name] = read_pod<double>(in, path);
    }
    t.specs.push_back(AttractorSpec::make(kind, params));
  }
  in.read(reinterpret_cast<char*>(t.data().data()),
          static_cast<long>(t.data().size() * sizeof(double)));
  if (!in) throw DataError("'" + path + "': truncated tensor payload");
  return t;
}

}  // namespace chaoslearn
