#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "chaoslearn/error.hpp"
#include "chaoslearn/types.hpp"

namespace chaoslearn {

enum class AttractorKind { Lorenz, Rossler, Chen, Chua, BurkeShaw, Sprott };

const char* to_string(AttractorKind kind);
AttractorKind attractor_kind_from_string(const std::string& name);

// A chaotic flow plus its named coefficients. Construction validates that
// the parameter set matches the flow exactly (no missing or extra names)
// and that every value is finite.
class AttractorSpec {
 public:
  static AttractorSpec lorenz(double sigma, double beta, double rho);
  static AttractorSpec rossler(double a, double b, double c);
  static AttractorSpec chen(double a, double b, double c);
  static AttractorSpec chua(double a, double b, double c, double d);
  static AttractorSpec burke_shaw(double a, double b);
  static AttractorSpec sprott(double a, double b);

  static AttractorSpec make(AttractorKind kind,
                            const std::map<std::string, double>& params);

  // Coefficients used in the paper's attractor comparison for each flow.
  static AttractorSpec reference_defaults(AttractorKind kind);

  AttractorKind kind() const { return kind_; }
  const std::vector<std::string>& param_names() const;
  double param(const std::string& name) const;
  std::map<std::string, double> params() const;
  AttractorSpec with_param(const std::string& name, double value) const;

  // positional access in canonical order; hot-path only
  double raw(int i) const { return p_[static_cast<std::size_t>(i)]; }

  bool operator==(const AttractorSpec& other) const {
    return kind_ == other.kind_ && p_ == other.p_;
  }

 private:
  AttractorSpec(AttractorKind kind, std::array<double, 4> p)
      : kind_(kind), p_(p) {}

  AttractorKind kind_;
  std::array<double, 4> p_{};
};

struct IntegrationConfig {
  double dt = 1e-2;
  int n_steps = 100;

  void validate() const {
    if (!(dt > 0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
    if (n_steps < 1) throw ConfigError("n_steps must be >= 1");
  }
};

// Any trajectory component beyond this magnitude counts as divergence.
inline constexpr double kDivergenceLimit = 1e6;

namespace detail {

// Flow right-hand sides without the finiteness guard; integrators check
// the produced state once per step instead.
inline Vec3 flow(const AttractorSpec& spec, const Vec3& s) {
  const double x = s[0], y = s[1], z = s[2];
  switch (spec.kind()) {
    case AttractorKind::Lorenz: {
      const double sigma = spec.raw(0), beta = spec.raw(1), rho = spec.raw(2);
      return Vec3(-sigma * x + sigma * y, -x * z + rho * x - y,
                  x * y - beta * z);
    }
    case AttractorKind::Rossler: {
      const double a = spec.raw(0), b = spec.raw(1), c = spec.raw(2);
      return Vec3(-y - z, x + a * y, b + z * (x - c));
    }
    case AttractorKind::Chen: {
      const double a = spec.raw(0), b = spec.raw(1), c = spec.raw(2);
      return Vec3(a * (y - x), (c - a) * x - x * z + c * y, x * y - b * z);
    }
    case AttractorKind::Chua: {
      const double a = spec.raw(0), b = spec.raw(1);
      const double m0 = -spec.raw(2), m1 = -spec.raw(3);
      const double fx = m1 * x + 0.5 * (m0 - m1) *
                                     (std::abs(x + 1.0) - std::abs(x - 1.0));
      return Vec3(a * (y - x - fx), x - y + z, -b * y);
    }
    case AttractorKind::BurkeShaw: {
      const double a = spec.raw(0), b = spec.raw(1);
      return Vec3(-a * (x + y), -y - a * x * z, a * x * y + b);
    }
    case AttractorKind::Sprott: {
      const double a = spec.raw(0), b = spec.raw(1);
      return Vec3(y + a * x * y + x * z, 1.0 - b * x * x + y * z,
                  x - x * x - y * y);
    }
  }
  throw Error("unknown attractor kind");
}

}  // namespace detail

inline Vec3 derivative(const AttractorSpec& spec, const Vec3& s) {
  if (!s.allFinite()) throw Error("non-finite state");
  return detail::flow(spec, s);
}

// Classical fourth-order Runge-Kutta update for an arbitrary autonomous
// right-hand side f: Vec3 -> Vec3.
template <typename F>
Vec3 rk4_step(F&& f, const Vec3& s, double dt) {
  const Vec3 k1 = f(s);
  const Vec3 k2 = f(Vec3(s + (0.5 * dt) * k1));
  const Vec3 k3 = f(Vec3(s + (0.5 * dt) * k2));
  const Vec3 k4 = f(Vec3(s + dt * k3));
  return s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline Vec3 rk4_step(const AttractorSpec& spec, const Vec3& s, double dt) {
  if (!(dt > 0)) throw ConfigError("dt must be positive");
  if (!s.allFinite()) throw Error("non-finite state");
  Vec3 next =
      rk4_step([&spec](const Vec3& u) { return detail::flow(spec, u); }, s, dt);
  if (!next.allFinite() || next.cwiseAbs().maxCoeff() > kDivergenceLimit)
    throw DivergenceError("trajectory diverged", 1);
  return next;
}

// Advances the flow n_steps times, invoking visit(k, state) with the state
// after k steps (k = 1..n_steps). The initial state itself is not visited.
template <typename Visitor>
void integrate_visit(const AttractorSpec& spec, const Vec3& init,
                     const IntegrationConfig& cfg, Visitor&& visit) {
  cfg.validate();
  if (!init.allFinite()) throw Error("non-finite state");
  Vec3 s = init;
  for (int k = 1; k <= cfg.n_steps; ++k) {
    s = rk4_step([&spec](const Vec3& u) { return detail::flow(spec, u); }, s,
                 cfg.dt);
    if (!s.allFinite() || s.cwiseAbs().maxCoeff() > kDivergenceLimit)
      throw DivergenceError("trajectory diverged at step " + std::to_string(k),
                            k);
    visit(k, s);
  }
}

std::vector<Vec3> integrate(const AttractorSpec& spec, const Vec3& init,
                            const IntegrationConfig& cfg);

}  // namespace chaoslearn
