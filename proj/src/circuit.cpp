#include "chaoslearn/circuit.hpp"

namespace chaoslearn {

void CircuitConfig::validate() const {
  if (!(r4 > 0 && r5 >= 0 && r8 > 0 && r9 > 0))
    throw ConfigError("circuit resistances must be positive");
  if (!(dt > 0)) throw ConfigError("circuit dt must be positive");
  if (n_steps < 1) throw ConfigError("circuit n_steps must be >= 1");
  if (!(tau_per_step > 0)) throw ConfigError("tau_per_step must be positive");
  if (!(voltage_scale > 0)) throw ConfigError("voltage_scale must be positive");
  if (n_multipliers < 0 || n_opamps < 0)
    throw ConfigError("component counts must be >= 0");
}

LorenzParams resistors_to_params(const CircuitConfig& cfg) {
  cfg.validate();
  LorenzParams p;
  p.rho = 1e6 / (cfg.r8 + cfg.r9);
  p.beta = 1e6 / (cfg.r4 + cfg.r5);
  if (!(p.rho > 0) || !(p.beta > 0))
    throw ConfigError("resistor network yields non-positive parameters");
  return p;
}

double rho_to_r9(double rho, double r8) {
  if (!(rho > 0)) throw ConfigError("rho must be positive");
  const double r9 = 1e6 / rho - r8;
  if (!(r9 > 0))
    throw ConfigError("requested rho is not reachable with this R8");
  return r9;
}

std::vector<Vec3> simulate_circuit(const CircuitConfig& cfg,
                                   const Vec3& init_voltages) {
  cfg.validate();
  const LorenzParams p = resistors_to_params(cfg);
  const AttractorSpec spec = AttractorSpec::lorenz(cfg.sigma, p.beta, p.rho);

  IntegrationConfig ic;
  ic.dt = cfg.tau_per_step;
  ic.n_steps = cfg.n_steps;

  const Vec3 init = init_voltages / cfg.voltage_scale;
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(cfg.n_steps));
  integrate_visit(spec, init, ic, [&](int, const Vec3& s) {
    out.push_back(cfg.voltage_scale * s);
  });
  return out;
}

PowerReport power_estimate(const CircuitConfig& cfg) {
  if (cfg.n_multipliers < 0 || cfg.n_opamps < 0)
    throw ConfigError("component counts must be >= 0");
  PowerReport r;
  r.n_multipliers = cfg.n_multipliers;
  r.n_opamps = cfg.n_opamps;
  r.multipliers_mw = r.mw_per_multiplier * cfg.n_multipliers;
  r.opamps_mw = r.mw_per_opamp * cfg.n_opamps;
  r.total_mw = r.multipliers_mw + r.opamps_mw;
  r.note =
      "maximum-supply bound; oscillatory operation draws less than this "
      "figure";
  return r;
}

}  // namespace chaoslearn
