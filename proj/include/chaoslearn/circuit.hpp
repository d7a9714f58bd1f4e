#pragma once

#include <string>
#include <vector>

#include "chaoslearn/attractor.hpp"
#include "chaoslearn/types.hpp"

namespace chaoslearn {

// Behavioral model of the analog Lorenz circuit. Parameters come from the
// resistor network (rho = 1 MOhm / (R8+R9), beta = 1 MOhm / (R4+R5)); one
// circuit step of dt seconds advances dimensionless flow time by
// tau_per_step, which keeps iteration indices aligned with numerical runs
// at the default ratio.
struct CircuitConfig {
  double r4 = 300000.0;  // Ohm
  double r5 = 75000.0;   // R4+R5 = 375 kOhm -> beta = 8/3
  double r8 = 2714.2857142857142;
  double r9 = 33000.0;   // R8+R9 -> rho = 28
  double sigma = 10.0;
  double dt = 1e-5;      // seconds per circuit step
  int n_steps = 1000;
  double tau_per_step = 1e-2;
  double voltage_scale = 1.0;  // volts per dimensionless unit
  int n_multipliers = 2;
  int n_opamps = 3;

  void validate() const;
};

struct LorenzParams {
  double rho = 0.0;
  double beta = 0.0;
};

LorenzParams resistors_to_params(const CircuitConfig& cfg);
double rho_to_r9(double rho, double r8);

// Voltage trajectory of the circuit from the given initial node voltages.
std::vector<Vec3> simulate_circuit(const CircuitConfig& cfg,
                                   const Vec3& init_voltages);

struct PowerReport {
  double mw_per_multiplier = 108.0;
  double mw_per_opamp = 45.0;
  int n_multipliers = 0;
  int n_opamps = 0;
  double multipliers_mw = 0.0;
  double opamps_mw = 0.0;
  double total_mw = 0.0;
  std::string note;
};

// Maximum-supply power bound per transformer unit.
PowerReport power_estimate(const CircuitConfig& cfg);

}  // namespace chaoslearn
