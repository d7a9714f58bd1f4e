#include <doctest.h>

#include <cmath>

#include "chaoslearn/circuit.hpp"

using namespace chaoslearn;

TEST_CASE("resistor network to lorenz parameters") {
  CircuitConfig cfg;  // defaults: R8 back-solved so that R9 = 33k gives rho 28

  const LorenzParams p = resistors_to_params(cfg);
  CHECK(p.rho == doctest::Approx(28.0).epsilon(1e-9));
  CHECK(p.beta == doctest::Approx(8.0 / 3.0).epsilon(1e-9));

  SUBCASE("the 7.601k setting lands near rho = 97") {
    CircuitConfig hot = cfg;
    hot.r9 = 7601.0;
    CHECK(resistors_to_params(hot).rho == doctest::Approx(97.0).epsilon(2e-3));
  }

  SUBCASE("rho_to_r9 inverts the mapping to 1e-9 relative") {
    const double r9 = rho_to_r9(p.rho, cfg.r8);
    CHECK(r9 == doctest::Approx(cfg.r9).epsilon(1e-9));

    CircuitConfig round = cfg;
    round.r9 = rho_to_r9(42.0, cfg.r8);
    CHECK(resistors_to_params(round).rho == doctest::Approx(42.0).epsilon(1e-9));
  }

  SUBCASE("unreachable and invalid settings are rejected") {
    CHECK_THROWS_AS(rho_to_r9(0.0, cfg.r8), ConfigError);
    CHECK_THROWS_AS(rho_to_r9(1000.0, cfg.r8), ConfigError);  // r9 <= 0
    CircuitConfig bad = cfg;
    bad.r8 = -1.0;
    CHECK_THROWS_AS(resistors_to_params(bad), ConfigError);
  }
}

TEST_CASE("power budget") {
  CircuitConfig cfg;
  const PowerReport r = power_estimate(cfg);
  CHECK(r.total_mw == 351.0);  // 2 * 108 + 3 * 45
  CHECK(r.multipliers_mw == 216.0);
  CHECK(r.opamps_mw == 135.0);
  CHECK(r.total_mw == r.multipliers_mw + r.opamps_mw);
  CHECK(!r.note.empty());

  CircuitConfig none = cfg;
  none.n_multipliers = 0;
  none.n_opamps = 0;
  CHECK(power_estimate(none).total_mw == 0.0);

  CircuitConfig one = cfg;
  one.n_multipliers = 1;
  one.n_opamps = 1;
  CHECK(power_estimate(one).total_mw == 153.0);
}

TEST_CASE("behavioral circuit simulation") {
  CircuitConfig cfg;
  cfg.n_steps = 200;

  SUBCASE("zero input stays identically zero") {
    const auto traj = simulate_circuit(cfg, Vec3(0, 0, 0));
    REQUIRE(traj.size() == 200);
    for (const auto& v : traj) CHECK(v.norm() == 0.0);
  }

  SUBCASE("unit voltage scale reproduces the numerical flow exactly") {
    const LorenzParams p = resistors_to_params(cfg);
    const AttractorSpec spec =
        AttractorSpec::lorenz(cfg.sigma, p.beta, p.rho);
    const Vec3 init(1.0, 1.05, -1.0);
    const auto circuit = simulate_circuit(cfg, init);
    const auto numerical =
        integrate(spec, init, IntegrationConfig{cfg.tau_per_step, cfg.n_steps});
    REQUIRE(circuit.size() == numerical.size());
    for (std::size_t k = 0; k < circuit.size(); ++k)
      CHECK((circuit[k] - numerical[k]).norm() <=
            1e-9 * numerical[k].norm());
  }

  SUBCASE("voltage scale is a pure similarity transform") {
    CircuitConfig scaled = cfg;
    scaled.voltage_scale = 2.5;
    const Vec3 init(0.4, 0.42, -0.4);  // dimensionless state 0.16...
    const auto a = simulate_circuit(cfg, init / 2.5);
    const auto b = simulate_circuit(scaled, init);
    for (std::size_t k = 0; k < a.size(); ++k)
      CHECK((2.5 * a[k] - b[k]).norm() < 1e-12 * b[k].norm() + 1e-15);
  }

  SUBCASE("config validation") {
    CircuitConfig bad = cfg;
    bad.dt = 0.0;
    CHECK_THROWS_AS(simulate_circuit(bad, Vec3(0, 0, 0)), ConfigError);
    bad = cfg;
    bad.n_steps = 0;
    CHECK_THROWS_AS(simulate_circuit(bad, Vec3(0, 0, 0)), ConfigError);
    bad = cfg;
    bad.voltage_scale = -1.0;
    CHECK_THROWS_AS(simulate_circuit(bad, Vec3(0, 0, 0)), ConfigError);
  }
}
