#include "chaoslearn/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chaoslearn {

namespace {

const std::vector<std::string>& names_for(AttractorKind kind) {
  static const std::vector<std::string> lorenz{"sigma", "beta", "rho"};
  static const std::vector<std::string> abc{"a", "b", "c"};
  static const std::vector<std::string> abcd{"a", "b", "c", "d"};
  static const std::vector<std::string> ab{"a", "b"};
  switch (kind) {
    case AttractorKind::Lorenz:
      return lorenz;
    case AttractorKind::Rossler:
    case AttractorKind::Chen:
      return abc;
    case AttractorKind::Chua:
      return abcd;
    case AttractorKind::BurkeShaw:
    case AttractorKind::Sprott:
      return ab;
  }
  throw Error("unknown attractor kind");
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

}  // namespace

const char* to_string(AttractorKind kind) {
  switch (kind) {
    case AttractorKind::Lorenz:
      return "lorenz";
    case AttractorKind::Rossler:
      return "rossler";
    case AttractorKind::Chen:
      return "chen";
    case AttractorKind::Chua:
      return "chua";
    case AttractorKind::BurkeShaw:
      return "burke-shaw";
    case AttractorKind::Sprott:
      return "sprott";
  }
  return "?";
}

AttractorKind attractor_kind_from_string(const std::string& name) {
  if (name == "lorenz") return AttractorKind::Lorenz;
  if (name == "rossler") return AttractorKind::Rossler;
  if (name == "chen") return AttractorKind::Chen;
  if (name == "chua") return AttractorKind::Chua;
  if (name == "burke-shaw") return AttractorKind::BurkeShaw;
  if (name == "sprott") return AttractorKind::Sprott;
  throw ConfigError("unknown attractor kind '" + name + "'");
}

AttractorSpec AttractorSpec::make(AttractorKind kind,
                                  const std::map<std::string, double>& params) {
  const auto& names = names_for(kind);
  if (params.size() != names.size()) {
    std::ostringstream msg;
    msg << "attractor '" << to_string(kind) << "' requires exactly parameters {"
        << join_names(names) << "}, got " << params.size() << " value(s)";
    throw ConfigError(msg.str());
  }
  std::array<double, 4> p{};
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = params.find(names[i]);
    if (it == params.end())
      throw ConfigError("attractor '" + std::string(to_string(kind)) +
                        "' is missing parameter '" + names[i] + "'");
    if (!std::isfinite(it->second))
      throw ConfigError("attractor parameter '" + names[i] +
                        "' must be finite");
    p[i] = it->second;
  }
  return AttractorSpec(kind, p);
}

AttractorSpec AttractorSpec::lorenz(double sigma, double beta, double rho) {
  return make(AttractorKind::Lorenz,
              {{"sigma", sigma}, {"beta", beta}, {"rho", rho}});
}

AttractorSpec AttractorSpec::rossler(double a, double b, double c) {
  return make(AttractorKind::Rossler, {{"a", a}, {"b", b}, {"c", c}});
}

AttractorSpec AttractorSpec::chen(double a, double b, double c) {
  return make(AttractorKind::Chen, {{"a", a}, {"b", b}, {"c", c}});
}

AttractorSpec AttractorSpec::chua(double a, double b, double c, double d) {
  return make(AttractorKind::Chua, {{"a", a}, {"b", b}, {"c", c}, {"d", d}});
}

AttractorSpec AttractorSpec::burke_shaw(double a, double b) {
  return make(AttractorKind::BurkeShaw, {{"a", a}, {"b", b}});
}

AttractorSpec AttractorSpec::sprott(double a, double b) {
  return make(AttractorKind::Sprott, {{"a", a}, {"b", b}});
}

AttractorSpec AttractorSpec::reference_defaults(AttractorKind kind) {
  switch (kind) {
    case AttractorKind::Lorenz:
      return lorenz(10.0, 8.0 / 3.0, 28.0);
    case AttractorKind::Rossler:
      return rossler(0.2, 0.2, 5.7);
    case AttractorKind::Chen:
      return chen(60.0, 2.667, 97.0);
    case AttractorKind::Chua:
      return chua(9.0, 100.0 / 7.0, 8.0 / 7.0, 5.0 / 7.0);
    case AttractorKind::BurkeShaw:
      return burke_shaw(10.0, 4.272);
    case AttractorKind::Sprott:
      return sprott(2.07, 1.79);
  }
  throw Error("unknown attractor kind");
}

const std::vector<std::string>& AttractorSpec::param_names() const {
  return names_for(kind_);
}

double AttractorSpec::param(const std::string& name) const {
  const auto& names = names_for(kind_);
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return p_[i];
  throw ConfigError("attractor '" + std::string(to_string(kind_)) +
                    "' has no parameter '" + name + "'");
}

std::map<std::string, double> AttractorSpec::params() const {
  std::map<std::string, double> out;
  const auto& names = names_for(kind_);
  for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = p_[i];
  return out;
}

AttractorSpec AttractorSpec::with_param(const std::string& name,
                                        double value) const {
  auto p = params();
  if (p.find(name) == p.end())
    throw ConfigError("attractor '" + std::string(to_string(kind_)) +
                      "' has no parameter '" + name + "'");
  p[name] = value;
  return make(kind_, p);
}

std::vector<Vec3> integrate(const AttractorSpec& spec, const Vec3& init,
                            const IntegrationConfig& cfg) {
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(cfg.n_steps));
  integrate_visit(spec, init, cfg,
                  [&out](int, const Vec3& s) { out.push_back(s); });
  return out;
}

}  // namespace chaoslearn
