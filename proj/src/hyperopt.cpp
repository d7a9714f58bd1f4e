#include "chaoslearn/hyperopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chaoslearn/rng.hpp"

namespace chaoslearn {

void SearchSpace::validate() const {
  if (params.empty() || params.size() > 3)
    throw ConfigError("search space must have 1 to 3 free parameters");
  for (const auto& p : params)
    if (!(p.lo < p.hi) || !std::isfinite(p.lo) || !std::isfinite(p.hi))
      throw ConfigError("parameter '" + p.name + "' needs lo < hi, finite");
}

const char* to_string(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::Grid:
      return "grid";
    case SearchStrategy::Random:
      return "random";
    case SearchStrategy::CoarseToFine:
      return "coarse-to-fine";
  }
  return "?";
}

SearchStrategy search_strategy_from_string(const std::string& name) {
  if (name == "grid") return SearchStrategy::Grid;
  if (name == "random") return SearchStrategy::Random;
  if (name == "coarse-to-fine") return SearchStrategy::CoarseToFine;
  throw ConfigError("unknown search strategy '" + name + "'");
}

namespace {

double guarded_eval(const Objective& objective, const Vector& x) {
  double v;
  try {
    v = objective(x);
  } catch (const std::exception&) {
    return std::numeric_limits<double>::infinity();
  }
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

void record(OptResult& r, const Vector& x, double v) {
  r.log.push_back({x, v});
  if (r.log.size() == 1 || v < r.best_value) {
    r.best = x;
    r.best_value = v;
  }
}

// axis-aligned lattice over [lo, hi]^dim with n points per axis, endpoints
// included, evaluated in lexicographic order up to the budget
void grid_pass(const Objective& objective, const std::vector<ParamRange>& box,
               int per_axis, int budget, OptResult& r) {
  const auto dim = static_cast<int>(box.size());
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  int evaluated = 0;
  while (evaluated < budget) {
    Vector x(dim);
    for (int d = 0; d < dim; ++d) {
      const auto& p = box[static_cast<std::size_t>(d)];
      x[d] = per_axis == 1
                 ? 0.5 * (p.lo + p.hi)
                 : p.lo + (p.hi - p.lo) * idx[static_cast<std::size_t>(d)] /
                              static_cast<double>(per_axis - 1);
    }
    record(r, x, guarded_eval(objective, x));
    ++evaluated;

    int d = dim - 1;
    while (d >= 0 && ++idx[static_cast<std::size_t>(d)] == per_axis) {
      idx[static_cast<std::size_t>(d)] = 0;
      --d;
    }
    if (d < 0) break;  // lattice exhausted
  }
}

int lattice_side(int budget, int dim) {
  int n = static_cast<int>(std::floor(std::pow(static_cast<double>(budget),
                                               1.0 / dim)));
  return std::max(n, 1);
}

}  // namespace

OptResult optimize(const Objective& objective, const SearchSpace& space,
                   int budget, SearchStrategy strategy, std::uint64_t seed) {
  space.validate();
  if (budget < 1) throw ConfigError("budget must be >= 1");
  const auto dim = static_cast<int>(space.params.size());

  OptResult r;
  switch (strategy) {
    case SearchStrategy::Grid: {
      grid_pass(objective, space.params, lattice_side(budget, dim), budget, r);
      break;
    }
    case SearchStrategy::Random: {
      Rng rng(seed);
      for (int e = 0; e < budget; ++e) {
        Vector x(dim);
        for (int d = 0; d < dim; ++d)
          x[d] = rng.uniform(space.params[static_cast<std::size_t>(d)].lo,
                             space.params[static_cast<std::size_t>(d)].hi);
        record(r, x, guarded_eval(objective, x));
      }
      break;
    }
    case SearchStrategy::CoarseToFine: {
      // coarse lattice on half the budget, then two shrinking passes
      // centred on the incumbent
      const int coarse = std::max(budget / 2, 1);
      grid_pass(objective, space.params, lattice_side(coarse, dim), coarse, r);

      int remaining = budget - static_cast<int>(r.log.size());
      double shrink = 0.25;
      for (int round = 0; round < 2 && remaining > 0; ++round) {
        const int this_round =
            round == 0 ? (remaining + 1) / 2 : remaining;
        std::vector<ParamRange> box = space.params;
        for (int d = 0; d < dim; ++d) {
          auto& p = box[static_cast<std::size_t>(d)];
          const double full = space.params[static_cast<std::size_t>(d)].hi -
                              space.params[static_cast<std::size_t>(d)].lo;
          const double half_span = 0.5 * shrink * full;
          const double c = r.best[d];
          p.lo = std::max(space.params[static_cast<std::size_t>(d)].lo, c - half_span);
          p.hi = std::min(space.params[static_cast<std::size_t>(d)].hi, c + half_span);
          if (!(p.lo < p.hi)) {  // collapsed against a bound
            p.lo = space.params[static_cast<std::size_t>(d)].lo;
            p.hi = space.params[static_cast<std::size_t>(d)].hi;
          }
        }
        grid_pass(objective, box, lattice_side(this_round, dim), this_round, r);
        remaining = budget - static_cast<int>(r.log.size());
        shrink *= 0.25;
      }
      break;
    }
  }
  return r;
}

OptResult optimize_dual_rho(
    const std::function<double(double, double)>& objective,
    const ParamRange& rho_range, int budget, std::uint64_t seed) {
  SearchSpace space;
  space.params = {{"rho1", rho_range.lo, rho_range.hi},
                  {"rho2", rho_range.lo, rho_range.hi}};
  OptResult r = optimize(
      [&objective](const Vector& x) { return objective(x[0], x[1]); }, space,
      budget, SearchStrategy::CoarseToFine, seed);
  if (r.best.size() == 2 && r.best[0] > r.best[1])
    std::swap(r.best[0], r.best[1]);
  return r;
}

}  // namespace chaoslearn
