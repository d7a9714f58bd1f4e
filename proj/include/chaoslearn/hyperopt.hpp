#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chaoslearn/error.hpp"
#include "chaoslearn/types.hpp"

namespace chaoslearn {

struct ParamRange {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
};

// Closed intervals for up to three free parameters; anything fixed stays in
// the objective's closure.
struct SearchSpace {
  std::vector<ParamRange> params;
  void validate() const;
};

struct Evaluation {
  Vector x;
  double value = 0.0;
};

struct OptResult {
  Vector best;
  double best_value = 0.0;
  std::vector<Evaluation> log;
};

enum class SearchStrategy { Grid, Random, CoarseToFine };

const char* to_string(SearchStrategy s);
SearchStrategy search_strategy_from_string(const std::string& name);

using Objective = std::function<double(const Vector&)>;

// Derivative-free minimization. Objective failures (exceptions or
// non-finite values) are logged as +inf and skipped. Deterministic per
// (strategy, seed, budget).
OptResult optimize(const Objective& objective, const SearchSpace& space,
                   int budget, SearchStrategy strategy = SearchStrategy::CoarseToFine,
                   std::uint64_t seed = 0);

// Two-transformer rho search; the reported optimum is ordered rho1 <= rho2.
OptResult optimize_dual_rho(
    const std::function<double(double, double)>& objective,
    const ParamRange& rho_range, int budget, std::uint64_t seed = 0);

}  // namespace chaoslearn
