#pragma once

#include <stdexcept>

#include "mlpode/mlp.hpp"
#include "mlpode/problem.hpp"

namespace mlpode {

class NoReferenceError : public std::runtime_error {
 public:
  explicit NoReferenceError(const std::string& problem)
      : std::runtime_error("no reference available for problem " + problem) {}
};

struct BaselineParams {
  int steps = 1;    ///< K, uniform Euler grid size on [0, horizon]
  int samples = 1;  ///< M, fresh Z draws per grid node
};

void validate(const BaselineParams& params);

/**
 * Plain Monte Carlo Euler-Picard scheme on [0, horizon]:
 *
 *   Y_0 = xi,  Y_{j+1} = Y_j + (T/K) (1/M) sum_{i=1}^M F(Y_j, Z_{j,i}).
 *
 * Node j draws its M samples sequentially from stream.spawn(j). Bias is
 * O(1/K) and noise O(1/sqrt(KM)), so RMSE eps costs K*M ~ eps^-3 draws.
 */
Vector mc_euler(const ExpectationOdeProblem& problem, const BaselineParams& params,
                const SplittableStream& stream, CostLedger& ledger);

/// Deterministic X(t). Uses closed_form when present, otherwise classical
/// RK4 on x' = exact_mean_drift(x) with the given step and a shortened final
/// step landing exactly on t.
Vector reference_solve(const ExpectationOdeProblem& problem, double t, double step);

/// RK4 on the mean drift regardless of closed_form availability.
Vector rk4_solve(const ExpectationOdeProblem& problem, double t, double step);

}  // namespace mlpode
