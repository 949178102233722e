#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "mlpode/problem.hpp"

namespace mlpode {

/// Exact nonnegative counts; costs grow like (3m)^n and overflow 64 bits
/// well inside the range the iteration schedule asks about.
using BigCount = boost::multiprecision::cpp_int;

struct MlpParams {
  int n = 0;        ///< Picard level
  int m = 1;        ///< Monte Carlo base
  double t = 0.0;   ///< evaluation time in [0, horizon]
};

/// Throws std::invalid_argument unless n >= 0, m >= 1, 0 <= t <= horizon and
/// the sample counts m^k fit the machine.
void validate(const MlpParams& params, const ExpectationOdeProblem& problem);

/// Work counters. `z_draws` is the number of realizations of Z consumed.
struct CostLedger {
  std::uint64_t z_draws = 0;
  std::uint64_t uniform_draws = 0;
  std::uint64_t f_evals = 0;

  CostLedger& operator+=(const CostLedger& other) noexcept {
    z_draws += other.z_draws;
    uniform_draws += other.uniform_draws;
    f_evals += other.f_evals;
    return *this;
  }
  friend CostLedger operator+(CostLedger a, const CostLedger& b) noexcept {
    return a += b;
  }
  friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

/**
 * One realization of the multilevel Picard approximation X_{n,m}(t):
 *
 *   X_{n,m}(t) = xi + (t / m^n) sum_{k=1}^{m^n} F(xi, Z_{0,k})
 *              + sum_{l=1}^{n-1} (t / m^{n-l}) sum_{k=1}^{m^{n-l}}
 *                  [ F(X_{l,m}^{(l,k)}(r t), Z_{l,k}) - F(X_{l-1,m}^{(l,-k)}(r t), Z_{l,k}) ]
 *
 * with the base term dropped for n = 0. Stream layout relative to `stream`
 * (path suffixes, frozen for reproducibility):
 *
 *   [0, k]      base sample Z_{0,k}, k = 1..m^n
 *   [l, k]      draws r (uniform) then Z_{l,k}; also the stream handed to
 *               the level-l inner recursion
 *   [l, -k]     stream handed to the level-(l-1) inner recursion
 *
 * Both inner recursions of a difference term see the same time r*t and the
 * same Z_{l,k}. Evaluation is depth-first, levels ascending, k ascending,
 * with sequential double accumulation; each inner sum is averaged before
 * being scaled by t.
 *
 * `ledger` accumulates; after one call on a fresh ledger z_draws equals
 * rv_exact(n, m).
 */
Vector mlp_estimate(const ExpectationOdeProblem& problem, const MlpParams& params,
                    const SplittableStream& stream, CostLedger& ledger);

/// RV(0,m) = 0, RV(n,m) = m^n + sum_{l=1}^{n-1} m^{n-l} (1 + RV(l,m) + RV(l-1,m)).
BigCount rv_exact(int n, int m);

/// (3m)^n, an upper bound on rv_exact for n >= 1.
BigCount rv_bound(int n, int m);

/// Drift evaluations of one mlp_estimate call: every Z draw costs one
/// evaluation and every difference term one more, throughout the recursion.
BigCount f_evals_exact(int n, int m);

/// Uniform draws of one mlp_estimate call (one per difference term).
BigCount uniform_draws_exact(int n, int m);

}  // namespace mlpode
