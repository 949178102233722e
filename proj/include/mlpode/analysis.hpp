#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mlpode/mlp.hpp"
#include "mlpode/problem.hpp"

namespace mlpode {

/// Constants entering the a priori and error bounds.
struct BoundInputs {
  double horizon = 0.0;
  double lipschitz = 0.0;
  double f_xi_second_moment = 0.0;

  static BoundInputs from(const ExpectationOdeProblem& problem);

  /// C = T sqrt(E|F(xi,Z)|^2) e^{LT}; also the a priori bound on |X(t) - xi|.
  [[nodiscard]] double constant() const;
};

/// Upper bound on the RMSE of X_{n,m}(T):
///   T sqrt(E|F(xi,Z)|^2) (1+2LT)^n e^{LT + m/2} / m^{n/2}.
/// Evaluated in log space; returns +inf on overflow and 0 when T or the
/// second moment vanishes.
double error_bound(const BoundInputs& inputs, int n, int m);

/// C e^{m/2} (1+2LT)^m m^{-m/2}, the diagonal tail term.
double schedule_term(const BoundInputs& inputs, int m);

/// sup_{m >= n} schedule_term(m). The term decreases once m >= (1+2LT)^2,
/// so the supremum is a finite maximum over [n, max(n, ceil((1+2LT)^2) + 1)].
double schedule_tail_max(const BoundInputs& inputs, int n);

struct Schedule {
  double epsilon = 1.0;
  int n_epsilon = 1;
  int mathfrak_n = 0;    ///< offset added to the summation range of the cost
  double tail_max = 0.0; ///< schedule_tail_max at n_epsilon
  BigCount total_cost;   ///< sum_{n=1}^{n_epsilon + mathfrak_n} rv_exact(n, n)
};

/// Least n with schedule_tail_max(n) <= epsilon. epsilon must lie in (0, 1].
Schedule n_epsilon(const BoundInputs& inputs, double epsilon, int mathfrak_n = 0);

enum class Scheme { mlp, mc_euler };

std::string_view to_string(Scheme scheme);
/// Throws std::invalid_argument for anything but "mlp" / "mc_euler".
Scheme parse_scheme(std::string_view text);

/// (n, m) for mlp, (K, M) for mc_euler.
struct GridPoint {
  int first = 0;
  int second = 1;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

struct RmseRow {
  Scheme scheme = Scheme::mlp;
  int n = 0;
  int m = 1;
  std::uint64_t replications = 0;
  double rmse = 0.0;
  double bound = 0.0;            ///< error_bound(n, m); NaN for mc_euler
  std::uint64_t z_draws = 0;     ///< per realization
  BigCount rv_bound;             ///< (3m)^n for mlp, K*M for mc_euler
  double wall_ms = 0.0;
  bool valid = true;             ///< false if any realization was non-finite
};

struct RmseReport {
  std::string problem;
  Scheme scheme = Scheme::mlp;
  std::uint64_t seed = 0;
  double horizon = 0.0;
  Vector reference;
  std::vector<RmseRow> rows;

  [[nodiscard]] bool all_valid() const;
};

struct ExperimentOptions {
  Scheme scheme = Scheme::mlp;
  std::vector<GridPoint> grid;
  std::uint64_t replications = 2;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double reference_step = 1e-4;
  bool record_wall_time = false;
  std::function<void(const RmseRow&)> on_row;
};

/**
 * Empirical RMSE at t = horizon against the deterministic reference.
 *
 * Replication j (1-based) of every grid point uses root(seed).spawn(j).
 * Squared errors are stored per replication and summed in j order, so the
 * result does not depend on `threads`. wall_ms stays 0 unless
 * record_wall_time is set, which keeps reports byte-reproducible.
 */
RmseReport rmse_experiment(const ExpectationOdeProblem& problem,
                           const ExperimentOptions& options);

class InsufficientDataError : public std::runtime_error {
 public:
  InsufficientDataError()
      : std::runtime_error("insufficient data: need at least 3 valid rows with positive rmse") {}
};

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares of log(total Z draws of the row, z_draws * R)
/// against log(1 / rmse) over valid rows with rmse > 0. The slope estimates
/// the cost exponent in cost ~ rmse^-slope.
PowerLawFit complexity_fit(const RmseReport& report);

/// CSV with header scheme,n,m,R,rmse,bound,rv_exact,rv_bound,wall_ms,seed.
std::string to_csv(const RmseReport& report);

}  // namespace mlpode
