#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mlpode/rng.hpp"
#include "mlpode/vector.hpp"

namespace mlpode {

/// One realization of the random input Z. The payload is opaque to the
/// solvers; only the problem's drift interprets it.
struct ZSample {
  boost::container::small_vector<double, 2> payload;
};

class UnknownProblemError : public std::invalid_argument {
 public:
  explicit UnknownProblemError(const std::string& name)
      : std::invalid_argument("unknown problem: " + name) {}
};

/**
 * ODE whose right-hand side is an expectation over a random field:
 *
 *   X(t) = xi + int_0^t E[F(X(r), Z)] dr,   t in [0, horizon].
 *
 * `lipschitz` is the constant L in |F(x,z) - F(y,z)| <= L |x - y| (Euclidean
 * norm) uniformly in z. `f_xi_second_moment` is E|F(xi, Z)|^2, declared up
 * front because the error bounds depend on it.
 *
 * Values are immutable after construction; sample_z and drift must be pure
 * functions of their arguments so problems can be shared between threads.
 */
struct ExpectationOdeProblem {
  using Sampler = std::function<ZSample(SplittableStream&)>;
  using Drift = std::function<Vector(const Vector&, const ZSample&)>;
  using MeanDrift = std::function<Vector(const Vector&)>;
  using ClosedForm = std::function<Vector(double)>;

  std::string name;
  std::size_t dim = 1;
  Vector xi;
  double horizon = 0.0;
  double lipschitz = 0.0;
  Sampler sample_z;
  Drift drift;
  std::optional<MeanDrift> exact_mean_drift;
  std::optional<ClosedForm> closed_form;
  double f_xi_second_moment = 0.0;

  [[nodiscard]] bool has_reference() const {
    return closed_form.has_value() || exact_mean_drift.has_value();
  }
};

/// Throws std::invalid_argument when a structural invariant is violated
/// (dimension mismatch, negative horizon/L, missing callables, ...).
void validate(const ExpectationOdeProblem& problem);

/// Names of the built-in problems, sorted.
std::vector<std::string> builtin_names();

/// Throws UnknownProblemError for names outside builtin_names().
ExpectationOdeProblem builtin(std::string_view name);

/// Largest observed ratio |F(x,z) - F(y,z)| / |x - y| over `pairs` random
/// triples (x, y, z) with x, y drawn from [-scale, scale]^d.
double max_lipschitz_ratio(const ExpectationOdeProblem& problem,
                           SplittableStream stream, std::size_t pairs,
                           double scale = 10.0);

struct MomentEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Monte Carlo estimate of E|F(xi, Z)|^2.
MomentEstimate estimate_f_xi_second_moment(const ExpectationOdeProblem& problem,
                                           SplittableStream stream,
                                           std::size_t samples);

}  // namespace mlpode
