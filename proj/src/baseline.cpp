#include "mlpode/baseline.hpp"

#include <cmath>

namespace mlpode {

void validate(const BaselineParams& params) {
  if (params.steps < 1) throw std::invalid_argument("BaselineParams: steps must be >= 1");
  if (params.samples < 1)
    throw std::invalid_argument("BaselineParams: samples must be >= 1");
}

Vector mc_euler(const ExpectationOdeProblem& problem, const BaselineParams& params,
                const SplittableStream& stream, CostLedger& ledger) {
  validate(params);
  const double h = problem.horizon / params.steps;
  Vector y = problem.xi;
  for (int j = 0; j < params.steps; ++j) {
    SplittableStream node = stream.spawn(j);
    Vector sum(problem.dim, 0.0);
    for (int i = 0; i < params.samples; ++i)
      axpy(1.0, problem.drift(y, problem.sample_z(node)), sum);
    for (double& v : sum) v /= params.samples;
    axpy(h, sum, y);
  }
  const auto draws = static_cast<std::uint64_t>(params.steps) *
                     static_cast<std::uint64_t>(params.samples);
  ledger.z_draws += draws;
  ledger.f_evals += draws;
  return y;
}

Vector reference_solve(const ExpectationOdeProblem& problem, double t, double step) {
  if (!(t >= 0.0) || t > problem.horizon)
    throw std::invalid_argument("reference_solve: t must lie in [0, horizon]");
  if (!(step > 0.0)) throw std::invalid_argument("reference_solve: step must be > 0");
  if (problem.closed_form) return (*problem.closed_form)(t);
  return rk4_solve(problem, t, step);
}

Vector rk4_solve(const ExpectationOdeProblem& problem, double t, double step) {
  if (!(t >= 0.0) || t > problem.horizon)
    throw std::invalid_argument("rk4_solve: t must lie in [0, horizon]");
  if (!(step > 0.0)) throw std::invalid_argument("rk4_solve: step must be > 0");
  if (!problem.exact_mean_drift) throw NoReferenceError(problem.name);

  const auto& g = *problem.exact_mean_drift;
  Vector x = problem.xi;
  const auto full_steps = static_cast<long long>(std::floor(t / step));
  auto advance = [&](double h) {
    const Vector k1 = g(x);
    Vector tmp = x;
    axpy(0.5 * h, k1, tmp);
    const Vector k2 = g(tmp);
    tmp = x;
    axpy(0.5 * h, k2, tmp);
    const Vector k3 = g(tmp);
    tmp = x;
    axpy(h, k3, tmp);
    const Vector k4 = g(tmp);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  };
  for (long long i = 0; i < full_steps; ++i) advance(step);
  const double rest = t - static_cast<double>(full_steps) * step;
  if (rest > 1e-15 * std::max(1.0, t)) advance(rest);
  return x;
}

}  // namespace mlpode
