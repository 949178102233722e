#include "mlpode/mlp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlpode {

namespace {

// Loop counts m^k are materialized as 64-bit integers; anything beyond this
// is far outside what a single realization can execute anyway.
constexpr std::uint64_t kMaxSamples = std::uint64_t{1} << 53;

std::uint64_t checked_pow(int base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > kMaxSamples / static_cast<std::uint64_t>(base))
      throw std::invalid_argument("m^n exceeds 2^53 samples (m=" +
                                  std::to_string(base) +
                                  ", n=" + std::to_string(exp) + ")");
    r *= static_cast<std::uint64_t>(base);
  }
  return r;
}

Vector estimate(const ExpectationOdeProblem& problem, int n, int m, double t,
                const SplittableStream& stream, CostLedger& ledger) {
  Vector result = problem.xi;
  if (n == 0) return result;

  {
    const std::uint64_t count = checked_pow(m, n);
    const SplittableStream base = stream.spawn(0);
    Vector sum(problem.dim, 0.0);
    for (std::uint64_t k = 1; k <= count; ++k) {
      SplittableStream zs = base.spawn(static_cast<std::int64_t>(k));
      const ZSample z = problem.sample_z(zs);
      axpy(1.0, problem.drift(problem.xi, z), sum);
    }
    ledger.z_draws += count;
    ledger.f_evals += count;
    for (double& v : sum) v /= static_cast<double>(count);
    axpy(t, sum, result);
  }

  for (int l = 1; l < n; ++l) {
    const std::uint64_t count = checked_pow(m, n - l);
    const SplittableStream level = stream.spawn(l);
    Vector sum(problem.dim, 0.0);
    for (std::uint64_t k = 1; k <= count; ++k) {
      const auto ki = static_cast<std::int64_t>(k);
      SplittableStream node = level.spawn(ki);
      const double s = node.next_uniform() * t;
      const ZSample z = problem.sample_z(node);
      ledger.uniform_draws += 1;
      ledger.z_draws += 1;

      // `node` is only spawned from below this point, so its draw counter
      // does not affect the inner recursion.
      const Vector fine = estimate(problem, l, m, s, node, ledger);
      const Vector coarse = estimate(problem, l - 1, m, s, level.spawn(-ki), ledger);
      axpy(1.0, problem.drift(fine, z), sum);
      axpy(-1.0, problem.drift(coarse, z), sum);
      ledger.f_evals += 2;
    }
    for (double& v : sum) v /= static_cast<double>(count);
    axpy(t, sum, result);
  }
  return result;
}

BigCount pow_big(BigCount base, int exp) {
  BigCount r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void require_counts(int n, int m) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
}

// c(n) = m^n * a + sum_{l=1}^{n-1} m^{n-l} (b + c(l) + c(l-1)), c(0) = 0.
BigCount cost_recursion(int n, int m, int per_base, int per_term) {
  require_counts(n, m);
  std::vector<BigCount> c(static_cast<std::size_t>(n) + 1);
  c[0] = 0;
  for (int k = 1; k <= n; ++k) {
    BigCount total = pow_big(m, k) * per_base;
    for (int l = 1; l < k; ++l)
      total += pow_big(m, k - l) * (per_term + c[l] + c[l - 1]);
    c[k] = total;
  }
  return c[n];
}

}  // namespace

void validate(const MlpParams& params, const ExpectationOdeProblem& problem) {
  if (params.n < 0) throw std::invalid_argument("MlpParams: n must be >= 0");
  if (params.m < 1) throw std::invalid_argument("MlpParams: m must be >= 1");
  if (!(params.t >= 0.0) || params.t > problem.horizon)
    throw std::invalid_argument("MlpParams: t must lie in [0, horizon]");
  if (params.n > 0) checked_pow(params.m, params.n);
}

Vector mlp_estimate(const ExpectationOdeProblem& problem, const MlpParams& params,
                    const SplittableStream& stream, CostLedger& ledger) {
  validate(params, problem);
  return estimate(problem, params.n, params.m, params.t, stream, ledger);
}

BigCount rv_exact(int n, int m) { return cost_recursion(n, m, 1, 1); }

BigCount rv_bound(int n, int m) {
  require_counts(n, m);
  if (n < 1) throw std::invalid_argument("rv_bound requires n >= 1");
  return pow_big(BigCount(3) * m, n);
}

BigCount f_evals_exact(int n, int m) { return cost_recursion(n, m, 1, 2); }

BigCount uniform_draws_exact(int n, int m) { return cost_recursion(n, m, 0, 1); }

}  // namespace mlpode
