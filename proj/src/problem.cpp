#include "mlpode/problem.hpp"

#include <algorithm>
#include <cmath>

namespace mlpode {

namespace {

ExpectationOdeProblem make_pure_noise() {
  ExpectationOdeProblem p;
  p.name = "pure_noise";
  p.dim = 1;
  p.xi = {0.0};
  p.horizon = 1.0;
  p.lipschitz = 0.0;
  p.sample_z = [](SplittableStream& s) { return ZSample{{s.next_gaussian()}}; };
  p.drift = [](const Vector&, const ZSample& z) { return Vector{z.payload[0]}; };
  p.exact_mean_drift = [](const Vector&) { return Vector{0.0}; };
  p.closed_form = [](double) { return Vector{0.0}; };
  p.f_xi_second_moment = 1.0;
  return p;
}

ExpectationOdeProblem make_const_drift() {
  ExpectationOdeProblem p;
  p.name = "const_drift";
  p.dim = 1;
  p.xi = {0.0};
  p.horizon = 1.0;
  p.lipschitz = 0.0;
  // Z is degenerate; nothing is drawn from the stream.
  p.sample_z = [](SplittableStream&) { return ZSample{}; };
  p.drift = [](const Vector&, const ZSample&) { return Vector{1.0}; };
  p.exact_mean_drift = [](const Vector&) { return Vector{1.0}; };
  p.closed_form = [](double t) { return Vector{t}; };
  p.f_xi_second_moment = 1.0;
  return p;
}

ExpectationOdeProblem make_linear_meanfield() {
  ExpectationOdeProblem p;
  p.name = "linear_meanfield";
  p.dim = 1;
  p.xi = {0.0};
  p.horizon = 1.0;
  p.lipschitz = 1.0;
  // Z ~ N(1, 1)
  p.sample_z = [](SplittableStream& s) {
    return ZSample{{1.0 + s.next_gaussian()}};
  };
  p.drift = [](const Vector& x, const ZSample& z) {
    return Vector{-x[0] + z.payload[0]};
  };
  p.exact_mean_drift = [](const Vector& x) { return Vector{1.0 - x[0]}; };
  p.closed_form = [](double t) { return Vector{-std::expm1(-t)}; };
  p.f_xi_second_moment = 2.0;
  return p;
}

ExpectationOdeProblem make_sine_meanfield() {
  ExpectationOdeProblem p;
  p.name = "sine_meanfield";
  p.dim = 1;
  p.xi = {0.0};
  p.horizon = 1.0;
  p.lipschitz = 1.0;
  p.sample_z = [](SplittableStream& s) { return ZSample{{s.next_gaussian()}}; };
  p.drift = [](const Vector& x, const ZSample& z) {
    return Vector{std::sin(x[0]) + z.payload[0]};
  };
  p.exact_mean_drift = [](const Vector& x) { return Vector{std::sin(x[0])}; };
  p.f_xi_second_moment = 1.0;
  return p;
}

}  // namespace

void validate(const ExpectationOdeProblem& p) {
  if (p.dim < 1) throw std::invalid_argument(p.name + ": dim must be >= 1");
  if (p.xi.size() != p.dim)
    throw std::invalid_argument(p.name + ": xi has wrong length");
  if (!(p.horizon >= 0.0) || !std::isfinite(p.horizon))
    throw std::invalid_argument(p.name + ": horizon must be finite and >= 0");
  if (!(p.lipschitz >= 0.0) || !std::isfinite(p.lipschitz))
    throw std::invalid_argument(p.name + ": lipschitz must be finite and >= 0");
  if (!(p.f_xi_second_moment >= 0.0) || !std::isfinite(p.f_xi_second_moment))
    throw std::invalid_argument(p.name +
                                ": f_xi_second_moment must be finite and >= 0");
  if (!p.sample_z || !p.drift)
    throw std::invalid_argument(p.name + ": sample_z and drift are required");
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names = {"const_drift", "linear_meanfield",
                                    "pure_noise", "sine_meanfield"};
  std::sort(names.begin(), names.end());
  return names;
}

ExpectationOdeProblem builtin(std::string_view name) {
  if (name == "pure_noise") return make_pure_noise();
  if (name == "const_drift") return make_const_drift();
  if (name == "linear_meanfield") return make_linear_meanfield();
  if (name == "sine_meanfield") return make_sine_meanfield();
  throw UnknownProblemError(std::string(name));
}

double max_lipschitz_ratio(const ExpectationOdeProblem& problem,
                           SplittableStream stream, std::size_t pairs,
                           double scale) {
  double worst = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    Vector x(problem.dim), y(problem.dim);
    for (std::size_t j = 0; j < problem.dim; ++j) {
      x[j] = scale * (2.0 * stream.next_uniform() - 1.0);
      y[j] = scale * (2.0 * stream.next_uniform() - 1.0);
    }
    const double dx = distance(x, y);
    if (dx == 0.0) continue;
    const ZSample z = problem.sample_z(stream);
    const double df = distance(problem.drift(x, z), problem.drift(y, z));
    worst = std::max(worst, df / dx);
  }
  return worst;
}

MomentEstimate estimate_f_xi_second_moment(const ExpectationOdeProblem& problem,
                                           SplittableStream stream,
                                           std::size_t samples) {
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double v = squared_norm(problem.drift(problem.xi, problem.sample_z(stream)));
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = samples > 1 ? (sum_sq - n * mean * mean) / (n - 1.0) : 0.0;
  return {mean, std::sqrt(std::max(var, 0.0) / n)};
}

}  // namespace mlpode
