#include "mlpode/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "mlpode/baseline.hpp"

namespace mlpode {

BoundInputs BoundInputs::from(const ExpectationOdeProblem& problem) {
  return {problem.horizon, problem.lipschitz, problem.f_xi_second_moment};
}

double BoundInputs::constant() const {
  return horizon * std::sqrt(f_xi_second_moment) * std::exp(lipschitz * horizon);
}

double error_bound(const BoundInputs& in, int n, int m) {
  if (n < 0 || m < 1) throw std::invalid_argument("error_bound: need n >= 0, m >= 1");
  if (in.horizon == 0.0 || in.f_xi_second_moment == 0.0) return 0.0;
  const double lt = in.lipschitz * in.horizon;
  const double log_value = std::log(in.horizon) + 0.5 * std::log(in.f_xi_second_moment) +
                           n * std::log1p(2.0 * lt) + lt + 0.5 * m -
                           0.5 * n * std::log(static_cast<double>(m));
  return std::exp(log_value);
}

double schedule_term(const BoundInputs& in, int m) {
  if (m < 1) throw std::invalid_argument("schedule_term: need m >= 1");
  const double c = in.constant();
  if (c == 0.0) return 0.0;
  const double md = static_cast<double>(m);
  const double log_value = std::log(c) + 0.5 * md +
                           md * std::log1p(2.0 * in.lipschitz * in.horizon) -
                           0.5 * md * std::log(md);
  return std::exp(log_value);
}

double schedule_tail_max(const BoundInputs& in, int n) {
  if (n < 1) throw std::invalid_argument("schedule_tail_max: need n >= 1");
  const double growth = 1.0 + 2.0 * in.lipschitz * in.horizon;
  const double threshold = std::ceil(growth * growth) + 1.0;
  if (!(threshold < static_cast<double>(std::numeric_limits<int>::max())))
    throw std::overflow_error("schedule_tail_max: (1+2LT)^2 too large");
  const int last = std::max(n, static_cast<int>(threshold));
  double best = 0.0;
  for (int m = n; m <= last; ++m) best = std::max(best, schedule_term(in, m));
  return best;
}

Schedule n_epsilon(const BoundInputs& in, double epsilon, int mathfrak_n) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("n_epsilon: epsilon must lie in (0, 1]");
  if (mathfrak_n < 0) throw std::invalid_argument("n_epsilon: offset must be >= 0");
  Schedule s;
  s.epsilon = epsilon;
  s.mathfrak_n = mathfrak_n;
  int n = 1;
  double tail = schedule_tail_max(in, n);
  while (tail > epsilon) tail = schedule_tail_max(in, ++n);
  s.n_epsilon = n;
  s.tail_max = tail;
  s.total_cost = 0;
  for (int k = 1; k <= n + mathfrak_n; ++k) s.total_cost += rv_exact(k, k);
  return s;
}

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::mlp ? "mlp" : "mc_euler";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "mlp") return Scheme::mlp;
  if (text == "mc_euler") return Scheme::mc_euler;
  throw std::invalid_argument("unknown scheme: " + std::string(text));
}

bool RmseReport::all_valid() const {
  return std::all_of(rows.begin(), rows.end(), [](const RmseRow& r) { return r.valid; });
}

namespace {

struct Realization {
  double squared_error = 0.0;
  CostLedger ledger;
};

template <class Body>
void parallel_for(std::uint64_t count, unsigned threads, const Body& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (count + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::uint64_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

RmseReport rmse_experiment(const ExpectationOdeProblem& problem,
                           const ExperimentOptions& options) {
  validate(problem);
  if (options.replications < 2)
    throw std::invalid_argument("rmse_experiment: replications must be >= 2");
  if (options.grid.empty()) throw std::invalid_argument("rmse_experiment: empty grid");
  if (!problem.has_reference()) throw NoReferenceError(problem.name);

  RmseReport report;
  report.problem = problem.name;
  report.scheme = options.scheme;
  report.seed = options.seed;
  report.horizon = problem.horizon;
  report.reference = reference_solve(problem, problem.horizon, options.reference_step);

  const BoundInputs bounds = BoundInputs::from(problem);
  const SplittableStream master = root(options.seed);
  const double horizon = problem.horizon;

  for (const GridPoint& point : options.grid) {
    RmseRow row;
    row.scheme = options.scheme;
    row.n = point.first;
    row.m = point.second;
    row.replications = options.replications;

    std::function<Vector(const SplittableStream&, CostLedger&)> run_once;
    if (options.scheme == Scheme::mlp) {
      const MlpParams params{point.first, point.second, horizon};
      validate(params, problem);
      run_once = [&problem, params](const SplittableStream& s, CostLedger& ledger) {
        return mlp_estimate(problem, params, s, ledger);
      };
      row.bound = error_bound(bounds, params.n, params.m);
      row.rv_bound = params.n >= 1 ? rv_bound(params.n, params.m) : BigCount(0);
    } else {
      const BaselineParams params{point.first, point.second};
      validate(params);
      run_once = [&problem, params](const SplittableStream& s, CostLedger& ledger) {
        return mc_euler(problem, params, s, ledger);
      };
      row.bound = std::numeric_limits<double>::quiet_NaN();
      row.rv_bound = BigCount(params.steps) * params.samples;
    }

    const auto started = std::chrono::steady_clock::now();
    std::vector<Realization> results(options.replications);
    parallel_for(options.replications, options.threads, [&](std::uint64_t i) {
      Realization& r = results[i];
      const Vector estimate =
          run_once(master.spawn(static_cast<std::int64_t>(i + 1)), r.ledger);
      r.squared_error = all_finite(estimate)
                            ? squared_distance(estimate, report.reference)
                            : std::numeric_limits<double>::quiet_NaN();
    });
    const auto elapsed = std::chrono::steady_clock::now() - started;

    double sum = 0.0;
    CostLedger total;
    for (const Realization& r : results) {
      if (!std::isfinite(r.squared_error)) row.valid = false;
      sum += r.squared_error;
      total += r.ledger;
    }
    row.rmse = row.valid ? std::sqrt(sum / static_cast<double>(options.replications))
                         : std::numeric_limits<double>::quiet_NaN();
    row.z_draws = total.z_draws / options.replications;
    if (options.record_wall_time)
      row.wall_ms = std::chrono::duration<double, std::milli>(elapsed).count();
    if (options.on_row) options.on_row(row);
    report.rows.push_back(std::move(row));
  }
  return report;
}

PowerLawFit complexity_fit(const RmseReport& report) {
  std::vector<double> xs, ys;
  for (const RmseRow& row : report.rows) {
    if (!row.valid || !(row.rmse > 0.0) || row.z_draws == 0) continue;
    xs.push_back(std::log(1.0 / row.rmse));
    ys.push_back(std::log(static_cast<double>(row.z_draws) *
                          static_cast<double>(row.replications)));
  }
  if (xs.size() < 3) throw InsufficientDataError();
  const double count = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InsufficientDataError();
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = xs.size();
  return fit;
}

std::string to_csv(const RmseReport& report) {
  std::string out = "scheme,n,m,R,rmse,bound,rv_exact,rv_bound,wall_ms,seed\n";
  for (const RmseRow& r : report.rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", to_string(r.scheme), r.n, r.m,
                       r.replications, r.rmse, r.bound, r.z_draws, r.rv_bound.str(),
                       r.wall_ms, report.seed);
  }
  return out;
}

}  // namespace mlpode
