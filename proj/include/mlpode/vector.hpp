#pragma once

#include <cmath>
#include <cstddef>

#include <boost/container/small_vector.hpp>

namespace mlpode {

/// State vector in R^d. Inline storage covers the low-dimensional problems
/// this library targets without touching the heap on the hot path.
using Vector = boost::container::small_vector<double, 4>;

inline double squared_norm(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

inline double norm(const Vector& v) { return std::sqrt(squared_norm(v)); }

inline double squared_distance(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double distance(const Vector& a, const Vector& b) {
  return std::sqrt(squared_distance(a, b));
}

/// y += alpha * x
inline void axpy(double alpha, const Vector& x, Vector& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

inline bool all_finite(const Vector& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace mlpode
