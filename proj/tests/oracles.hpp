#pragma once

// Independent reference computations for tests. Nothing here calls into
// the library's closed forms: sums are taken term by term in long double.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

struct Moments {
  long double z;       // sum e^{lambda r}, scaled by e^{-peak}
  long double mean;    // <r>
  long double var;     // <r^2> - <r>^2
  long double log_z;   // ln sum e^{lambda r}
};

inline Moments direct(std::int64_t d, long double lambda) {
  const long double peak = lambda > 0 ? lambda * d : 0.0L;
  // z = 1 + tail when peak == 0; ln z is then taken as log1p(tail) so that
  // tiny ln z near lambda -> -inf keeps its relative accuracy.
  long double tail = 0, z = 0, m1 = 0, m2 = 0;
  for (std::int64_t r = 0; r <= d; ++r) {
    const long double w = std::exp(lambda * r - peak);
    z += w;
    if (r > 0) tail += w;
    m1 += r * w;
    m2 += static_cast<long double>(r) * r * w;
  }
  const long double mean = m1 / z;
  const long double log_z = peak == 0 ? std::log1p(tail) : std::log(z) + peak;
  return {z, mean, m2 / z - mean * mean, log_z};
}

inline double mean(std::int64_t d, double lambda) {
  return static_cast<double>(direct(d, lambda).mean);
}

inline double log_z(std::int64_t d, double lambda) {
  return static_cast<double>(direct(d, lambda).log_z);
}

/// Composite midpoint rule with `panels` panels, in long double.
inline double midpoint(const std::function<long double(long double)>& f, double a, double b,
                       int panels) {
  const long double h = (static_cast<long double>(b) - a) / panels;
  long double s = 0;
  for (int i = 0; i < panels; ++i) s += f(a + (i + 0.5L) * h);
  return static_cast<double>(s * h);
}

inline double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

}  // namespace oracle
