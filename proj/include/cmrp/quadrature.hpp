#pragma once

#include <cstddef>
#include <functional>

namespace cmrp {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  int max_depth = 48;
};

/// Adaptive Gauss-Kronrod (15/7) on a finite interval.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& cfg = {});

/// Integral over (a, +inf) via the substitution x = a + u/(1-u).
QuadratureResult integrate_to_inf(const std::function<double(double)>& f, double a,
                                  const QuadratureConfig& cfg = {});

/// Integral over the whole real line via x = u/(1-u^2).
QuadratureResult integrate_real_line(const std::function<double(double)>& f,
                                     const QuadratureConfig& cfg = {});

}  // namespace cmrp
