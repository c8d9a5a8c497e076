#pragma once

#include <functional>

namespace kerrdirac::quad {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

/// Globally adaptive Gauss-Kronrod (7/15) on the finite interval [a, b].
/// Throws QuadratureFailure when the interval budget is exhausted before the
/// error estimate meets max(abs_tol, rel_tol * |I|).
QuadResult gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                         const QuadOptions& opt = {});

}  // namespace kerrdirac::quad
