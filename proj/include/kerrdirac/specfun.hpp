#pragma once

namespace kerrdirac::specfun {

/// Truncation control for ascending series.
struct SeriesControl {
  int max_terms = 500;
  double rel_tol = 1e-15;

  /// Throws InvalidParameter unless max_terms >= 1 and 0 < rel_tol < 1.
  void validate() const;
};

/// Rising factorial (p)_n = p (p+1) ... (p+n-1), with (p)_0 = 1.
double pochhammer(double p, int n);

/// Kummer's confluent hypergeometric function M(p, q, z) by its ascending series.
///
/// The series terminates exactly when p is a non-positive integer. Otherwise it is
/// truncated once a term drops below rel_tol relative to the running sum.
/// Throws InvalidParameter when q is 0 or a negative integer and
/// NonconvergentSeries when max_terms is exhausted.
double kummer_m(double p, double q, double z, const SeriesControl& ctl = {});

/// dM/dz from the term-wise differentiated series.
double kummer_m_prime(double p, double q, double z, const SeriesControl& ctl = {});

/// Generalized Laguerre polynomial L_n^{(order)}(z) by upward three-term recurrence.
double laguerre(int n, double order, double z);

/// d/dz L_n^{(order)}(z) = -L_{n-1}^{(order+1)}(z).
double laguerre_prime(int n, double order, double z);

}  // namespace kerrdirac::specfun
