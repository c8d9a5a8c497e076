#include "kerrdirac/specfun.hpp"

#include <cmath>
#include <string>

#include "kerrdirac/errors.hpp"

namespace kerrdirac::specfun {

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

void SeriesControl::validate() const {
  if (max_terms < 1) throw InvalidParameter("SeriesControl: max_terms must be >= 1");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw InvalidParameter("SeriesControl: rel_tol must lie in (0, 1)");
  }
}

double pochhammer(double p, int n) {
  if (n < 0) throw InvalidParameter("pochhammer: n must be non-negative");
  double result = 1.0;
  for (int i = 0; i < n; ++i) result *= p + i;
  return result;
}

double kummer_m(double p, double q, double z, const SeriesControl& ctl) {
  ctl.validate();
  if (is_nonpositive_integer(q)) {
    throw InvalidParameter("kummer_m: q must not be zero or a negative integer (q = " +
                           std::to_string(q) + ")");
  }

  double term = 1.0;
  double sum = 1.0;
  if (is_nonpositive_integer(p)) {
    const int last = static_cast<int>(-p);
    for (int n = 0; n < last; ++n) {
      term *= (p + n) / (q + n) * z / (n + 1);
      sum += term;
    }
    return sum;
  }

  // Terms can shrink transiently while n < |p| or n < |q|, so require two
  // consecutive small terms past that point before stopping.
  int small_run = 0;
  for (int n = 0; n < ctl.max_terms; ++n) {
    term *= (p + n) / (q + n) * z / (n + 1);
    sum += term;
    const bool past_turnover = n + 1 > std::abs(p) && n + 1 > std::abs(z - q);
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum) && past_turnover) {
      if (++small_run == 2) return sum;
    } else {
      small_run = 0;
    }
    if (term == 0.0) return sum;
  }
  throw NonconvergentSeries("kummer_m: series did not converge in " +
                            std::to_string(ctl.max_terms) + " terms");
}

double kummer_m_prime(double p, double q, double z, const SeriesControl& ctl) {
  ctl.validate();
  if (is_nonpositive_integer(q)) {
    throw InvalidParameter("kummer_m_prime: q must not be zero or a negative integer");
  }
  // coeff_n = (p)_n / ((q)_n n!) and d/dz z^n = n z^{n-1}
  double coeff = 1.0;
  double zpow = 1.0;  // z^{n-1}
  double sum = 0.0;
  const bool terminating = is_nonpositive_integer(p);
  const int last = terminating ? static_cast<int>(-p) : ctl.max_terms;
  int small_run = 0;
  for (int n = 1; n <= last; ++n) {
    coeff *= (p + n - 1) / ((q + n - 1) * n);
    if (n > 1) zpow *= z;
    const double term = n * coeff * zpow;
    sum += term;
    if (terminating) continue;
    const bool past_turnover = n > std::abs(p) && n > std::abs(z - q) + 1;
    if (std::abs(term) <= ctl.rel_tol * std::abs(sum) && past_turnover) {
      if (++small_run == 2) return sum;
    } else {
      small_run = 0;
    }
    if (term == 0.0 && n > 1) return sum;
  }
  if (terminating) return sum;
  throw NonconvergentSeries("kummer_m_prime: series did not converge");
}

double laguerre(int n, double order, double z) {
  if (n < 0) return 0.0;
  double prev = 1.0;  // L_0
  if (n == 0) return prev;
  double cur = 1.0 + order - z;  // L_1
  for (int i = 1; i < n; ++i) {
    // (i+1) L_{i+1} = (2i + 1 + order - z) L_i - (i + order) L_{i-1}
    const double next = ((2.0 * i + 1.0 + order - z) * cur - (i + order) * prev) / (i + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_prime(int n, double order, double z) {
  if (n <= 0) return 0.0;
  return -laguerre(n - 1, order + 1.0, z);
}

}  // namespace kerrdirac::specfun
