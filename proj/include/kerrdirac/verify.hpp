#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "kerrdirac/angular.hpp"
#include "kerrdirac/radial.hpp"

namespace kerrdirac::verify {

using Matrix2c = std::array<std::complex<double>, 4>;  // row-major

/// y' = M(x) y on the interval [lo, hi].
struct LinearSystemSpec {
  std::function<Matrix2c(double)> matrix;
  double lo = 0.0;
  double hi = 0.0;
  std::string tag;
};

/// Adaptive Dormand-Prince integration from x0 to x1 (either direction) with local
/// error tolerance `tol`; returns every accepted step. Throws InvalidParameter if the
/// interval leaves the domain and StepUnderflow if the stepper stalls.
radial::SampledFunction integrate(const LinearSystemSpec& sys, double x0, double x1,
                                  const radial::Spinor& y0, double tol = 1e-10);

/// The radial systems at energy omega (tau need not vanish).
LinearSystemSpec rx_system(const radial::ExtremeKNParams& p, double omega, double lambda);
LinearSystemSpec rw_system(const radial::ExtremeKNParams& p, double omega, double lambda);
/// x y' = [[-alpha - gamma x, -beta - sigma lambda], [beta - sigma lambda, alpha + gamma x]] y.
LinearSystemSpec ry_system(const radial::RadialCoefficients& c);
/// x y' = (A + x B) y on (0, 1].
LinearSystemSpec d2_system(const Matrix2c& A, const Matrix2c& B);

// ---------------------------------------------------------------------------
// Detuned energy: solutions of the radial system stay away from zero near x = 0.

struct OscillationReport {
  double omega = 0.0;
  double tau = 0.0;
  double lambda = 0.0;
  double x_min = 1e-4;
  std::array<double, 2> min_ratio{};       // min |w| / |w(1)| per seed
  std::array<double, 2> weighted_floor{};  // min over the run of x^2 * integrand / |w(1)|^2
  double scaling_error = 0.0;              // seed scaled by 5 versus 5 * result
  bool non_normalizable = false;
};

/// Integrates the w-system from x = 1 down to x_min for two independent seeds at
/// the given (detuned) omega. lambda is an angular eigenvalue at (a m, a omega).
OscillationReport check_oscillation(const radial::ExtremeKNParams& p, double omega, double lambda,
                                    double x_min = 1e-4, double tol = 1e-10);

/// Default instance: extreme Kerr k = 1/2, m = 1, a = 0.4 with omega shifted by
/// `shift` from the tau = 0 value; lambda = lambda_1 at (a m, a omega).
OscillationReport check_oscillation_default(double shift = 0.1);

/// For a bound state: |w(x)| / x^kappa at x = 1e-2, 1e-3, 1e-4 (a finite constant
/// in the limit), the contrast to the detuned case.
std::array<double, 3> bound_state_decay(const radial::BoundStateSolution& bs);

// ---------------------------------------------------------------------------
// x y' = (A + x B) y with tr A = 0 and det A >= -1/4: |y| >= eps sqrt(x).

enum class RegularCase { Elliptic, Jordan, Hyperbolic, Trivial };
std::string to_string(RegularCase c);

struct RegularReport {
  RegularCase which = RegularCase::Elliptic;
  double det_a = 0.0;
  double min_ratio = 0.0;  // min over seeds and x of |y(x)| / (sqrt(x) |y(1)|)
  double min_abs = 0.0;    // min over seeds and x of |y(x)| / |y(1)|
  double closed_form_error = 0.0;  // Jordan and trivial cases (B = 0) only
  bool passed = false;
};

RegularReport check_regular(RegularCase which, double x_min = 1e-6, double tol = 1e-10);

// ---------------------------------------------------------------------------
// m = |omega|: the reduced second-order equation has no admissible solution.

enum class ThresholdCase { Bessel, ModifiedBessel, Degenerate };
std::string to_string(ThresholdCase c);

struct ThresholdParams {
  double rho = 1.0;
  double m = 1.0;
  int sigma = 1;
  double mu = 0.0;
  double lambda = 1.0;

  double c() const { return rho * m - sigma * mu; }
  double d() const { return rho * m + sigma * mu; }
  double kappa_sq() const { return lambda * lambda + c() * d(); }
};

ThresholdParams threshold_instance(ThresholdCase which);

struct ThresholdReport {
  ThresholdCase which = ThresholdCase::Bessel;
  ThresholdParams params;
  double envelope_spread = 0.0;  // Bessel: max/min of x^{1/4} envelope on [50, 500]
  double growth_ratio = 0.0;     // modified Bessel: log|u(200)| / sqrt(8 m c 200)
  double power_error = 0.0;      // degenerate: max |u / (u(1) x^{sigma lambda}) - 1|
  bool passed = false;
};

ThresholdReport check_threshold_case(ThresholdCase which, double tol = 1e-11);
ThresholdReport check_threshold_case(ThresholdCase which, const ThresholdParams& params, double tol = 1e-11);

// ---------------------------------------------------------------------------
// Dense-matrix angular eigenvalues.

/// Symmetric tridiagonal discretization (diagonal d, off-diagonal e) of the
/// desingularized angular operator on a staggered grid with n cells per component.
struct Tridiagonal {
  std::vector<double> d;
  std::vector<double> e;
};
Tridiagonal angular_matrix(const angular::AngularProblem& p, int n);

/// Number of eigenvalues strictly below mu (Sturm sequence).
int sturm_count(const Tridiagonal& t, double mu);

/// The idx-th smallest eigenvalue (0-based) by Sturm bisection.
double tridiagonal_eigenvalue(const Tridiagonal& t, int idx);

struct OracleSpectrum {
  angular::AngularSpectrum spectrum;
  std::vector<double> error;  // estimate per eigenvalue
};

/// Eigenvalues for 0 < |j| <= jmax from the dense oracle on each grid size,
/// Richardson-extrapolated (second order) over the last two sizes. The error
/// estimate compares the extrapolants of the last two pairs (or the raw last
/// difference when only two grids are given). Throws NotConverged when an
/// estimate exceeds `tol`.
OracleSpectrum angular_oracle(const angular::AngularProblem& p, int jmax, const std::vector<int>& grids,
                              double tol = 1e-6);

/// Number of oracle eigenvalues in [lo, hi] at grid size n.
int oracle_count(const angular::AngularProblem& p, int n, double lo, double hi);

// ---------------------------------------------------------------------------
// Normalization integral by fixed Gauss-Legendre panels and an explicit tail bound.

struct NormalizationOracle {
  double value = 0.0;
  double head = 0.0;        // estimate of the piece below the first panel
  double tail_bound = 0.0;  // bound on the piece beyond the last panel
  double cutoff = 0.0;
};

NormalizationOracle normalization_oracle(const radial::BoundStateSolution& bs);

}  // namespace kerrdirac::verify
