#pragma once

#include <array>
#include <complex>
#include <string_view>
#include <variant>
#include <vector>

#include "kerrdirac/half_integer.hpp"
#include "kerrdirac/quadrature.hpp"

namespace kerrdirac::radial {

/// Extreme Kerr-Newman black hole (M^2 = a^2 + Q^2) and a Dirac particle of mass m,
/// charge e and azimuthal number k. Geometric units.
struct ExtremeKNParams {
  double M;
  double a;
  double Q;
  double m;
  double e;
  HalfInteger k;

  /// Builds and validates; M is derived as sqrt(a^2 + Q^2).
  static ExtremeKNParams extreme(HalfInteger k, double a, double Q, double m, double e);
  /// Extreme Kerr: Q = e = 0, M = |a|.
  static ExtremeKNParams kerr(HalfInteger k, double a, double m);

  /// Throws InvalidParameter unless M > 0, m > 0, all fields finite and
  /// M^2 = a^2 + Q^2 to relative 1e-12.
  void validate() const;

  double rho() const { return M; }
  /// Delta(r) = (r - rho)^2.
  double delta(double r) const { return (r - M) * (r - M); }
  /// V(r) = omega (r^2 + a^2) + k a + e Q r.
  double potential(double r, double omega) const;
};

struct RadialCoefficients {
  double omega = 0.0;
  double tau = 0.0;
  double mu = 0.0;
  int sigma = 1;
  double lambda = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double kappa = 0.0;
};

/// Energy for which the horizon coefficient tau vanishes.
double compute_omega(const ExtremeKNParams& p);

/// tau = omega (rho^2 + a^2) + k a + e Q rho at an arbitrary omega.
double compute_tau(const ExtremeKNParams& p, double omega);

/// Coefficients at omega = compute_omega(p). Throws EnergyOutOfRange if
/// m^2 - omega^2 <= 0 and KappaTooSmall if lambda^2 + rho^2 m^2 - mu^2 <= 1/4.
RadialCoefficients compute_coefficients(const ExtremeKNParams& p, double lambda);

struct LaguerreBranch {
  int n = 0;
};
struct SpecialBranch {};
using Branch = std::variant<LaguerreBranch, SpecialBranch>;

struct BoundStateSolution {
  ExtremeKNParams params;
  double omega = 0.0;
  int j = 0;
  double lambda = 0.0;
  Branch branch;
  RadialCoefficients coeffs;

  bool special() const { return std::holds_alternative<SpecialBranch>(branch); }
  /// Laguerre degree n; -1 on the special branch.
  int n() const;
};

enum class Rejection { EnergyOutOfRange, KappaTooSmall, Quantization };
std::string_view to_string(Rejection r);

using Classification = std::variant<Rejection, BoundStateSolution>;

constexpr double kQuantizationTol = 1e-9;

/// Checks the bound-state conditions for an angular eigenvalue lambda (with label j,
/// carried along as metadata). Returns the first violated condition or the solution.
Classification classify_bound_state(const ExtremeKNParams& p, double lambda, int n_max, int j = 0,
                                    double tol = kQuantizationTol);

using Spinor = std::array<std::complex<double>, 2>;

struct SampledFunction {
  std::vector<double> x;
  std::vector<Spinor> values;
};

/// Real pair y = (u, v) solving x y' = [[-alpha - gamma x, -beta - sigma lambda],
/// [beta - sigma lambda, alpha + gamma x]] y, before the transformation f = S T y.
std::array<double, 2> pre_transform(const BoundStateSolution& bs, double x);
std::array<double, 2> pre_transform_derivative(const BoundStateSolution& bs, double x);

/// The unnormalized closed-form radial eigenfunction f(x) and its exact derivative.
Spinor eigenfunction_at(const BoundStateSolution& bs, double x);
Spinor eigenfunction_derivative(const BoundStateSolution& bs, double x);
SampledFunction eigenfunction(const BoundStateSolution& bs, const std::vector<double>& xs);

/// |f(x)|^2.
double density(const BoundStateSolution& bs, double x);

/// Coefficient matrix of the radial system f' = R(x) f at the given omega.
std::array<std::complex<double>, 4> rx_matrix(const ExtremeKNParams& p, double omega, double lambda,
                                              double x);

/// |f' - R f| / (|f'| + |R| |f|) with the exact derivative of the closed form.
double residual_rx(const BoundStateSolution& bs, double x);
/// Same for the pre-transform system in y.
double residual_ry(const BoundStateSolution& bs, double x);

/// Largest residual_rx over `samples` log-spaced points of [x_lo, x_hi].
double max_residual_rx(const BoundStateSolution& bs, double x_lo, double x_hi, int samples = 200);
double max_residual_ry(const BoundStateSolution& bs, double x_lo, double x_hi, int samples = 200);

/// Weight ((x + rho)^2 + a^2) / x^2 of the normalization integral.
double normalization_weight(const ExtremeKNParams& p, double x);

/// Integral of |f|^2 times the normalization weight over (0, inf), split at x = 1.
/// Near 0 the substitution x = t^p with p >= 2 chosen from kappa makes the integrand
/// bounded; [1, inf) is mapped onto [0, 1). Throws QuadratureFailure.
double normalization_integral(const BoundStateSolution& bs, const quad::QuadOptions& opt = {});

}  // namespace kerrdirac::radial
