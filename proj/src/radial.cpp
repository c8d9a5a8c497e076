#include "kerrdirac/radial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kerrdirac/errors.hpp"
#include "kerrdirac/specfun.hpp"

namespace kerrdirac::radial {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

double norm2(const Spinor& s) { return std::norm(s[0]) + std::norm(s[1]); }

// S T y for real y; S is unitary, T depends on m and |omega|.
Spinor apply_st(const RadialCoefficients& c, double m, const std::array<double, 2>& y) {
  const double lo = std::sqrt(m - std::abs(c.omega));
  const double hi = std::sqrt(m + std::abs(c.omega));
  const double w1 = lo * (y[1] - y[0]);
  const double w2 = hi * (y[0] + y[1]);
  const double s = c.sigma;
  const double r = 1.0 / std::sqrt(2.0);
  return Spinor{r * (-w1 + I * s * w2), r * (-s * w1 - I * w2)};
}

struct PolyPart {
  std::array<double, 2> p;   // polynomial factor P(2 gamma x)
  std::array<double, 2> dp;  // dP/dx
};

PolyPart polynomial_part(const BoundStateSolution& bs, double x) {
  if (bs.special()) return {{1.0, 0.0}, {0.0, 0.0}};
  const auto& c = bs.coeffs;
  const int n = bs.n();
  const double order = 2.0 * c.kappa;
  const double z = 2.0 * c.gamma * x;
  const double b = c.beta - c.sigma * c.lambda;
  return {{(n + 1) * specfun::laguerre(n + 1, order, z), b * specfun::laguerre(n, order, z)},
          {2.0 * c.gamma * (n + 1) * specfun::laguerre_prime(n + 1, order, z),
           2.0 * c.gamma * b * specfun::laguerre_prime(n, order, z)}};
}

std::vector<double> log_grid(double lo, double hi, int samples) {
  std::vector<double> xs(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
    xs[i] = lo * std::pow(hi / lo, t);
  }
  return xs;
}

}  // namespace

ExtremeKNParams ExtremeKNParams::extreme(HalfInteger k, double a, double Q, double m, double e) {
  ExtremeKNParams p{std::hypot(a, Q), a, Q, m, e, k};
  p.validate();
  return p;
}

ExtremeKNParams ExtremeKNParams::kerr(HalfInteger k, double a, double m) {
  return extreme(k, a, 0.0, m, 0.0);
}

void ExtremeKNParams::validate() const {
  if (!(std::isfinite(M) && std::isfinite(a) && std::isfinite(Q) && std::isfinite(m) && std::isfinite(e))) {
    throw InvalidParameter("parameters must be finite");
  }
  if (!(M > 0.0)) throw InvalidParameter("black-hole mass M must be positive");
  if (!(m > 0.0)) throw InvalidParameter("particle mass m must be positive");
  const double lhs = M * M;
  const double rhs = a * a + Q * Q;
  if (std::abs(lhs - rhs) > 1e-12 * std::max(lhs, rhs)) {
    throw InvalidParameter("not extreme: M^2 = " + std::to_string(lhs) + " but a^2 + Q^2 = " + std::to_string(rhs));
  }
}

double ExtremeKNParams::potential(double r, double omega) const {
  return omega * (r * r + a * a) + k.value() * a + e * Q * r;
}

int BoundStateSolution::n() const {
  if (const auto* l = std::get_if<LaguerreBranch>(&branch)) return l->n;
  return -1;
}

std::string_view to_string(Rejection r) {
  switch (r) {
    case Rejection::EnergyOutOfRange: return "energy_out_of_range";
    case Rejection::KappaTooSmall: return "kappa_too_small";
    case Rejection::Quantization: return "quantization";
  }
  return "unknown";
}

double compute_omega(const ExtremeKNParams& p) {
  const double rho = p.rho();
  const double denom = p.a * p.a + rho * rho;
  if (!(denom > 0.0)) throw InvalidParameter("compute_omega: a^2 + rho^2 must be positive");
  return -(p.k.value() * p.a + p.e * p.Q * rho) / denom;
}

double compute_tau(const ExtremeKNParams& p, double omega) {
  const double rho = p.rho();
  return omega * (rho * rho + p.a * p.a) + p.k.value() * p.a + p.e * p.Q * rho;
}

RadialCoefficients compute_coefficients(const ExtremeKNParams& p, double lambda) {
  RadialCoefficients c;
  const double rho = p.rho();
  const double m = p.m;
  c.omega = compute_omega(p);
  c.tau = compute_tau(p, c.omega);
  c.mu = 2.0 * rho * c.omega + p.e * p.Q;
  c.sigma = c.omega >= 0.0 ? 1 : -1;
  c.lambda = lambda;
  const double g2 = m * m - c.omega * c.omega;
  if (!(g2 > 0.0)) {
    throw EnergyOutOfRange("m^2 - omega^2 = " + std::to_string(g2) + " is not positive");
  }
  const double k2 = lambda * lambda + rho * rho * m * m - c.mu * c.mu;
  if (!(k2 > 0.25)) {
    throw KappaTooSmall("kappa^2 = " + std::to_string(k2) + " does not exceed 1/4");
  }
  c.gamma = std::sqrt(g2);
  c.alpha = (rho * m * m - c.omega * c.mu) / c.gamma;
  c.beta = (rho * std::abs(c.omega) - c.sigma * c.mu) * m / c.gamma;
  c.kappa = std::sqrt(k2);
  return c;
}

Classification classify_bound_state(const ExtremeKNParams& p, double lambda, int n_max, int j, double tol) {
  RadialCoefficients c;
  try {
    c = compute_coefficients(p, lambda);
  } catch (const EnergyOutOfRange&) {
    return Rejection::EnergyOutOfRange;
  } catch (const KappaTooSmall&) {
    return Rejection::KappaTooSmall;
  }
  if (std::abs(c.beta - c.sigma * lambda) <= tol && std::abs(c.alpha + c.kappa) <= tol) {
    return BoundStateSolution{p, c.omega, j, lambda, SpecialBranch{}, c};
  }
  const double s = -(1.0 + c.alpha + c.kappa);
  const double n = std::round(s);
  if (n >= 0.0 && n <= n_max && std::abs(s - n) <= tol) {
    return BoundStateSolution{p, c.omega, j, lambda, LaguerreBranch{static_cast<int>(n)}, c};
  }
  return Rejection::Quantization;
}

std::array<double, 2> pre_transform(const BoundStateSolution& bs, double x) {
  const auto& c = bs.coeffs;
  const double env = std::pow(x, c.kappa) * std::exp(-c.gamma * x);
  const auto poly = polynomial_part(bs, x);
  return {env * poly.p[0], env * poly.p[1]};
}

std::array<double, 2> pre_transform_derivative(const BoundStateSolution& bs, double x) {
  const auto& c = bs.coeffs;
  const double env = std::pow(x, c.kappa) * std::exp(-c.gamma * x);
  const double log_slope = c.kappa / x - c.gamma;
  const auto poly = polynomial_part(bs, x);
  return {env * (log_slope * poly.p[0] + poly.dp[0]), env * (log_slope * poly.p[1] + poly.dp[1])};
}

Spinor eigenfunction_at(const BoundStateSolution& bs, double x) {
  return apply_st(bs.coeffs, bs.params.m, pre_transform(bs, x));
}

Spinor eigenfunction_derivative(const BoundStateSolution& bs, double x) {
  return apply_st(bs.coeffs, bs.params.m, pre_transform_derivative(bs, x));
}

SampledFunction eigenfunction(const BoundStateSolution& bs, const std::vector<double>& xs) {
  SampledFunction out;
  out.x = xs;
  out.values.reserve(xs.size());
  for (double x : xs) {
    if (!(x > 0.0)) throw InvalidParameter("eigenfunction: sample points must be positive");
    out.values.push_back(eigenfunction_at(bs, x));
  }
  return out;
}

double density(const BoundStateSolution& bs, double x) { return norm2(eigenfunction_at(bs, x)); }

std::array<std::complex<double>, 4> rx_matrix(const ExtremeKNParams& p, double omega, double lambda, double x) {
  const double rho = p.rho();
  const double tau = compute_tau(p, omega);
  const double mu = 2.0 * rho * omega + p.e * p.Q;
  const double m = p.m;
  const cd diag = -I * (tau / (x * x) + mu / x + omega);
  return {diag, (lambda - I * m * rho) / x - I * m, (lambda + I * m * rho) / x + I * m, -diag};
}

double residual_rx(const BoundStateSolution& bs, double x) {
  const auto R = rx_matrix(bs.params, bs.omega, bs.lambda, x);
  const Spinor f = eigenfunction_at(bs, x);
  const Spinor df = eigenfunction_derivative(bs, x);
  const cd r0 = df[0] - R[0] * f[0] - R[1] * f[1];
  const cd r1 = df[1] - R[2] * f[0] - R[3] * f[1];
  const double scale = std::sqrt(norm2(df)) + std::abs(R[0] * f[0]) + std::abs(R[1] * f[1]) +
                       std::abs(R[2] * f[0]) + std::abs(R[3] * f[1]);
  const double res = std::sqrt(std::norm(r0) + std::norm(r1));
  return scale > 0.0 ? res / scale : res;
}

double residual_ry(const BoundStateSolution& bs, double x) {
  const auto& c = bs.coeffs;
  const auto y = pre_transform(bs, x);
  const auto dy = pre_transform_derivative(bs, x);
  const double m11 = -c.alpha - c.gamma * x;
  const double m12 = -c.beta - c.sigma * c.lambda;
  const double m21 = c.beta - c.sigma * c.lambda;
  const double r0 = x * dy[0] - m11 * y[0] - m12 * y[1];
  const double r1 = x * dy[1] - m21 * y[0] + m11 * y[1];
  const double scale = std::hypot(x * dy[0], x * dy[1]) + std::abs(m11 * y[0]) + std::abs(m12 * y[1]) +
                       std::abs(m21 * y[0]) + std::abs(m11 * y[1]);
  const double res = std::hypot(r0, r1);
  return scale > 0.0 ? res / scale : res;
}

double max_residual_rx(const BoundStateSolution& bs, double x_lo, double x_hi, int samples) {
  double worst = 0.0;
  for (double x : log_grid(x_lo, x_hi, samples)) worst = std::max(worst, residual_rx(bs, x));
  return worst;
}

double max_residual_ry(const BoundStateSolution& bs, double x_lo, double x_hi, int samples) {
  double worst = 0.0;
  for (double x : log_grid(x_lo, x_hi, samples)) worst = std::max(worst, residual_ry(bs, x));
  return worst;
}

double normalization_weight(const ExtremeKNParams& p, double x) {
  const double r = x + p.rho();
  return (r * r + p.a * p.a) / (x * x);
}

double normalization_integral(const BoundStateSolution& bs, const quad::QuadOptions& opt) {
  const double kappa = bs.coeffs.kappa;
  const double gamma = bs.coeffs.gamma;
  if (!(kappa > 0.5)) throw InvalidParameter("normalization_integral: kappa must exceed 1/2");
  auto integrand = [&](double x) { return density(bs, x) * normalization_weight(bs.params, x); };

  // On (0, 1] the integrand behaves like x^{2 kappa - 2}. With x = t^p it becomes
  // t^{p (2 kappa - 1) - 1}, which is at least linear for p >= 2 / (2 kappa - 1).
  const double p = std::clamp(std::ceil(2.0 / (2.0 * kappa - 1.0)), 2.0, 200.0);
  auto inner = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double x = std::pow(t, p);
    if (x <= 0.0) return 0.0;
    return integrand(x) * p * x / t;
  };
  // [1, inf) -> [0, 1) with x = 1 + c u / (1 - u), c set by the decay length.
  const double c = 1.0 / gamma;
  auto outer = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double s = 1.0 - u;
    const double x = 1.0 + c * u / s;
    const double v = integrand(x) * c / (s * s);
    return std::isfinite(v) ? v : 0.0;
  };
  const auto near = quad::gauss_kronrod(inner, 0.0, 1.0, opt);
  const auto far = quad::gauss_kronrod(outer, 0.0, 1.0, opt);
  return near.value + far.value;
}

}  // namespace kerrdirac::radial
