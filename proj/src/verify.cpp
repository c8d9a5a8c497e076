#include "kerrdirac/verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "kerrdirac/errors.hpp"
#include "kerrdirac/ode.hpp"

namespace kerrdirac::verify {

namespace {

using cd = std::complex<double>;
using radial::Spinor;

double norm(const Spinor& s) { return std::sqrt(std::norm(s[0]) + std::norm(s[1])); }

Spinor mat_vec(const Matrix2c& m, const Spinor& y) {
  return {m[0] * y[0] + m[1] * y[1], m[2] * y[0] + m[3] * y[1]};
}

}  // namespace

radial::SampledFunction integrate(const LinearSystemSpec& sys, double x0, double x1, const Spinor& y0,
                                  double tol) {
  const double lo = std::min(x0, x1);
  const double hi = std::max(x0, x1);
  if (!(lo >= sys.lo && hi <= sys.hi)) {
    throw InvalidParameter("integrate: [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "] leaves the domain of " + sys.tag);
  }
  if (!(tol > 0.0)) throw InvalidParameter("integrate: tol must be positive");
  ode::AdaptiveOptions opt;
  opt.rtol = tol;
  opt.atol = tol * 1e-6 * norm(y0);
  if (opt.atol == 0.0) opt.atol = 1e-300;
  auto rhs = [&](double x, const Spinor& y) { return mat_vec(sys.matrix(x), y); };
  auto traj = ode::integrate_dp45<cd, 2>(rhs, x0, x1, y0, opt);
  return {std::move(traj.x), std::move(traj.y)};
}

LinearSystemSpec rx_system(const radial::ExtremeKNParams& p, double omega, double lambda) {
  return {[p, omega, lambda](double x) { return radial::rx_matrix(p, omega, lambda, x); }, 0.0,
          std::numeric_limits<double>::infinity(), "Rx"};
}

LinearSystemSpec rw_system(const radial::ExtremeKNParams& p, double omega, double lambda) {
  const double rho = p.rho();
  const double tau = radial::compute_tau(p, omega);
  const double mu = 2.0 * rho * omega + p.e * p.Q;
  const double s = omega >= 0.0 ? 1.0 : -1.0;
  const double m = p.m;
  const double c = rho * m - s * mu;
  const double d = rho * m + s * mu;
  const double w = std::abs(omega);
  return {[=](double x) {
            const double x2 = x * x;
            return Matrix2c{s * lambda / x, -s * tau / x2 + c / x + m - w, s * tau / x2 + d / x + m + w,
                            -s * lambda / x};
          },
          0.0, std::numeric_limits<double>::infinity(), "Rw"};
}

LinearSystemSpec ry_system(const radial::RadialCoefficients& c) {
  return {[c](double x) {
            const double m11 = (-c.alpha - c.gamma * x) / x;
            return Matrix2c{m11, (-c.beta - c.sigma * c.lambda) / x, (c.beta - c.sigma * c.lambda) / x, -m11};
          },
          0.0, std::numeric_limits<double>::infinity(), "Ry"};
}

LinearSystemSpec d2_system(const Matrix2c& A, const Matrix2c& B) {
  return {[A, B](double x) {
            Matrix2c m;
            for (int i = 0; i < 4; ++i) m[i] = A[i] / x + B[i];
            return m;
          },
          0.0, 1.0, "D2"};
}

// ---------------------------------------------------------------------------

OscillationReport check_oscillation(const radial::ExtremeKNParams& p, double omega, double lambda, double x_min,
                                    double tol) {
  p.validate();
  OscillationReport r;
  r.omega = omega;
  r.tau = radial::compute_tau(p, omega);
  r.lambda = lambda;
  r.x_min = x_min;
  if (r.tau == 0.0) throw InvalidParameter("check_oscillation: tau must be nonzero");
  const auto sys = rw_system(p, omega, lambda);
  const std::array<Spinor, 2> seeds = {Spinor{1.0, 0.0}, Spinor{0.0, 1.0}};
  bool ok = true;
  for (int s = 0; s < 2; ++s) {
    const auto run = integrate(sys, 1.0, x_min, seeds[s], tol);
    const double w1 = norm(seeds[s]);
    double min_ratio = std::numeric_limits<double>::infinity();
    double floor = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < run.x.size(); ++i) {
      const double x = run.x[i];
      const double wn = norm(run.values[i]);
      min_ratio = std::min(min_ratio, wn / w1);
      const double rr = x + p.rho();
      floor = std::min(floor, wn * wn * (rr * rr + p.a * p.a) / (w1 * w1));
    }
    r.min_ratio[s] = min_ratio;
    r.weighted_floor[s] = floor;
    ok = ok && min_ratio >= 0.1 && floor > 0.0;
  }
  const auto base = integrate(sys, 1.0, x_min, seeds[0], tol).values.back();
  const auto scaled = integrate(sys, 1.0, x_min, Spinor{5.0, 0.0}, tol).values.back();
  r.scaling_error = norm(Spinor{scaled[0] - 5.0 * base[0], scaled[1] - 5.0 * base[1]}) / norm(scaled);
  r.non_normalizable = ok;
  return r;
}

OscillationReport check_oscillation_default(double shift) {
  const auto k = HalfInteger::from_twice(1);
  const auto p = radial::ExtremeKNParams::kerr(k, 0.4, 1.0);
  const double omega = radial::compute_omega(p) + shift;
  const double lambda = angular::angular_eigenvalue({k, p.a * p.m, p.a * omega}, 1);
  return check_oscillation(p, omega, lambda);
}

std::array<double, 3> bound_state_decay(const radial::BoundStateSolution& bs) {
  std::array<double, 3> out{};
  const std::array<double, 3> xs = {1e-2, 1e-3, 1e-4};
  for (int i = 0; i < 3; ++i) {
    out[i] = norm(radial::eigenfunction_at(bs, xs[i])) / std::pow(xs[i], bs.coeffs.kappa);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(RegularCase c) {
  switch (c) {
    case RegularCase::Elliptic: return "elliptic";
    case RegularCase::Jordan: return "jordan";
    case RegularCase::Hyperbolic: return "hyperbolic";
    case RegularCase::Trivial: return "trivial";
  }
  return "unknown";
}

RegularReport check_regular(RegularCase which, double x_min, double tol) {
  Matrix2c A{}, B{};
  switch (which) {
    case RegularCase::Elliptic:
      A = {0.0, 0.5, -0.5, 0.0};
      B = {0.2, 0.5, 0.3, -0.2};
      break;
    case RegularCase::Jordan:
      A = {0.0, 1.0, 0.0, 0.0};
      break;
    case RegularCase::Hyperbolic:
      A = {-0.5, 0.0, 0.0, 0.5};
      B = {0.1, 0.2, -0.3, -0.1};
      break;
    case RegularCase::Trivial:
      break;
  }
  RegularReport r;
  r.which = which;
  r.det_a = (A[0] * A[3] - A[1] * A[2]).real();
  r.min_ratio = std::numeric_limits<double>::infinity();
  r.min_abs = std::numeric_limits<double>::infinity();
  const bool closed_form = which == RegularCase::Jordan || which == RegularCase::Trivial;
  const auto sys = d2_system(A, B);
  const std::array<Spinor, 3> seeds = {Spinor{1.0, 0.0}, Spinor{0.0, 1.0}, Spinor{1.0, cd(0.0, 1.0)}};
  for (const auto& seed : seeds) {
    const auto run = integrate(sys, 1.0, x_min, seed, tol);
    const double y1 = norm(seed);
    for (std::size_t i = 0; i < run.x.size(); ++i) {
      const double x = run.x[i];
      const double yn = norm(run.values[i]);
      r.min_ratio = std::min(r.min_ratio, yn / (std::sqrt(x) * y1));
      r.min_abs = std::min(r.min_abs, yn / y1);
      if (closed_form) {
        // B = 0: y(x) = x^A y(1) = (I + log(x) A) y(1) since A^2 = 0.
        const double lx = std::log(x);
        const Spinor exact{seed[0] + lx * (A[0] * seed[0] + A[1] * seed[1]),
                           seed[1] + lx * (A[2] * seed[0] + A[3] * seed[1])};
        const Spinor diff{run.values[i][0] - exact[0], run.values[i][1] - exact[1]};
        r.closed_form_error = std::max(r.closed_form_error, norm(diff) / norm(exact));
      }
    }
  }
  r.passed = r.min_ratio >= 1e-3 && (!closed_form || r.closed_form_error <= 1e-6);
  return r;
}

// ---------------------------------------------------------------------------

std::string to_string(ThresholdCase c) {
  switch (c) {
    case ThresholdCase::Bessel: return "bessel";
    case ThresholdCase::ModifiedBessel: return "modified-bessel";
    case ThresholdCase::Degenerate: return "degenerate";
  }
  return "unknown";
}

ThresholdParams threshold_instance(ThresholdCase which) {
  switch (which) {
    case ThresholdCase::Bessel: return {0.5, 1.0, 1, 1.5, 2.0};            // c = -1, kappa^2 = 2
    case ThresholdCase::ModifiedBessel: return {25.0, 1.0, 1, -25.0, 1.0};  // c = 50, kappa = 1
    case ThresholdCase::Degenerate: return {1.0, 1.0, 1, 1.0, 1.5};         // c = 0
  }
  return {};
}

ThresholdReport check_threshold_case(ThresholdCase which, double tol) {
  return check_threshold_case(which, threshold_instance(which), tol);
}

ThresholdReport check_threshold_case(ThresholdCase which, const ThresholdParams& tp, double tol) {
  ThresholdReport r;
  r.which = which;
  r.params = tp;
  const double c = tp.c();
  const double d = tp.d();
  const double sl = tp.sigma * tp.lambda;
  const double m = tp.m;
  const LinearSystemSpec sys{[=](double x) { return Matrix2c{sl / x, c / x, (d + 2.0 * m * x) / x, -sl / x}; },
                             0.0, std::numeric_limits<double>::infinity(), "R2"};

  if (which == ThresholdCase::Degenerate) {
    if (std::abs(c) > 1e-14) throw InvalidParameter("degenerate case needs rho m - sigma mu = 0");
    // u solves x u' = sigma lambda u on its own; with u = 0, v = x^{-sigma lambda}.
    for (double x_end : {1e-3, 10.0}) {
      const auto ru = integrate(sys, 1.0, x_end, Spinor{1.0, 0.0}, tol);
      const auto rv = integrate(sys, 1.0, x_end, Spinor{0.0, 1.0}, tol);
      for (std::size_t i = 0; i < ru.x.size(); ++i) {
        r.power_error = std::max(r.power_error, std::abs(ru.values[i][0] / std::pow(ru.x[i], sl) - 1.0));
      }
      for (std::size_t i = 0; i < rv.x.size(); ++i) {
        r.power_error = std::max(r.power_error, std::abs(rv.values[i][1] / std::pow(rv.x[i], -sl) - 1.0));
        r.power_error = std::max(r.power_error, std::abs(rv.values[i][0]));
      }
    }
    r.passed = r.power_error <= 1e-7 && tp.lambda != 0.0;
    return r;
  }

  if ((which == ThresholdCase::Bessel) != (c < 0.0) || c == 0.0) {
    throw InvalidParameter("threshold case does not match the sign of rho m - sigma mu");
  }
  const double kappa_sq = tp.kappa_sq();
  if (!(kappa_sq > 0.0)) throw InvalidParameter("threshold case needs kappa^2 > 0");
  const double kappa = std::sqrt(kappa_sq);

  // Seed the solution that is square integrable at 0 from its power series.
  const double x0 = std::min(1e-2, 1.0 / (8.0 * m * std::abs(c)));
  double u = 0.0, du = 0.0, term = std::pow(x0, kappa);
  for (int i = 0; i < 200; ++i) {
    if (i > 0) term *= 2.0 * m * c * x0 / (i * (2.0 * kappa + i));
    u += term;
    du += (kappa + i) * term / x0;
    if (std::abs(term) < 1e-17 * std::abs(u)) break;
  }
  const double v = (x0 * du - sl * u) / c;
  const double x_end = which == ThresholdCase::Bessel ? 500.0 : 200.0;
  const auto run = integrate(sys, x0, x_end, Spinor{u, v}, tol);

  if (which == ThresholdCase::Bessel) {
    const double b = std::sqrt(8.0 * m * std::abs(c));
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < run.x.size(); ++i) {
      const double x = run.x[i];
      if (x < 50.0) continue;
      const double ui = run.values[i][0].real();
      const double dui = (sl * ui + c * run.values[i][1].real()) / x;
      const double env = std::pow(x, 0.25) * std::hypot(ui, 2.0 * std::sqrt(x) * dui / b);
      lo = std::min(lo, env);
      hi = std::max(hi, env);
    }
    r.envelope_spread = hi / lo;
    r.passed = r.envelope_spread <= 1.2;
  } else {
    r.growth_ratio = std::log(std::abs(run.values.back()[0])) / std::sqrt(8.0 * m * c * x_end);
    r.passed = std::abs(r.growth_ratio - 1.0) <= 0.05;
  }
  return r;
}

// ---------------------------------------------------------------------------

Tridiagonal angular_matrix(const angular::AngularProblem& p, int n) {
  if (n < 4) throw InvalidParameter("angular_matrix: need at least 4 cells");
  using std::numbers::pi;
  const double k = p.k.value();
  const double s = k > 0.0 ? 1.0 : -1.0;
  const double h = pi / (n + 0.5);
  // Exponential fitting: the off-diagonal weights integrate the W term exactly.
  auto phi = [&](double t) { return k * std::log(std::tan(0.5 * t)) - p.Omega * std::cos(t); };
  Tridiagonal t;
  t.d.resize(2 * n);
  t.e.resize(2 * n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * h;  // first component
    const double y = (i + 1.0) * h;  // second component
    t.d[2 * i] = -s * p.L * std::cos(x);
    t.d[2 * i + 1] = s * p.L * std::cos(y);
    t.e[2 * i] = s * std::exp(s * (phi(y) - phi(x))) / h;
    if (i + 1 < n) {
      const double xn = (i + 1.5) * h;
      t.e[2 * i + 1] = -s * std::exp(s * (phi(y) - phi(xn))) / h;
    }
  }
  return t;
}

int sturm_count(const Tridiagonal& t, double mu) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.d.size(); ++i) {
    const double off = i == 0 ? 0.0 : t.e[i - 1] * t.e[i - 1] / q;
    q = t.d[i] - mu - off;
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

double tridiagonal_eigenvalue(const Tridiagonal& t, int idx) {
  const int size = static_cast<int>(t.d.size());
  if (idx < 0 || idx >= size) throw InvalidParameter("tridiagonal_eigenvalue: index out of range");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = 0; i < size; ++i) {
    const double r = (i > 0 ? std::abs(t.e[i - 1]) : 0.0) + (i + 1 < size ? std::abs(t.e[i]) : 0.0);
    lo = std::min(lo, t.d[i] - r);
    hi = std::max(hi, t.d[i] + r);
  }
  for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max({1.0, std::abs(lo), std::abs(hi)}); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(t, mid) > idx) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

int oracle_index(HalfInteger k, int n, int j) {
  const int zero = sturm_count(angular_matrix({k, 0.0, 0.0}, n), 0.0);
  return j > 0 ? zero + j - 1 : zero + j;
}

}  // namespace

OracleSpectrum angular_oracle(const angular::AngularProblem& p, int jmax, const std::vector<int>& grids, double tol) {
  if (grids.size() < 2) throw InvalidParameter("angular_oracle: need at least two grid sizes");
  if (jmax < 1) throw InvalidParameter("angular_oracle: jmax must be >= 1");
  std::vector<int> sizes = grids;
  std::sort(sizes.begin(), sizes.end());
  std::vector<std::vector<double>> raw;  // raw[g][label position]
  std::vector<int> labels;
  for (int j = -jmax; j <= jmax; ++j) {
    if (j != 0) labels.push_back(j);
  }
  for (int n : sizes) {
    const auto t = angular_matrix(p, n);
    std::vector<double> vals;
    for (int j : labels) vals.push_back(tridiagonal_eigenvalue(t, oracle_index(p.k, n, j)));
    raw.push_back(std::move(vals));
  }
  auto extrapolate = [&](std::size_t g, std::size_t i) {
    const double r = (sizes[g + 1] + 0.5) / (sizes[g] + 0.5);
    return raw[g + 1][i] + (raw[g + 1][i] - raw[g][i]) / (r * r - 1.0);
  };
  OracleSpectrum out{{p, {}}, {}};
  const std::size_t last = sizes.size() - 2;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double value = extrapolate(last, i);
    double err;
    if (last > 0) {
      err = std::abs(value - extrapolate(last - 1, i));
    } else {
      const double r = (sizes[1] + 0.5) / (sizes[0] + 0.5);
      err = std::abs(raw[1][i] - raw[0][i]) / (r * r - 1.0);
    }
    if (err > tol) {
      throw NotConverged("angular_oracle: j = " + std::to_string(labels[i]) + " error estimate " +
                         std::to_string(err) + " exceeds tolerance");
    }
    out.spectrum.eigenvalues.push_back({labels[i], value});
    out.error.push_back(err);
  }
  return out;
}

int oracle_count(const angular::AngularProblem& p, int n, double lo, double hi) {
  const auto t = angular_matrix(p, n);
  // Count of eigenvalues in [lo, hi]: those below the next double after hi,
  // minus those strictly below lo.
  return sturm_count(t, std::nextafter(hi, std::numeric_limits<double>::infinity())) - sturm_count(t, lo);
}

// ---------------------------------------------------------------------------

NormalizationOracle normalization_oracle(const radial::BoundStateSolution& bs) {
  using boost::math::quadrature::gauss;
  const double kappa = bs.coeffs.kappa;
  const double gamma = bs.coeffs.gamma;
  auto integrand = [&](double x) { return radial::density(bs, x) * radial::normalization_weight(bs.params, x); };

  NormalizationOracle out;
  // Below x0 the integrand is c x^{2 kappa - 2} to relative O(x0).
  const double x0 = 1e-10;
  out.head = integrand(x0) * x0 / (2.0 * kappa - 1.0);
  double total = out.head;

  // Geometric panels on [x0, 1].
  constexpr int kGeometric = 120;
  const double ratio = std::pow(1.0 / x0, 1.0 / kGeometric);
  double a = x0;
  for (int i = 0; i < kGeometric; ++i) {
    const double b = i + 1 == kGeometric ? 1.0 : a * ratio;
    total += gauss<double, 30>::integrate(integrand, a, b);
    a = b;
  }
  // Uniform panels beyond 1 until past the peak and negligible.
  const int degree = bs.special() ? 0 : bs.n() + 1;
  const double s = 2.0 * kappa + 2.0 * degree + 1.0;  // power in the large-x bound
  const double peak = s / (2.0 * gamma);
  const double width = std::min(1.0, 0.5 / gamma);
  a = 1.0;
  for (int i = 0; i < 1000000; ++i) {
    const double b = a + width;
    total += gauss<double, 30>::integrate(integrand, a, b);
    a = b;
    if (a > 2.0 * peak && integrand(a) * (a + 1.0 / gamma) < 1e-17 * total) break;
  }
  out.cutoff = a;
  // Beyond the cutoff |f|^2 w(x) <= C x^{s-1} e^{-2 gamma x}, with C fixed at the
  // cutoff (the polynomial factor is monotone there); the tail is an incomplete Gamma.
  const double C = integrand(a) / (std::pow(a, s - 1.0) * std::exp(-2.0 * gamma * a));
  out.tail_bound = 2.0 * C * boost::math::tgamma(s, 2.0 * gamma * a) / std::pow(2.0 * gamma, s);
  if (!std::isfinite(out.tail_bound)) out.tail_bound = 0.0;
  out.value = total + out.tail_bound;
  return out;
}

}  // namespace kerrdirac::verify
