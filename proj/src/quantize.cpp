#include "kerrdirac/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kerrdirac/angular.hpp"
#include "kerrdirac/errors.hpp"
#include "kerrdirac/roots.hpp"

namespace kerrdirac::quantize {

namespace {

double L_of_s(HalfInteger k, Side side, double s) {
  const double kk = k.value();
  return sign_of(side) * 0.5 * std::sqrt(s * s + kk * kk);
}

angular::AngularProblem kerr_problem(HalfInteger k, double L) { return {k, L, -0.5 * k.value()}; }

// lambda on a known branch from two resolutions, extrapolated; the bracket
// [guess - width, guess + width] is widened by the solver if needed.
double refined_lambda(HalfInteger k, int branch, double L, double guess, double width, int grid) {
  angular::ShootingOptions opt;
  opt.grid = grid;
  const angular::Shooter coarse(kerr_problem(k, L), opt);
  const double lc = coarse.eigenvalue_on_branch(branch, guess - width, guess + width);
  opt.grid = 2 * grid;
  const angular::Shooter fine(kerr_problem(k, L), opt);
  const double lf = fine.eigenvalue_on_branch(branch, lc - 1e-8, lc + 1e-8);
  return lf + (lf - lc) / 63.0;
}

double quantization_function(HalfInteger k, int n, double L, double lambda) {
  return 1.0 + n + kerr_alpha(k, L) + std::sqrt(kerr_kappa_sq(k, L, lambda));
}

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os.precision(3);
  os << what << value;
  return os.str();
}


// Re-validates a refined root with a fresh eigenvalue at twice the refinement
// resolution and files it under states, suspicious or discarded.
void validate_root(HalfInteger k, double m, int n, int j, int branch, double L, double guess, double width,
                   const ScanOptions& opt, KerrSolveResult& result) {
  const auto window = KerrWindow::of(k, m);
  FlaggedRoot flag{n, j, L < 0.0 ? Side::Minus : Side::Plus, L, 0.0, {}};
  const double lambda = refined_lambda(k, branch, L, guess, width, 2 * opt.refine_grid);
  flag.kappa_sq = kerr_kappa_sq(k, L, lambda);
  if (!(flag.kappa_sq > 0.25)) {
    flag.reason = "kappa^2 <= 1/4";
    result.discarded.push_back(flag);
    return;
  }
  if (std::abs(L) - window.lo < opt.edge_tol || window.hi - std::abs(L) < opt.edge_tol) {
    flag.reason = "root within edge tolerance of the window end";
    result.suspicious.push_back(flag);
    return;
  }
  const auto params = radial::ExtremeKNParams::kerr(k, L / m, m);
  auto verdict = radial::classify_bound_state(params, lambda, n, j);
  auto* state = std::get_if<radial::BoundStateSolution>(&verdict);
  if (state == nullptr || state->n() != n) {
    flag.reason = describe("re-validation failed, F = ", quantization_function(k, n, L, lambda));
    result.suspicious.push_back(flag);
    return;
  }
  result.states.push_back(*state);
}

}  // namespace

Side parse_side(std::string_view text) {
  if (text == "+" || text == "plus") return Side::Plus;
  if (text == "-" || text == "minus") return Side::Minus;
  throw InvalidParameter("side must be + or -, got '" + std::string(text) + "'");
}

KerrWindow KerrWindow::of(HalfInteger k, double m) {
  if (!(m > 0.0)) throw InvalidParameter("particle mass m must be positive");
  return {k, m, 0.5 * k.abs(), k.abs() / std::sqrt(2.0)};
}

double kerr_alpha(HalfInteger k, double L) {
  const double k2 = k.value() * k.value();
  return (2.0 * L * L - k2) / std::sqrt(4.0 * L * L - k2);
}

double kerr_beta(HalfInteger k, double L) {
  const double k2 = k.value() * k.value();
  return -std::abs(k.value() * L) / std::sqrt(4.0 * L * L - k2);
}

double kerr_kappa_sq(HalfInteger k, double L, double lambda) {
  return lambda * lambda + L * L - k.value() * k.value();
}

void ScanOptions::validate() const {
  if (scan < 16 || scan_grid < 16 || refine_grid < 16) {
    throw InvalidParameter("scan resolutions must be >= 16");
  }
  if (!(root_tol > 0.0) || !(edge_tol > 0.0)) throw InvalidParameter("tolerances must be positive");
}

LambdaCurve lambda_curve(HalfInteger k, int j, Side side, const ScanOptions& opt) {
  opt.validate();
  LambdaCurve curve{k, j, side, angular::branch_of_label(k, j), {}, {}, {}};
  curve.s.resize(opt.scan);
  curve.L.resize(opt.scan);
  curve.lambda.resize(opt.scan);
  angular::ShootingOptions sopt;
  sopt.grid = opt.scan_grid;
  for (int i = 0; i < opt.scan; ++i) {
    const double s = k.abs() * (i + 1.0) / (opt.scan + 1.0);
    const double L = L_of_s(k, side, s);
    const angular::Shooter shooter(kerr_problem(k, L), sopt);
    double lambda;
    if (i == 0) {
      lambda = shooter.eigenvalue_on_branch(curve.branch);
    } else {
      // |d lambda / dL| <= 1, so the previous value brackets the next one.
      const double width = std::abs(L - curve.L[i - 1]) + 1e-9;
      lambda = shooter.eigenvalue_on_branch(curve.branch, curve.lambda[i - 1] - width,
                                            curve.lambda[i - 1] + width);
    }
    curve.s[i] = s;
    curve.L[i] = L;
    curve.lambda[i] = lambda;
  }
  return curve;
}

QuantizationCurve quantization_curve(const LambdaCurve& curve, double m, int n) {
  QuantizationCurve q{curve.k, m, n, curve.j, curve.side, {}};
  q.samples.reserve(curve.L.size());
  for (std::size_t i = 0; i < curve.L.size(); ++i) {
    CurveSample sample;
    sample.L = curve.L[i];
    const double kappa_sq = kerr_kappa_sq(curve.k, curve.L[i], curve.lambda[i]);
    sample.valid = kappa_sq > 0.0;
    sample.F = sample.valid ? quantization_function(curve.k, n, curve.L[i], curve.lambda[i])
                            : std::numeric_limits<double>::quiet_NaN();
    q.samples.push_back(sample);
  }
  return q;
}

KerrSolveResult solve_kerr(const LambdaCurve& curve, double m, int n_lo, int n_hi, const ScanOptions& opt) {
  opt.validate();
  if (n_lo < 0 || n_lo > n_hi) throw InvalidParameter("solve_kerr: need 0 <= n_lo <= n_hi");
  KerrWindow::of(curve.k, m);
  const HalfInteger k = curve.k;
  const std::size_t count = curve.L.size();
  KerrSolveResult result;

  for (int n = n_lo; n <= n_hi; ++n) {
    const auto q = quantization_curve(curve, m, n);
    for (std::size_t i = 0; i + 1 < count; ++i) {
      const auto& p0 = q.samples[i];
      const auto& p1 = q.samples[i + 1];
      if (!p0.valid || !p1.valid || (p0.F > 0.0) == (p1.F > 0.0)) continue;

      FlaggedRoot flag{n, curve.j, curve.side, 0.0, 0.0, {}};
      // Refine in s with lambda recomputed at every trial point.
      auto G = [&](double s) {
        const double L = L_of_s(k, curve.side, s);
        const double t = (s - curve.s[i]) / (curve.s[i + 1] - curve.s[i]);
        const double guess = curve.lambda[i] + t * (curve.lambda[i + 1] - curve.lambda[i]);
        const double width = std::abs(curve.L[i + 1] - curve.L[i]) + 1e-8;
        const double lambda = refined_lambda(k, curve.branch, L, guess, width, opt.refine_grid);
        const double kappa_sq = kerr_kappa_sq(k, L, lambda);
        return kappa_sq > 0.0 ? quantization_function(k, n, L, lambda) : std::numeric_limits<double>::quiet_NaN();
      };
      double s_root;
      try {
        s_root = brent_root(G, curve.s[i], curve.s[i + 1], 1e-2 * opt.root_tol);
      } catch (const InvalidParameter&) {
        flag.L = 0.5 * (p0.L + p1.L);
        flag.reason = "sign change lost under refinement";
        result.suspicious.push_back(flag);
        continue;
      }
      const double L = L_of_s(k, curve.side, s_root);
      const double t = (s_root - curve.s[i]) / (curve.s[i + 1] - curve.s[i]);
      const double guess = curve.lambda[i] + t * (curve.lambda[i + 1] - curve.lambda[i]);
      validate_root(k, m, n, curve.j, curve.branch, L, guess, std::abs(curve.L[i + 1] - curve.L[i]) + 1e-8, opt,
                    result);
    }
  }
  return result;
}

KerrSolveResult solve_kerr(HalfInteger k, double m, int n_lo, int n_hi, int j, Side side,
                           const ScanOptions& opt) {
  KerrWindow::of(k, m);
  return solve_kerr(lambda_curve(k, j, side, opt), m, n_lo, n_hi, opt);
}

std::optional<radial::BoundStateSolution> refine_kerr_root(HalfInteger k, double m, int n, int j, double L_guess,
                                                          const ScanOptions& opt) {
  opt.validate();
  const auto window = KerrWindow::of(k, m);
  if (!window.contains(L_guess)) return std::nullopt;
  const int branch = angular::branch_of_label(k, j);
  angular::ShootingOptions sopt;
  sopt.grid = opt.refine_grid;
  const double lambda0 = angular::Shooter(kerr_problem(k, L_guess), sopt).eigenvalue_on_branch(branch);
  const double sign = L_guess < 0.0 ? -1.0 : 1.0;
  // Work in |L| so that the bracket logic is side independent.
  auto lambda_at = [&](double absL) {
    return refined_lambda(k, branch, sign * absL, lambda0, std::abs(absL - std::abs(L_guess)) + 1e-6,
                          opt.refine_grid);
  };
  auto G = [&](double absL) {
    const double lambda = lambda_at(absL);
    const double kappa_sq = kerr_kappa_sq(k, absL, lambda);
    return kappa_sq > 0.0 ? quantization_function(k, n, absL, lambda) : std::numeric_limits<double>::quiet_NaN();
  };
  const double centre = std::abs(L_guess);
  const double g0 = G(centre);
  if (!std::isfinite(g0)) return std::nullopt;
  double lo = centre, hi = centre;
  bool found = g0 == 0.0;
  for (double delta = 1e-6; !found && delta < window.hi - window.lo; delta *= 4.0) {
    const double a = std::max(centre - delta, window.lo + 0.5 * opt.edge_tol);
    const double b = std::min(centre + delta, window.hi - 0.5 * opt.edge_tol);
    const double ga = G(a);
    const double gb = G(b);
    if (std::isfinite(ga) && (ga > 0.0) != (g0 > 0.0)) {
      lo = a;
      hi = centre;
      found = true;
    } else if (std::isfinite(gb) && (gb > 0.0) != (g0 > 0.0)) {
      lo = centre;
      hi = b;
      found = true;
    }
  }
  if (!found) return std::nullopt;
  const double absL = lo == hi ? centre : brent_root(G, lo, hi, 1e-2 * opt.root_tol);
  KerrSolveResult result;
  validate_root(k, m, n, j, branch, sign * absL, lambda0, std::abs(absL - centre) + 1e-6, opt, result);
  if (result.states.empty()) return std::nullopt;
  return result.states.front();
}

std::vector<SequenceEntry> enumerate_sequence(HalfInteger k, double m, int j, Side side, int n_lo, int n_hi,
                                              const ScanOptions& opt) {
  const auto result = solve_kerr(k, m, n_lo, n_hi, j, side, opt);
  std::vector<SequenceEntry> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    const radial::BoundStateSolution* best = nullptr;
    for (const auto& s : result.states) {
      if (s.n() != n) continue;
      if (best == nullptr || std::abs(s.params.a) < std::abs(best->params.a)) best = &s;
    }
    if (best != nullptr) out.push_back({n, best->params.a * m});
  }
  return out;
}

KerrNewmanReport check_kerr_newman(const radial::ExtremeKNParams& p, int jmax, int n_max, int grid) {
  p.validate();
  if (jmax < 1) throw InvalidParameter("check_kerr_newman: jmax must be >= 1");
  if (n_max < 0) throw InvalidParameter("check_kerr_newman: n_max must be >= 0");
  KerrNewmanReport report;
  report.omega = radial::compute_omega(p);
  report.tau = radial::compute_tau(p, report.omega);
  report.L = p.a * p.m;
  report.Omega = p.a * report.omega;
  const auto spectrum = angular::angular_spectrum({p.k, report.L, report.Omega}, jmax, grid);
  for (const auto& e : spectrum.eigenvalues) {
    auto verdict = radial::classify_bound_state(p, e.lambda, n_max, e.j);
    if (auto* state = std::get_if<radial::BoundStateSolution>(&verdict)) {
      report.states.push_back(*state);
    } else {
      report.rejections.push_back({e.j, e.lambda, std::get<radial::Rejection>(verdict)});
    }
  }
  return report;
}

}  // namespace kerrdirac::quantize
