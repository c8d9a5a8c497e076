// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "kerrdirac/angular.hpp"
#include "kerrdirac/errors.hpp"
#include "kerrdirac/quantize.hpp"
#include "kerrdirac/radial.hpp"
#include "kerrdirac/verify.hpp"

using namespace kerrdirac;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

constexpr double kM = 1.0;
constexpr int kNMax = 10;
constexpr int kJMax = 6;

struct Scan {
  std::vector<radial::BoundStateSolution> states;
  std::vector<quantize::FlaggedRoot> suspicious;
  double seconds = 0.0;
};

// Full scan n in [0, 10], 0 < |j| <= 6 on both sides of the window.
Scan scan_k(HalfInteger k) {
  Timer t;
  Scan s;
  for (auto side : {quantize::Side::Minus, quantize::Side::Plus}) {
    for (int j = -kJMax; j <= kJMax; ++j) {
      if (j == 0) continue;
      auto r = quantize::solve_kerr(k, kM, 0, kNMax, j, side);
      s.states.insert(s.states.end(), r.states.begin(), r.states.end());
      s.suspicious.insert(s.suspicious.end(), r.suspicious.begin(), r.suspicious.end());
    }
  }
  s.seconds = t.seconds();
  return s;
}

const radial::BoundStateSolution* find_root(const Scan& s, double am, double tol) {
  const radial::BoundStateSolution* best = nullptr;
  for (const auto& st : s.states) {
    const double L = st.params.a * st.params.m;
    if (std::abs(L - am) <= tol && (best == nullptr || std::abs(L - am) < std::abs(best->params.a * kM - am))) {
      best = &st;
    }
  }
  return best;
}

void criterion_reference_roots(const std::map<int, Scan>& scans) {
  struct Quoted {
    int twice_k;
    double am;
    double omega_over_m;
  };
  const Quoted quoted[] = {{5, -1.264065, 0.988873}, {5, -1.266630, 0.986871}, {17, -4.594167, 0.925086}};
  bool ok = true;
  std::string detail;
  for (const auto& q : quoted) {
    const double k = 0.5 * q.twice_k;
    const double omega_exact = -k / (2.0 * q.am) / kM;  // omega = -k / (2a) at m = 1
    const bool omega_consistent = std::abs(omega_exact - q.omega_over_m) <= 5e-7;
    const auto* st = find_root(scans.at(q.twice_k), q.am, 1e-4);
    if (st == nullptr) {
      ok = false;
      detail += fmt("k=%g am=%.6f not found; ", k, q.am);
      continue;
    }
    const double omega = st->omega / st->params.m;
    const bool omega_ok = omega_consistent && std::abs(omega - q.omega_over_m) <= 1e-4;
    ok = ok && omega_ok;
    detail += fmt("k=%g am=%.10f (n=%d, j=%d, |dam|=%.1e) omega/m=%.6f; ", k, st->params.a * kM, st->n(), st->j,
                  std::abs(st->params.a * kM - q.am), omega);
  }
  report(1, ok, "reference roots (|dam| <= 1e-4)", detail);
}

struct MarginCount {
  int roots = 0;
  int samples = 0;
};

// Margins of width 0.2 on both sides of the window and on both signs of am: count
// sign changes of 1 + n + alpha + kappa_j and bound states reported by classification.
MarginCount margin_scan(HalfInteger k) {
  const auto w = quantize::KerrWindow::of(k, kM);
  MarginCount c;
  const int points = 40;
  for (int sign : {-1, 1}) {
    for (auto [lo, hi] : {std::pair{w.lo - 0.2, w.lo}, std::pair{w.hi, w.hi + 0.2}}) {
      for (int j = -kJMax; j <= kJMax; ++j) {
        if (j == 0) continue;
        std::vector<std::vector<double>> F(kNMax + 1);
        std::vector<bool> valid;
        for (int i = 0; i <= points; ++i) {
          // closed interval minus the window end itself
          double L = lo + (hi - lo) * i / points;
          if (std::abs(L - w.lo) < 1e-12) L -= 1e-9;
          if (std::abs(L - w.hi) < 1e-12) L += 1e-9;
          L = std::max(L, 1e-3) * sign;
          const auto p = radial::ExtremeKNParams::kerr(k, L / kM, kM);
          const double lambda = angular::angular_eigenvalue({k, L, p.a * radial::compute_omega(p)}, j, 400);
          const auto cls = radial::classify_bound_state(p, lambda, kNMax, j);
          if (std::holds_alternative<radial::BoundStateSolution>(cls)) ++c.roots;
          ++c.samples;
          const bool energy_ok = std::abs(L) > w.lo;
          const double kappa_sq = energy_ok ? quantize::kerr_kappa_sq(k, L, lambda) : -1.0;
          valid.push_back(kappa_sq > 0.0);
          for (int n = 0; n <= kNMax; ++n) {
            F[n].push_back(kappa_sq > 0.0 ? 1 + n + quantize::kerr_alpha(k, L) + std::sqrt(kappa_sq) : 0.0);
          }
        }
        for (int n = 0; n <= kNMax; ++n) {
          for (std::size_t i = 1; i < valid.size(); ++i) {
            if (valid[i] && valid[i - 1] && (F[n][i] < 0) != (F[n][i - 1] < 0)) ++c.roots;
          }
        }
      }
    }
  }
  return c;
}

void criterion_window(const std::map<int, Scan>& scans) {
  bool ok = true;
  std::string detail;
  for (const auto& [twice, scan] : scans) {
    const auto k = HalfInteger::from_twice(twice);
    int inside = 0;
    for (const auto& st : scan.states) {
      const double L = st.params.a * st.params.m;
      const double Mm = st.params.M * st.params.m;
      const bool good = std::abs(L) > k.abs() / 2 && std::abs(L) < k.abs() / std::sqrt(2.0) && Mm > 0.25;
      inside += good;
      ok = ok && good;
    }
    const auto margin = margin_scan(k);
    ok = ok && margin.roots == 0;
    detail += fmt("k=%g %d/%zu roots inside, %d margin roots in %d samples; ", k.value(), inside, scan.states.size(),
                  margin.roots, margin.samples);
  }
  report(2, ok, "window and necessary conditions", detail);
}

void criterion_rn() {
  Timer t;
  bool ok = true;
  int cases = 0, rejected = 0;
  for (double Q : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    for (double e : {-0.9, -0.45, 0.0, 0.45, 0.9}) {
      const auto p = radial::ExtremeKNParams::extreme(HalfInteger::from_twice(1), 0.0, Q, kM, e);
      const auto r = quantize::check_kerr_newman(p, 5, kNMax);
      bool case_ok = r.states.empty() && !r.rejections.empty();
      for (const auto& rej : r.rejections) {
        case_ok = case_ok && rej.reason == radial::Rejection::Quantization;
        ++rejected;
      }
      ok = ok && case_ok;
      ++cases;
    }
  }
  const double sec = t.seconds();
  ok = ok && sec < 60.0;
  report(3, ok, "extreme RN non-existence",
         fmt("%d (Q, e) cases, %d eigenvalues all rejected by quantization, %.2f s", cases, rejected, sec));
}

void criterion_identities() {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int draws = 0, attempts = 0;
  double worst = 0.0;
  while (draws < 1000) {
    ++attempts;
    const auto k = HalfInteger::from_twice(2 * static_cast<int>(rng() % 10) - 9);
    const double a = 4 * u(rng), Q = 3 * u(rng), m = 2 + 1.9 * u(rng), e = m * u(rng), lambda = 8 * u(rng);
    if (std::hypot(a, Q) < 1e-3) continue;
    const auto p = radial::ExtremeKNParams::extreme(k, a, Q, m, e);
    radial::RadialCoefficients c;
    try {
      c = radial::compute_coefficients(p, lambda);
    } catch (const EnergyOutOfRange&) {
      continue;
    } catch (const KappaTooSmall&) {
      continue;
    }
    const double rho = p.rho(), mu = 2 * rho * c.omega + e * Q;
    const double ref = rho * rho * m * m - mu * mu;
    const double ab = c.alpha * c.alpha - c.beta * c.beta;
    const double kl = c.kappa * c.kappa - lambda * lambda;
    const double scale = std::max({std::abs(ref), c.alpha * c.alpha, c.beta * c.beta, rho * rho * m * m, mu * mu});
    worst = std::max({worst, std::abs(ab - ref) / scale, std::abs(kl - ref) / scale});
    ++draws;
  }
  report(4, worst <= 1e-12, "identity suite",
         fmt("%d valid draws of %d, max relative error %.2e (tol 1e-12)", draws, attempts, worst));
}

void criterion_lipschitz() {
  double worst = 0.0;  // max |d lambda| / h
  int comparisons = 0;
  for (int twice : {1, 3}) {
    const auto k = HalfInteger::from_twice(twice);
    for (double L : {-2.0, 0.0, 2.0}) {
      for (double Om : {-2.0, 0.0, 2.0}) {
        const auto base = angular::angular_spectrum({k, L, Om}, 5);
        for (double h : {1e-3, 1e-4}) {
          const auto dl = angular::angular_spectrum({k, L + h, Om}, 5);
          const auto dw = angular::angular_spectrum({k, L, Om + h}, 5);
          for (std::size_t i = 0; i < base.eigenvalues.size(); ++i) {
            worst = std::max(worst, std::abs(dl.eigenvalues[i].lambda - base.eigenvalues[i].lambda) / h);
            worst = std::max(worst, std::abs(dw.eigenvalues[i].lambda - base.eigenvalues[i].lambda) / h);
            comparisons += 2;
          }
        }
      }
    }
  }
  report(5, worst <= 1 + 1e-3, "Lipschitz in L and Omega",
         fmt("%d difference quotients, max |d lambda|/h = %.6f (bound 1.001)", comparisons, worst));
}

void criterion_oracle() {
  double worst = 0.0, worst_estimate = 0.0;
  int count = 0;
  for (int twice : {1, 3, 5}) {
    for (double L : {-1.0, 0.0, 1.0}) {
      for (double Om : {-1.0, 0.0, 1.0}) {
        const angular::AngularProblem p{HalfInteger::from_twice(twice), L, Om};
        const auto shoot = angular::angular_spectrum(p, 5);
        const auto dense = verify::angular_oracle(p, 5, {400, 800, 1600});
        for (std::size_t i = 0; i < shoot.eigenvalues.size(); ++i) {
          worst = std::max(worst, std::abs(shoot.eigenvalues[i].lambda - dense.spectrum.eigenvalues[i].lambda));
          worst_estimate = std::max(worst_estimate, dense.error[i]);
          ++count;
        }
      }
    }
  }
  report(6, worst <= 1e-6, "shooting vs dense-matrix oracle",
         fmt("%d eigenvalues, max difference %.2e (tol 1e-6), oracle error estimate <= %.2e", count, worst,
             worst_estimate));
}

void criterion_eigenfunctions(const std::map<int, Scan>& scans) {
  double worst_residual = 0.0, worst_drift = 0.0;
  int count = 0;
  bool finite = true;
  quad::QuadOptions base, half;
  half.rel_tol = base.rel_tol / 2;
  for (const auto& [twice, scan] : scans) {
    for (const auto& st : scan.states) {
      worst_residual = std::max(worst_residual, radial::max_residual_rx(st, 1e-3, 50.0));
      const double n1 = radial::normalization_integral(st, base);
      const double n2 = radial::normalization_integral(st, half);
      finite = finite && std::isfinite(n1) && n1 > 0.0;
      worst_drift = std::max(worst_drift, std::abs(n1 - n2) / n1);
      ++count;
    }
  }
  const bool ok = count > 0 && finite && worst_residual <= 1e-8 && worst_drift <= 1e-8;
  report(7, ok, "eigenfunction validity",
         fmt("%d states, max (Rx) residual on [1e-3, 50] %.2e (tol 1e-8), max normalization drift under "
             "tolerance halving %.2e (tol 1e-8)",
             count, worst_residual, worst_drift));
}

void criterion_singular_points() {
  bool ok = true;
  std::string detail;
  const auto osc = verify::check_oscillation_default();
  ok = ok && osc.non_normalizable;
  detail += fmt("oscillation tau=%.3f min ratios %.3f/%.3f; ", osc.tau, osc.min_ratio[0], osc.min_ratio[1]);
  for (auto c : {verify::RegularCase::Elliptic, verify::RegularCase::Jordan, verify::RegularCase::Hyperbolic,
                 verify::RegularCase::Trivial}) {
    const auto r = verify::check_regular(c);
    ok = ok && r.passed;
    detail += fmt("regular/%s %s; ", verify::to_string(c).c_str(), r.passed ? "ok" : "failed");
  }
  for (auto c : {verify::ThresholdCase::Bessel, verify::ThresholdCase::ModifiedBessel,
                 verify::ThresholdCase::Degenerate}) {
    const auto r = verify::check_threshold_case(c);
    ok = ok && r.passed;
    detail += fmt("threshold/%s %s; ", verify::to_string(c).c_str(), r.passed ? "ok" : "failed");
  }
  report(8, ok, "singular-point checks", detail);
}

void sequence_monotonicity() {
  bool ok = true;
  std::string detail;
  for (auto [twice, j] : {std::pair{5, -4}, std::pair{17, -3}}) {
    const auto k = HalfInteger::from_twice(twice);
    const auto seq = quantize::enumerate_sequence(k, kM, j, quantize::Side::Minus, 0, kNMax);
    bool mono = seq.size() >= 2;
    for (std::size_t i = 1; i < seq.size(); ++i) {
      mono = mono && std::abs(seq[i].L) < std::abs(seq[i - 1].L) && std::abs(seq[i].L) > k.abs() / 2;
    }
    ok = ok && mono;
    detail += fmt("k=%g j=%d: %zu terms, |L| from %.6f down to %.6f (limit %.4f); ", k.value(), j, seq.size(),
                  seq.empty() ? 0.0 : std::abs(seq.front().L), seq.empty() ? 0.0 : std::abs(seq.back().L),
                  k.abs() / 2);
  }
  report(9, ok, "sequence monotonicity toward |k|/2", detail);
}

}  // namespace

int main() {
  Timer total;
  std::map<int, Scan> scans;
  for (int twice : {1, 3, 5, 17}) {
    try {
      scans[twice] = scan_k(HalfInteger::from_twice(twice));
      std::printf("scan k=%g: %zu states, %zu flagged, %.1f s\n", 0.5 * twice, scans[twice].states.size(),
                  scans[twice].suspicious.size(), scans[twice].seconds);
    } catch (const Error& e) {
      std::printf("scan k=%g failed: %s\n", 0.5 * twice, e.what());
      scans[twice] = {};
    }
  }
  std::fflush(stdout);

  auto guarded = [](int id, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, false, "exception", e.what());
    }
  };
  guarded(1, [&] { criterion_reference_roots(scans); });
  guarded(2, [&] { criterion_window(scans); });
  guarded(3, criterion_rn);
  guarded(4, criterion_identities);
  guarded(5, criterion_lipschitz);
  guarded(6, criterion_oracle);
  guarded(7, [&] { criterion_eigenfunctions(scans); });
  guarded(8, criterion_singular_points);
  guarded(9, sequence_monotonicity);
  std::printf("%s: %d failing, %.1f s total\n", failures == 0 ? "ALL PASS" : "FAILURES", failures, total.seconds());
  return failures == 0 ? 0 : 1;
}
