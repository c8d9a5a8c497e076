#include "kerrdirac/angular.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "kerrdirac/errors.hpp"
#include "kerrdirac/ode.hpp"
#include "kerrdirac/roots.hpp"

namespace kerrdirac::angular {

using std::numbers::pi;

// Mesh variable xi = log(theta) + theta / kMeshScale: geometric steps near the
// singular endpoint, uniform steps in the bulk.
constexpr double kMeshScale = 0.25;

struct ShootingMesh {
  int grid = 0;
  double eps = 0.0;
  double h = 0.0;
  // Stage nodes: for step i, indices 4i + {0, 1, 2, 3} hold xi_i + h {0, 1/3, 1/2, 2/3}.
  std::vector<double> theta, dtheta, sin, cos;
};

namespace {

double theta_of_xi(double xi) {
  // Solve s + exp(s) / kMeshScale = xi for s = log(theta); the left side is convex
  // and increasing, so Newton converges monotonically after the first step.
  double s = xi < 0.0 ? xi - std::log1p(std::exp(xi) / kMeshScale) : std::log(kMeshScale * xi + 1e-300);
  s = std::min(s, xi);
  for (int it = 0; it < 100; ++it) {
    const double e = std::exp(s) / kMeshScale;
    const double step = (s + e - xi) / (1.0 + e);
    s -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(s))) break;
  }
  return std::exp(s);
}

std::shared_ptr<const ShootingMesh> build_mesh(int grid, double eps) {
  auto mesh = std::make_shared<ShootingMesh>();
  mesh->grid = grid;
  mesh->eps = eps;
  const double xi0 = std::log(eps) + eps / kMeshScale;
  const double xi1 = std::log(pi / 2) + (pi / 2) / kMeshScale;
  mesh->h = (xi1 - xi0) / grid;
  const std::size_t count = 4 * static_cast<std::size_t>(grid) + 1;
  mesh->theta.resize(count);
  mesh->dtheta.resize(count);
  mesh->sin.resize(count);
  mesh->cos.resize(count);
  static constexpr std::array<double, 4> offsets = {0.0, 1.0 / 3.0, 0.5, 2.0 / 3.0};
  for (std::size_t n = 0; n < count; ++n) {
    const std::size_t step = n / 4;
    const double xi = n + 1 == count ? xi1 : xi0 + mesh->h * (step + offsets[n % 4]);
    double theta = theta_of_xi(xi);
    if (n == 0) theta = eps;
    if (n + 1 == count) theta = pi / 2;
    mesh->theta[n] = theta;
    mesh->dtheta[n] = theta * kMeshScale / (theta + kMeshScale);
    mesh->sin[n] = std::sin(theta);
    mesh->cos[n] = std::cos(theta);
  }
  return mesh;
}

std::shared_ptr<const ShootingMesh> cached_mesh(int grid, double eps) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::shared_ptr<const ShootingMesh>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{grid, eps}];
  if (!slot) slot = build_mesh(grid, eps);
  return slot;
}

// Taylor coefficients (powers t^0 .. t^8) of t / sin t, t sin t and t cos t.
constexpr std::array<double, 9> kTOverSin = {1.0, 0.0, 1.0 / 6, 0.0, 7.0 / 360, 0.0, 31.0 / 15120, 0.0, 127.0 / 604800};
constexpr std::array<double, 9> kTSin = {0.0, 0.0, 1.0, 0.0, -1.0 / 6, 0.0, 1.0 / 120, 0.0, -1.0 / 5040};
constexpr std::array<double, 9> kTCos = {0.0, 1.0, 0.0, -0.5, 0.0, 1.0 / 24, 0.0, -1.0 / 720, 0.0};

double wrap_pi(double x) {
  x = std::remainder(x, 2.0 * pi);
  return x;
}

}  // namespace

double AngularSpectrum::lambda(int j) const {
  for (const auto& e : eigenvalues) {
    if (e.j == j) return e.lambda;
  }
  throw InvalidParameter("AngularSpectrum: no eigenvalue with j = " + std::to_string(j));
}

Shooter::Shooter(const AngularProblem& problem, const ShootingOptions& opt)
    : problem_(problem), opt_(opt) {
  if (opt_.grid < 16) throw InvalidParameter("Shooter: grid must be >= 16");
  if (!(opt_.endpoint_eps > 0.0 && opt_.endpoint_eps < 0.1)) {
    throw InvalidParameter("Shooter: endpoint_eps must lie in (0, 0.1)");
  }
  if (opt_.frobenius_order < 0 || opt_.frobenius_order > 8) {
    throw InvalidParameter("Shooter: frobenius_order must lie in [0, 8]");
  }
  mesh_ = cached_mesh(opt_.grid, opt_.endpoint_eps);
  const double k = problem_.k.value();
  const std::size_t count = mesh_->theta.size();
  a_.resize(count);
  b_.resize(count);
  d_.resize(count);
  for (std::size_t n = 0; n < count; ++n) {
    const double s = mesh_->sin[n];
    const double dt = mesh_->dtheta[n];
    a_[n] = dt * (k / s + problem_.Omega * s);
    b_[n] = dt * problem_.L * mesh_->cos[n];
    d_[n] = dt;
  }
  for (int n = 0; n <= 8; ++n) {
    frob_w_[n] = k * kTOverSin[n] + problem_.Omega * kTSin[n];
    frob_lc_[n] = problem_.L * kTCos[n];
  }
}

Shooter::~Shooter() = default;
Shooter::Shooter(Shooter&&) noexcept = default;
Shooter& Shooter::operator=(Shooter&&) noexcept = default;

std::array<double, 2> Shooter::start_vector(double lambda, bool left) const {
  // Near an endpoint t -> 0 the system reads t g' = (A_0 + A_1 t + ...) g with
  // A_0 = diag(sd k, -sd k). The recessive solution is t^{|k|} sum_n c_n t^n.
  const double sd = left ? 1.0 : -1.0;
  const double k = problem_.k.value();
  const double r = std::abs(k);
  const int order = opt_.frobenius_order;
  auto coeff = [&](int n) {
    const double lam = n == 1 ? sd * lambda : 0.0;
    return std::array<double, 4>{sd * frob_w_[n], frob_lc_[n] - lam, frob_lc_[n] + lam, -sd * frob_w_[n]};
  };
  std::vector<std::array<double, 2>> c(order + 1);
  c[0] = sd * k > 0.0 ? std::array<double, 2>{1.0, 0.0} : std::array<double, 2>{0.0, 1.0};
  for (int n = 1; n <= order; ++n) {
    double r0 = 0.0, r1 = 0.0;
    for (int i = 1; i <= n; ++i) {
      const auto A = coeff(i);
      r0 += A[0] * c[n - i][0] + A[1] * c[n - i][1];
      r1 += A[2] * c[n - i][0] + A[3] * c[n - i][1];
    }
    c[n] = {r0 / (r + n - sd * k), r1 / (r + n + sd * k)};
  }
  std::array<double, 2> g{0.0, 0.0};
  double tn = 1.0;
  for (int n = 0; n <= order; ++n) {
    g[0] += c[n][0] * tn;
    g[1] += c[n][1] * tn;
    tn *= opt_.endpoint_eps;
  }
  return g;
}

double Shooter::half_angle(double lambda, bool left) const {
  const double s = left ? 1.0 : -1.0;
  const double sl = s * lambda;
  const double* a = a_.data();
  const double* b = b_.data();
  const double* d = d_.data();
  auto deriv = [&](std::size_t n, double y0, double y1, double& f0, double& f1) {
    const double m11 = s * a[n];
    const double m12 = b[n] - sl * d[n];
    const double m21 = b[n] + sl * d[n];
    f0 = m11 * y0 + m12 * y1;
    f1 = m21 * y0 - m11 * y1;
  };

  auto start = start_vector(lambda, left);
  double y0 = start[0], y1 = start[1];
  double raw = std::atan2(y1, y0);
  double angle = raw;
  const double h = mesh_->h;
  const int grid = mesh_->grid;
  for (int i = 0; i < grid; ++i) {
    const std::size_t n = 4 * static_cast<std::size_t>(i);
    double k10, k11, k20, k21, k30, k31, k40, k41, k50, k51, k60, k61, k70, k71;
    deriv(n, y0, y1, k10, k11);
    deriv(n + 1, y0 + h * k10 / 3, y1 + h * k11 / 3, k20, k21);
    deriv(n + 3, y0 + h * 2 * k20 / 3, y1 + h * 2 * k21 / 3, k30, k31);
    deriv(n + 1, y0 + h * (k10 + 4 * k20 - k30) / 12, y1 + h * (k11 + 4 * k21 - k31) / 12, k40, k41);
    deriv(n + 2, y0 + h * (-k10 + 18 * k20 - 3 * k30 - 6 * k40) / 16,
          y1 + h * (-k11 + 18 * k21 - 3 * k31 - 6 * k41) / 16, k50, k51);
    deriv(n + 2, y0 + h * (9 * k20 - 3 * k30 - 6 * k40 + 4 * k50) / 8,
          y1 + h * (9 * k21 - 3 * k31 - 6 * k41 + 4 * k51) / 8, k60, k61);
    deriv(n + 4, y0 + h * (9 * k10 - 36 * k20 + 63 * k30 + 72 * k40 - 64 * k60) / 44,
          y1 + h * (9 * k11 - 36 * k21 + 63 * k31 + 72 * k41 - 64 * k61) / 44, k70, k71);
    y0 += h * (11 * k10 + 81 * k30 + 81 * k40 - 32 * k50 - 32 * k60 + 11 * k70) / 120;
    y1 += h * (11 * k11 + 81 * k31 + 81 * k41 - 32 * k51 - 32 * k61 + 11 * k71) / 120;

    const double norm2 = y0 * y0 + y1 * y1;
    if (norm2 > 1e200 || norm2 < 1e-200) {
      const double inv = 1.0 / std::sqrt(norm2);
      y0 *= inv;
      y1 *= inv;
    }
    const double next = std::atan2(y1, y0);
    const double turn = wrap_pi(next - raw);
    if (std::abs(turn) > pi / 2) {
      throw NotConverged("Shooter: grid too coarse for lambda = " + std::to_string(lambda));
    }
    angle += turn;
    raw = next;
  }
  return angle;
}

double Shooter::mismatch(double lambda) const {
  return half_angle(lambda, true) - half_angle(lambda, false);
}

double Shooter::wronskian(double lambda) const {
  const double left = half_angle(lambda, true);
  const double right = half_angle(lambda, false);
  return std::cos(left) * std::sin(right) - std::sin(left) * std::cos(right);
}

double Shooter::eigenvalue_on_branch(int branch, double lo, double hi) const {
  const double target = branch * pi;
  auto g = [&](double lam) { return mismatch(lam) - target; };
  if (!(lo < hi)) std::swap(lo, hi);
  double width = std::max(hi - lo, 1e-3);
  double glo = g(lo);
  for (int it = 0; glo >= 0.0; ++it) {
    if (it > 60) throw NotConverged("Shooter: cannot bracket eigenvalue from below");
    hi = lo;
    lo -= width;
    width *= 2.0;
    glo = g(lo);
  }
  double ghi = g(hi);
  width = std::max(hi - lo, 1e-3);
  for (int it = 0; ghi <= 0.0; ++it) {
    if (it > 60) throw NotConverged("Shooter: cannot bracket eigenvalue from above");
    lo = hi;
    hi += width;
    width *= 2.0;
    ghi = g(hi);
  }
  return brent_root(g, lo, hi, opt_.lambda_tol);
}

double Shooter::eigenvalue_on_branch(int branch) const {
  // The mismatch grows like pi * lambda, which gives the initial guess.
  const double guess = (branch * pi - mismatch(0.0)) / pi;
  return eigenvalue_on_branch(branch, guess - 0.5, guess + 0.5);
}

double Shooter::eigenvalue(int j) const {
  return eigenvalue_on_branch(branch_of_label(problem_.k, j));
}

std::vector<LabeledEigenvalue> Shooter::eigenvalues_in(double lo, double hi) const {
  std::vector<LabeledEigenvalue> out;
  const int first = static_cast<int>(std::ceil(mismatch(lo) / pi));
  const int last = static_cast<int>(std::floor(mismatch(hi) / pi));
  for (int n = first; n <= last; ++n) {
    out.push_back({label_of_branch(problem_.k, n), eigenvalue_on_branch(n, lo, hi)});
  }
  return out;
}

int reference_branch(HalfInteger k) {
  static std::mutex mutex;
  static std::map<int, int> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(k.twice()); it != cache.end()) return it->second;
  }
  ShootingOptions opt;
  opt.grid = 1000;
  const Shooter shooter(AngularProblem{k, 0.0, 0.0}, opt);
  const double turns = shooter.mismatch(0.0) / pi;
  if (std::abs(turns - std::round(turns)) < 1e-3) {
    throw NotConverged("reference_branch: lambda = 0 is (nearly) an eigenvalue at L = Omega = 0");
  }
  const int branch = static_cast<int>(std::floor(turns)) + 1;
  std::lock_guard lock(mutex);
  cache[k.twice()] = branch;
  return branch;
}

int branch_of_label(HalfInteger k, int j) {
  if (j == 0) throw InvalidParameter("eigenvalue label j must be nonzero");
  const int ref = reference_branch(k);
  return j > 0 ? ref + j - 1 : ref + j;
}

int label_of_branch(HalfInteger k, int branch) {
  const int offset = branch - reference_branch(k);
  return offset >= 0 ? offset + 1 : offset;
}

namespace {

constexpr double kRichardsonAgreement = 1e-8;

double richardson6(double coarse, double fine) { return fine + (fine - coarse) / 63.0; }

void check_pair(double coarse, double fine, int j) {
  if (std::abs(coarse - fine) > kRichardsonAgreement * std::max(1.0, std::abs(fine))) {
    throw NotConverged("angular eigenvalue j = " + std::to_string(j) +
                       " not converged under grid doubling (" + std::to_string(coarse) + " vs " +
                       std::to_string(fine) + ")");
  }
}

}  // namespace

AngularSpectrum angular_spectrum(const AngularProblem& p, int jmax, int grid) {
  if (jmax < 1) throw InvalidParameter("angular_spectrum: jmax must be >= 1");
  ShootingOptions opt;
  opt.grid = grid;
  const Shooter coarse(p, opt);
  opt.grid = 2 * grid;
  const Shooter fine(p, opt);

  AngularSpectrum spectrum{p, {}};
  for (int j = -jmax; j <= jmax; ++j) {
    if (j == 0) continue;
    const int branch = branch_of_label(p.k, j);
    const double lc = coarse.eigenvalue_on_branch(branch);
    const double lf = fine.eigenvalue_on_branch(branch, lc - 1e-6, lc + 1e-6);
    check_pair(lc, lf, j);
    spectrum.eigenvalues.push_back({j, richardson6(lc, lf)});
  }
  for (std::size_t i = 1; i < spectrum.eigenvalues.size(); ++i) {
    if (!(spectrum.eigenvalues[i].lambda - spectrum.eigenvalues[i - 1].lambda > 1e-8)) {
      throw NotConverged("angular_spectrum: eigenvalues are not separated (degenerate spectrum)");
    }
  }
  return spectrum;
}

double angular_eigenvalue(const AngularProblem& p, int j, int grid) {
  ShootingOptions opt;
  opt.grid = grid;
  const Shooter coarse(p, opt);
  opt.grid = 2 * grid;
  const Shooter fine(p, opt);
  const int branch = branch_of_label(p.k, j);
  const double lc = coarse.eigenvalue_on_branch(branch);
  const double lf = fine.eigenvalue_on_branch(branch, lc - 1e-6, lc + 1e-6);
  check_pair(lc, lf, j);
  return richardson6(lc, lf);
}

std::vector<double> lambda_track(const AngularProblem& p0, const AngularProblem& p1, int j,
                                 int steps, int grid) {
  if (!(p0.k == p1.k)) throw InvalidParameter("lambda_track: endpoints must share k");
  if (steps < 1) throw InvalidParameter("lambda_track: steps must be >= 1");
  constexpr double kSlack = 1e-9;
  const double budget = (std::abs(p1.L - p0.L) + std::abs(p1.Omega - p0.Omega)) / steps + kSlack;

  ShootingOptions opt;
  opt.grid = grid;
  std::vector<double> out;
  out.reserve(steps + 1);
  int branch = branch_of_label(p0.k, j);
  out.push_back(Shooter(p0, opt).eigenvalue_on_branch(branch));
  for (int i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const AngularProblem p{p0.k, p0.L + t * (p1.L - p0.L), p0.Omega + t * (p1.Omega - p0.Omega)};
    const Shooter shooter(p, opt);
    const double prev = out.back();
    // Search a window wider than the budget so that a jump to a neighbour branch
    // is detected instead of silently accepted.
    const auto nearby = shooter.eigenvalues_in(prev - budget - 0.5, prev + budget + 0.5);
    if (nearby.empty()) {
      throw TrackingLost("lambda_track: no eigenvalue near " + std::to_string(prev));
    }
    const auto nearest = std::min_element(nearby.begin(), nearby.end(), [&](const auto& x, const auto& y) {
      return std::abs(x.lambda - prev) < std::abs(y.lambda - prev);
    });
    if (std::abs(nearest->lambda - prev) > budget) {
      throw TrackingLost("lambda_track: step " + std::to_string(i) + " moved by " +
                         std::to_string(std::abs(nearest->lambda - prev)) + " > budget " +
                         std::to_string(budget));
    }
    if (branch_of_label(p.k, nearest->j) != branch) {
      throw TrackingLost("lambda_track: nearest eigenvalue belongs to another branch");
    }
    out.push_back(nearest->lambda);
  }
  return out;
}

AngularDensity angular_density(const AngularProblem& p, double lambda, int samples) {
  if (samples < 2) throw InvalidParameter("angular_density: samples must be >= 2");
  const double k = p.k.value();
  using V = ode::State<double, 2>;
  auto rhs = [&](double theta, const V& g) {
    const double s = std::sin(theta);
    const double w = k / s + p.Omega * s;
    const double lc = p.L * std::cos(theta);
    return V{w * g[0] + (lc - lambda) * g[1], (lambda + lc) * g[0] - w * g[1]};
  };
  ode::AdaptiveOptions opt;
  opt.rtol = 1e-11;
  opt.atol = 1e-300;
  opt.record = false;

  ShootingOptions sopt;
  const Shooter shooter(p, sopt);
  const double eps = sopt.endpoint_eps;
  // The recessive solutions behave like t^{|k|}; carry that factor so that
  // values near pi/2 are O(1).
  const double scale = std::pow(eps, std::abs(k));

  AngularDensity out;
  out.theta.resize(samples);
  std::vector<V> values(samples);
  for (int i = 0; i < samples; ++i) out.theta[i] = pi * (i + 0.5) / samples;

  auto march = [&](bool left, V g, double from) {
    double x = from;
    if (left) {
      for (int i = 0; i < samples && out.theta[i] <= pi / 2; ++i) {
        g = ode::integrate_dp45<double, 2>(rhs, x, out.theta[i], g, opt).y.back();
        x = out.theta[i];
        values[i] = g;
      }
    } else {
      for (int i = samples - 1; i >= 0 && out.theta[i] > pi / 2; --i) {
        g = ode::integrate_dp45<double, 2>(rhs, x, out.theta[i], g, opt).y.back();
        x = out.theta[i];
        values[i] = g;
      }
    }
    return ode::integrate_dp45<double, 2>(rhs, x, pi / 2, g, opt).y.back();
  };

  const auto left_seed = shooter.start_vector(lambda, true);
  const auto right_seed = shooter.start_vector(lambda, false);
  const V left_mid = march(true, V{scale * left_seed[0], scale * left_seed[1]}, eps);
  const V right_mid = march(false, V{scale * right_seed[0], scale * right_seed[1]}, pi - eps);
  const double denom = right_mid[0] * right_mid[0] + right_mid[1] * right_mid[1];
  const double c = (left_mid[0] * right_mid[0] + left_mid[1] * right_mid[1]) / denom;
  for (int i = 0; i < samples; ++i) {
    if (out.theta[i] > pi / 2) {
      values[i][0] *= c;
      values[i][1] *= c;
    }
  }
  double total = 0.0;
  out.density.resize(samples);
  for (int i = 0; i < samples; ++i) {
    const double g2 = values[i][0] * values[i][0] + values[i][1] * values[i][1];
    total += g2 * (pi / samples);
    out.density[i] = g2 / std::sin(out.theta[i]);
  }
  for (auto& v : out.density) v /= total;
  return out;
}

}  // namespace kerrdirac::angular
