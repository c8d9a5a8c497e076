#pragma once

#include <array>
#include <memory>
#include <vector>

#include "kerrdirac/half_integer.hpp"

namespace kerrdirac::angular {

/// Angular Dirac problem at fixed azimuthal number k and L = a m, Omega = a omega.
struct AngularProblem {
  HalfInteger k;
  double L = 0.0;
  double Omega = 0.0;
};

struct LabeledEigenvalue {
  int j = 0;  // nonzero
  double lambda = 0.0;
};

/// Eigenvalues lambda_j for j = -jmax..-1, 1..jmax, ascending in j.
struct AngularSpectrum {
  AngularProblem problem;
  std::vector<LabeledEigenvalue> eigenvalues;

  /// Throws InvalidParameter if j is not present.
  double lambda(int j) const;
};

struct ShootingOptions {
  int grid = 2000;  // RK6 steps on each half interval
  double endpoint_eps = 1e-6;
  int frobenius_order = 8;
  double lambda_tol = 1e-12;
};

struct ShootingMesh;

/// Two-sided shooting for the desingularized angular system
///
///   g1' = W g1 + (L cos(theta) - lambda) g2
///   g2' = (lambda + L cos(theta)) g1 - W g2,    W = k / sin(theta) + Omega sin(theta),
///
/// on (0, pi). The recessive Frobenius solutions at both endpoints are carried to
/// pi/2 and compared through their Pruefer angles. The angle mismatch is strictly
/// increasing in lambda and equals N pi exactly at an eigenvalue, which gives each
/// eigenvalue an integer branch number N.
class Shooter {
 public:
  explicit Shooter(const AngularProblem& problem, const ShootingOptions& opt = {});
  ~Shooter();
  Shooter(Shooter&&) noexcept;
  Shooter& operator=(Shooter&&) noexcept;

  const AngularProblem& problem() const { return problem_; }
  const ShootingOptions& options() const { return opt_; }

  /// Pruefer-angle mismatch phi_left(pi/2) - phi_right(pi/2).
  double mismatch(double lambda) const;

  /// Wronskian determinant of the unit-normalized left and right solutions at pi/2.
  double wronskian(double lambda) const;

  /// Eigenvalue on branch N (mismatch = N pi), refined to lambda_tol.
  double eigenvalue_on_branch(int branch) const;

  /// As above, starting from a bracket believed to contain the eigenvalue; the
  /// bracket is widened if it does not.
  double eigenvalue_on_branch(int branch, double lo, double hi) const;

  double eigenvalue(int j) const;

  /// All eigenvalues in [lo, hi], labeled.
  std::vector<LabeledEigenvalue> eigenvalues_in(double lo, double hi) const;

  /// Recessive Frobenius vector at theta = eps (left) or pi - eps (right, in the
  /// reflected variable t = pi - theta), without the common factor eps^|k|.
  std::array<double, 2> start_vector(double lambda, bool left) const;

 private:
  AngularProblem problem_;
  ShootingOptions opt_;
  std::shared_ptr<const ShootingMesh> mesh_;
  std::vector<double> a_, b_, d_;  // per-node coefficients of the xi-system
  std::array<double, 9> frob_w_{}, frob_lc_{};

  double half_angle(double lambda, bool left) const;
};

/// Branch number of lambda_1 for this k. Eigenvalue labels are anchored at
/// (L, Omega) = (0, 0): j >= 1 are the positive eigenvalues there in ascending order,
/// j <= -1 the negative ones. Since the branch number of an eigenvalue is constant
/// under continuation, the labels carry over to every (L, Omega).
int reference_branch(HalfInteger k);
int branch_of_label(HalfInteger k, int j);
int label_of_branch(HalfInteger k, int branch);

/// Eigenvalues for 0 < |j| <= jmax, computed at `grid` and `2 grid`, required to agree
/// to 1e-8 relative and then Richardson-extrapolated. Throws NotConverged otherwise,
/// or when two eigenvalues are not separated.
AngularSpectrum angular_spectrum(const AngularProblem& p, int jmax, int grid = 2000);

/// Single eigenvalue with the same grid / 2 grid validation and extrapolation.
double angular_eigenvalue(const AngularProblem& p, int j, int grid = 2000);

/// lambda_j along the segment p0 -> p1 (steps + 1 values), continued by nearest
/// eigenvalue matching. Each step may move by at most (|dL| + |dOmega|) / steps + 1e-9;
/// otherwise, or if the matched eigenvalue changes branch, throws TrackingLost.
std::vector<double> lambda_track(const AngularProblem& p0, const AngularProblem& p1, int j,
                                 int steps, int grid = 2000);

struct AngularDensity {
  std::vector<double> theta;
  std::vector<double> density;  // |g(theta)|^2, normalized with weight sin(theta)
};

/// |g(theta)|^2 on the uniform midpoint grid theta_i = pi (i + 1/2) / samples.
AngularDensity angular_density(const AngularProblem& p, double lambda, int samples);

}  // namespace kerrdirac::angular
