#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kerrdirac/half_integer.hpp"
#include "kerrdirac/radial.hpp"

namespace kerrdirac::quantize {

enum class Side { Plus, Minus };

inline int sign_of(Side s) { return s == Side::Plus ? 1 : -1; }
inline char symbol(Side s) { return s == Side::Plus ? '+' : '-'; }
/// Accepts "+", "-", "plus", "minus". Throws InvalidParameter otherwise.
Side parse_side(std::string_view text);

/// Admissible range |k|/2 < |L| < |k|/sqrt(2) of L = a m in extreme Kerr.
struct KerrWindow {
  HalfInteger k;
  double m;
  double lo;
  double hi;

  static KerrWindow of(HalfInteger k, double m);
  bool contains(double L) const { return std::abs(L) > lo && std::abs(L) < hi; }
};

/// Closed forms in extreme Kerr with a omega = -k/2.
double kerr_alpha(HalfInteger k, double L);
double kerr_beta(HalfInteger k, double L);
double kerr_kappa_sq(HalfInteger k, double L, double lambda);

struct ScanOptions {
  int scan = 2000;         // samples per window
  int scan_grid = 400;     // shooting steps while scanning
  int refine_grid = 500;   // shooting steps (and twice that) while refining roots
  double root_tol = 1e-12; // bound on |dL| at a refined root
  double edge_tol = 1e-6;  // roots this close to a window end are not trusted

  /// Throws InvalidParameter unless scan, grids >= 16 and tolerances > 0.
  void validate() const;
};

/// lambda_j(L) at Omega = -k/2 on the scan points of one side of the window.
/// The points are uniform in s = sqrt(4 L^2 - k^2) over (0, |k|), which resolves
/// the lower window end where alpha(L) diverges.
struct LambdaCurve {
  HalfInteger k;
  int j;
  Side side;
  int branch;
  std::vector<double> s;
  std::vector<double> L;
  std::vector<double> lambda;
};

LambdaCurve lambda_curve(HalfInteger k, int j, Side side, const ScanOptions& opt = {});

struct CurveSample {
  double L = 0.0;
  double F = 0.0;      // 1 + n + alpha(L) + kappa_j(L)
  bool valid = false;  // kappa_j(L)^2 > 0
};

struct QuantizationCurve {
  HalfInteger k;
  double m;
  int n;
  int j;
  Side side;
  std::vector<CurveSample> samples;
};

QuantizationCurve quantization_curve(const LambdaCurve& curve, double m, int n);

struct FlaggedRoot {
  int n = 0;
  int j = 0;
  Side side = Side::Plus;
  double L = 0.0;
  double kappa_sq = 0.0;
  std::string reason;
};

struct KerrSolveResult {
  std::vector<radial::BoundStateSolution> states;
  std::vector<FlaggedRoot> suspicious;  // near a window end or failed re-validation
  std::vector<FlaggedRoot> discarded;   // kappa^2 <= 1/4
};

/// Roots of 1 + n + alpha(L) + kappa_j(L) on one side of the window, for every n in
/// [n_lo, n_hi]; the lambda_j curve is computed once and shared.
KerrSolveResult solve_kerr(HalfInteger k, double m, int n_lo, int n_hi, int j, Side side,
                           const ScanOptions& opt = {});

inline KerrSolveResult solve_kerr(HalfInteger k, double m, int n, int j, Side side,
                                  const ScanOptions& opt = {}) {
  return solve_kerr(k, m, n, n, j, side, opt);
}

/// Same, reusing a precomputed curve.
KerrSolveResult solve_kerr(const LambdaCurve& curve, double m, int n_lo, int n_hi,
                           const ScanOptions& opt = {});

/// The root of 1 + n + alpha(L) + kappa_j(L) nearest to L_guess (searching outward
/// from it), validated like the roots of solve_kerr. Empty if none is found.
std::optional<radial::BoundStateSolution> refine_kerr_root(HalfInteger k, double m, int n, int j, double L_guess,
                                                          const ScanOptions& opt = {});

struct SequenceEntry {
  int n = 0;
  double L = 0.0;
};

/// For each n in [n_lo, n_hi] the root closest to the lower window end.
std::vector<SequenceEntry> enumerate_sequence(HalfInteger k, double m, int j, Side side, int n_lo,
                                              int n_hi, const ScanOptions& opt = {});

struct RejectedEigenvalue {
  int j = 0;
  double lambda = 0.0;
  radial::Rejection reason = radial::Rejection::Quantization;
};

struct KerrNewmanReport {
  double omega = 0.0;
  double tau = 0.0;
  double L = 0.0;
  double Omega = 0.0;
  std::vector<radial::BoundStateSolution> states;
  std::vector<RejectedEigenvalue> rejections;
};

/// Bound states of an extreme Kerr-Newman configuration among the angular
/// eigenvalues with |j| <= jmax and Laguerre degrees n <= n_max.
KerrNewmanReport check_kerr_newman(const radial::ExtremeKNParams& p, int jmax, int n_max,
                                   int grid = 2000);

}  // namespace kerrdirac::quantize
