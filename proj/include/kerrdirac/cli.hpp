#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "json.hpp"

#include "kerrdirac/quadrature.hpp"
#include "kerrdirac/radial.hpp"

namespace kerrdirac::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // numerical failure inside a solver
  kInvalidParams = 2,
  kNoRoots = 3,
  kNotBoundState = 4,
  kVerifyFailed = 5,
};

/// Tolerances and resolutions shared by the subcommands.
struct RunConfig {
  double root_tol = 1e-12;
  double quad_tol = 1e-10;
  int scan = 2000;
  int scan_grid = 400;
  int refine_grid = 500;
  int grid = 2000;
  int jmax = 5;
  int n_max = 10;

  /// Throws InvalidParameter unless tolerances are positive and resolutions >= 16.
  void validate() const;
};

/// Runs the command line in-process. argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "a..b" or "a" as an inclusive integer range.
std::pair<int, int> parse_range(const std::string& text);

/// One result record: k, m, n, j, side, am, omega_over_m, lambda, kappa, alpha, beta,
/// gamma, norm, residual. Residual is the largest relative residual of the radial
/// system on [1e-3, 50].
nlohmann::json solution_record(const radial::BoundStateSolution& bs, const quad::QuadOptions& opt = {});

/// Rebuilds the state described by a Kerr record and classifies it again.
radial::Classification reclassify(const nlohmann::json& record);

}  // namespace kerrdirac::cli
