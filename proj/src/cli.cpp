#include "kerrdirac/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "kerrdirac/angular.hpp"
#include "kerrdirac/errors.hpp"
#include "kerrdirac/quantize.hpp"
#include "kerrdirac/verify.hpp"

namespace kerrdirac::cli {

using nlohmann::json;

void RunConfig::validate() const {
  if (!(root_tol > 0.0) || !(quad_tol > 0.0)) throw InvalidParameter("tolerances must be positive");
  if (scan < 16 || scan_grid < 16 || refine_grid < 16 || grid < 16) {
    throw InvalidParameter("resolutions must be >= 16");
  }
  if (jmax < 1) throw InvalidParameter("jmax must be >= 1");
  if (n_max < 0) throw InvalidParameter("n-max must be >= 0");
}

std::pair<int, int> parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidParameter("bad integer range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(text);
    return {v, v};
  }
  const int lo = to_int(text.substr(0, dots));
  const int hi = to_int(text.substr(dots + 2));
  if (lo > hi) throw InvalidParameter("empty range '" + text + "'");
  return {lo, hi};
}

json solution_record(const radial::BoundStateSolution& bs, const quad::QuadOptions& opt) {
  const auto& c = bs.coeffs;
  const double m = bs.params.m;
  json r;
  r["k"] = bs.params.k.value();
  r["m"] = m;
  r["n"] = bs.n();
  r["j"] = bs.j;
  r["side"] = std::string(1, bs.params.a < 0.0 ? '-' : '+');
  r["am"] = bs.params.a * m;
  r["omega_over_m"] = bs.omega / m;
  r["lambda"] = bs.lambda;
  r["kappa"] = c.kappa;
  r["alpha"] = c.alpha;
  r["beta"] = c.beta;
  r["gamma"] = c.gamma;
  r["norm"] = radial::normalization_integral(bs, opt);
  r["residual"] = radial::max_residual_rx(bs, 1e-3, 50.0);
  return r;
}

radial::Classification reclassify(const json& record) {
  const auto k = HalfInteger::from_value(record.at("k").get<double>());
  const double m = record.at("m").get<double>();
  const auto p = radial::ExtremeKNParams::kerr(k, record.at("am").get<double>() / m, m);
  const int n = record.at("n").get<int>();
  return radial::classify_bound_state(p, record.at("lambda").get<double>(), std::max(n, 0),
                                      record.at("j").get<int>());
}

namespace {

std::string format(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Output goes to a file when a path is given, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidParameter("cannot open output file '" + path + "'");
    }
    stream_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidParameter(path + ":" + std::to_string(number) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// ---------------------------------------------------------------------------

struct PhysicsArgs {
  double k = 0.5;
  double a = 0.0;
  double Q = 0.0;
  double e = 0.0;
  double m = 1.0;
  std::optional<double> M;

  radial::ExtremeKNParams params() const {
    const auto kk = HalfInteger::from_value(k);
    if (M) {
      radial::ExtremeKNParams p{*M, a, Q, m, e, kk};
      p.validate();
      return p;
    }
    return radial::ExtremeKNParams::extreme(kk, a, Q, m, e);
  }
};

void add_physics(CLI::App* sub, PhysicsArgs& p) {
  sub->add_option("--k", p.k, "Azimuthal half-integer k")->required();
  sub->add_option("--a", p.a, "Kerr parameter a = J/M");
  sub->add_option("--Q", p.Q, "Black-hole charge");
  sub->add_option("--e", p.e, "Particle charge");
  sub->add_option("--m", p.m, "Particle rest mass");
  sub->add_option("--M", p.M, "Black-hole mass (default sqrt(a^2 + Q^2); must be extreme)");
}

int cmd_omega(const PhysicsArgs& args, std::ostream& out) {
  const auto p = args.params();
  const double omega = radial::compute_omega(p);
  const double tau = radial::compute_tau(p, omega);
  const double mu = 2.0 * p.rho() * omega + p.e * p.Q;
  const int sigma = omega >= 0.0 ? 1 : -1;
  const bool energy_ok = p.m * p.m - omega * omega > 0.0;
  out << "omega = " << format(omega) << "\n";
  out << "omega_over_m = " << fixed(omega / p.m, 6) << "\n";
  out << "tau = " << format(tau) << "\n";
  out << "mu = " << format(mu) << "\n";
  out << "sigma = " << sigma << "\n";
  out << "energy_condition = " << (energy_ok ? "pass" : "fail") << " (m^2 - omega^2 = " << format(p.m * p.m - omega * omega)
      << ")\n";
  std::string verdict = energy_ok ? "necessary conditions hold" : "no bound state (m^2 - omega^2 <= 0)";
  if (p.a == 0.0) {
    verdict = "no bound state (RN)";
  } else if (p.Q == 0.0) {
    const auto window = quantize::KerrWindow::of(p.k, p.m);
    const double Mm = p.M * p.m;
    const bool inside = window.contains(Mm);
    out << "Mm = " << format(Mm) << "\n";
    out << "kerr_window = (" << format(window.lo) << ", " << format(window.hi) << ") "
        << (inside ? "inside" : "outside") << "\n";
    if (!inside) verdict = "no bound state (outside Kerr window)";
  }
  out << "verdict = " << verdict << "\n";
  return kOk;
}

struct AngularArgs {
  double k = 0.5;
  double L = 0.0;
  double Omega = 0.0;
  bool oracle = false;
};

int cmd_angular(const AngularArgs& args, const RunConfig& cfg, std::ostream& out) {
  const angular::AngularProblem p{HalfInteger::from_value(args.k), args.L, args.Omega};
  const auto spectrum = angular::angular_spectrum(p, cfg.jmax, cfg.grid);
  std::optional<verify::OracleSpectrum> oracle;
  if (args.oracle) oracle = verify::angular_oracle(p, cfg.jmax, {800, 1600, 3200}, 1e-6);
  for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
    json r{{"j", spectrum.eigenvalues[i].j}, {"lambda", spectrum.eigenvalues[i].lambda}};
    if (oracle) {
      r["oracle"] = oracle->spectrum.eigenvalues[i].lambda;
      r["oracle_error"] = oracle->error[i];
    }
    out << r.dump() << "\n";
  }
  return kOk;
}

struct SolveArgs {
  double k = 0.5;
  double m = 1.0;
  std::string n = "0..10";
  std::string j = "-6..6";
  std::string side = "both";
  std::string output;
  bool expect_roots = false;
  bool window_only = false;
};

quantize::ScanOptions scan_options(const RunConfig& cfg) {
  quantize::ScanOptions opt;
  opt.scan = cfg.scan;
  opt.scan_grid = cfg.scan_grid;
  opt.refine_grid = cfg.refine_grid;
  opt.root_tol = cfg.root_tol;
  return opt;
}

quad::QuadOptions quad_options(const RunConfig& cfg) {
  quad::QuadOptions q;
  q.rel_tol = cfg.quad_tol;
  return q;
}

int cmd_solve_kerr(const SolveArgs& args, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto k = HalfInteger::from_value(args.k);
  const auto window = quantize::KerrWindow::of(k, args.m);
  if (args.window_only) {
    out << "window = (" << format(window.lo) << ", " << format(window.hi) << ") for |a| m\n";
    out << "a = (" << format(window.lo / args.m) << ", " << format(window.hi / args.m) << ") in units of 1/m\n";
    out << "note: Mm > 1/4 is necessary for any bound state in extreme Kerr\n";
    return kOk;
  }
  const auto [n_lo, n_hi] = parse_range(args.n);
  const auto [j_lo, j_hi] = parse_range(args.j);
  if (n_lo < 0) throw InvalidParameter("n must be non-negative");
  std::vector<quantize::Side> sides;
  if (args.side == "both") {
    sides = {quantize::Side::Minus, quantize::Side::Plus};
  } else {
    sides = {quantize::parse_side(args.side)};
  }
  const auto opt = scan_options(cfg);
  const auto qopt = quad_options(cfg);
  Sink sink(args.output, out);
  int found = 0;
  for (const auto side : sides) {
    for (int j = j_lo; j <= j_hi; ++j) {
      if (j == 0) continue;
      const auto result = quantize::solve_kerr(k, args.m, n_lo, n_hi, j, side, opt);
      for (const auto& state : result.states) {
        *sink << solution_record(state, qopt).dump() << "\n";
        ++found;
      }
      for (const auto& f : result.suspicious) {
        err << "warning: suspicious root n=" << f.n << " j=" << f.j << " am=" << format(f.L) << ": " << f.reason << "\n";
      }
    }
  }
  if (found == 0 && args.expect_roots) {
    err << "no roots found\n";
    return kNoRoots;
  }
  return kOk;
}

struct CheckArgs {
  PhysicsArgs physics;
};

int cmd_check_kn(const CheckArgs& args, const RunConfig& cfg, std::ostream& out) {
  const auto p = args.physics.params();
  const auto report = quantize::check_kerr_newman(p, cfg.jmax, cfg.n_max, cfg.grid);
  json r;
  r["omega"] = report.omega;
  r["tau"] = report.tau;
  r["L"] = report.L;
  r["Omega"] = report.Omega;
  r["states"] = json::array();
  for (const auto& s : report.states) r["states"].push_back(solution_record(s, quad_options(cfg)));
  r["rejections"] = json::array();
  for (const auto& rej : report.rejections) {
    r["rejections"].push_back({{"j", rej.j}, {"lambda", rej.lambda}, {"reason", std::string(radial::to_string(rej.reason))}});
  }
  out << r.dump() << "\n";
  return kOk;
}

struct EigenArgs {
  double k = 2.5;
  double m = 1.0;
  double am = 0.0;
  int n = 0;
  int j = 1;
  bool no_refine = false;
  std::string radial_out;
  std::string angular_out;
  std::string components_out;
  int samples = 400;
  int theta_samples = 180;
  double x_min = 1e-3;
  double x_max = 0.0;  // 0 picks a cutoff from the decay rate
};

int cmd_eigenfunction(const EigenArgs& args, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto k = HalfInteger::from_value(args.k);
  if (args.samples < 2 || args.theta_samples < 2) throw InvalidParameter("need at least 2 samples");
  if (!(args.x_min > 0.0)) throw InvalidParameter("x-min must be positive");
  std::optional<radial::BoundStateSolution> state;
  if (!args.no_refine) {
    state = quantize::refine_kerr_root(k, args.m, args.n, args.j, args.am, scan_options(cfg));
  } else {
    const auto p = radial::ExtremeKNParams::kerr(k, args.am / args.m, args.m);
    const double lambda = angular::angular_eigenvalue({k, args.am, -0.5 * k.value()}, args.j, cfg.grid);
    auto verdict = radial::classify_bound_state(p, lambda, args.n, args.j);
    if (auto* s = std::get_if<radial::BoundStateSolution>(&verdict); s && s->n() == args.n) state = *s;
  }
  if (!state) {
    err << "not a bound state: no root of the quantization condition for n=" << args.n << ", j=" << args.j
        << " near am=" << format(args.am) << "\n";
    return kNotBoundState;
  }
  const auto& c = state->coeffs;
  double x_max = args.x_max;
  if (x_max <= 0.0) x_max = (2.0 * c.kappa + 2.0 * (state->n() + 1) + 40.0) / (2.0 * c.gamma);
  if (!(x_max > args.x_min)) throw InvalidParameter("x-max must exceed x-min");

  std::vector<double> xs(args.samples);
  for (int i = 0; i < args.samples; ++i) {
    xs[i] = args.x_min * std::pow(x_max / args.x_min, static_cast<double>(i) / (args.samples - 1));
  }
  if (!args.radial_out.empty()) {
    Sink sink(args.radial_out, out);
    *sink << "x,density\n";
    for (double x : xs) *sink << format(x) << "," << format(radial::density(*state, x)) << "\n";
  }
  if (!args.components_out.empty()) {
    Sink sink(args.components_out, out);
    *sink << "x,u,v\n";
    for (double x : xs) {
      const auto y = radial::pre_transform(*state, x);
      *sink << format(x) << "," << format(y[0]) << "," << format(y[1]) << "\n";
    }
  }
  if (!args.angular_out.empty()) {
    const double L = state->params.a * state->params.m;
    const auto dens = angular::angular_density({k, L, -0.5 * k.value()}, state->lambda, args.theta_samples);
    Sink sink(args.angular_out, out);
    *sink << "theta,density\n";
    for (std::size_t i = 0; i < dens.theta.size(); ++i) *sink << format(dens.theta[i]) << "," << format(dens.density[i]) << "\n";
  }
  out << solution_record(*state, quad_options(cfg)).dump() << "\n";
  return kOk;
}

struct VerifyArgs {
  std::string which = "all";
  std::optional<double> tau;
  double k = 0.5;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  static const std::vector<std::string> cases = {"oscillation", "regular", "threshold", "angular-oracle"};
  if (args.which != "all" && std::find(cases.begin(), cases.end(), args.which) == cases.end()) {
    throw InvalidParameter("unknown verify case '" + args.which + "'");
  }
  bool all_ok = true;
  auto report = [&](bool ok, const std::string& name, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    all_ok = all_ok && ok;
  };
  auto wanted = [&](const std::string& name) { return args.which == "all" || args.which == name; };

  if (wanted("oscillation")) {
    verify::OscillationReport r;
    if (args.tau) {
      const auto k = HalfInteger::from_twice(1);
      const auto p = radial::ExtremeKNParams::kerr(k, 0.4, 1.0);
      const double omega = radial::compute_omega(p) + *args.tau / (p.a * p.a + p.rho() * p.rho());
      const double lambda = angular::angular_eigenvalue({k, p.a * p.m, p.a * omega}, 1);
      r = verify::check_oscillation(p, omega, lambda);
    } else {
      r = verify::check_oscillation_default();
    }
    std::ostringstream os;
    os << "tau = " << format(r.tau) << ", min |w|/|w(1)| = " << fixed(r.min_ratio[0], 4) << ", "
       << fixed(r.min_ratio[1], 4) << ", verdict " << (r.non_normalizable ? "non-normalizable" : "inconclusive");
    report(r.non_normalizable, "oscillation", os.str());
  }
  if (wanted("regular")) {
    for (auto c : {verify::RegularCase::Elliptic, verify::RegularCase::Jordan, verify::RegularCase::Hyperbolic,
                   verify::RegularCase::Trivial}) {
      const auto r = verify::check_regular(c);
      std::ostringstream os;
      os << "det A = " << fixed(r.det_a, 3) << ", inf |y|/(sqrt(x)|y(1)|) = " << format(r.min_ratio);
      report(r.passed, "regular/" + verify::to_string(c), os.str());
    }
  }
  if (wanted("threshold")) {
    for (auto c : {verify::ThresholdCase::Bessel, verify::ThresholdCase::ModifiedBessel, verify::ThresholdCase::Degenerate}) {
      const auto r = verify::check_threshold_case(c);
      std::ostringstream os;
      switch (c) {
        case verify::ThresholdCase::Bessel: os << "envelope spread on [50, 500] = " << fixed(r.envelope_spread, 4); break;
        case verify::ThresholdCase::ModifiedBessel: os << "log|u| growth ratio at x = 200 = " << fixed(r.growth_ratio, 4); break;
        case verify::ThresholdCase::Degenerate: os << "pure power error = " << format(r.power_error); break;
      }
      report(r.passed, "threshold/" + verify::to_string(c), os.str());
    }
  }
  if (wanted("angular-oracle")) {
    const auto k = HalfInteger::from_value(args.k);
    double worst = 0.0;
    for (double L : {-1.0, 0.0, 1.0}) {
      for (double Om : {-1.0, 0.0, 1.0}) {
        const angular::AngularProblem p{k, L, Om};
        const auto shoot = angular::angular_spectrum(p, 5);
        const auto dense = verify::angular_oracle(p, 5, {800, 1600, 3200}, 1e-6);
        for (std::size_t i = 0; i < shoot.eigenvalues.size(); ++i) {
          worst = std::max(worst, std::abs(shoot.eigenvalues[i].lambda - dense.spectrum.eigenvalues[i].lambda));
        }
      }
    }
    report(worst <= 1e-6, "angular-oracle", "k = " + format(args.k) + ", max |shooting - dense| = " + format(worst));
  }
  return all_ok ? kOk : kVerifyFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound states of the Dirac equation in extreme Kerr and Kerr-Newman geometry", "kerrdirac"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  RunConfig cfg;
  std::string config_path;
  auto add_common = [&](CLI::App* sub, bool scan) {
    sub->add_option("--config", config_path, "Flat key=value file; flags given here take precedence");
    sub->add_option("--jmax", cfg.jmax, "Largest |j| of angular eigenvalues");
    sub->add_option("--n-max", cfg.n_max, "Largest Laguerre degree");
    sub->add_option("--grid", cfg.grid, "Shooting steps per half interval");
    sub->add_option("--quad-tol", cfg.quad_tol, "Relative tolerance of the normalization integral");
    if (scan) {
      sub->add_option("--scan", cfg.scan, "Scan points per window side");
      sub->add_option("--scan-grid", cfg.scan_grid, "Shooting steps while scanning");
      sub->add_option("--refine-grid", cfg.refine_grid, "Shooting steps while refining roots");
      sub->add_option("--root-tol", cfg.root_tol, "Root tolerance in am");
    }
  };

  PhysicsArgs omega_args;
  auto* omega = app.add_subcommand("omega", "Energy from the horizon condition and necessary conditions");
  add_physics(omega, omega_args);
  add_common(omega, false);

  AngularArgs angular_args;
  auto* ang = app.add_subcommand("angular", "Angular eigenvalues lambda_j(L, Omega)");
  ang->add_option("--k", angular_args.k, "Azimuthal half-integer k")->required();
  ang->add_option("--L", angular_args.L, "L = a m");
  ang->add_option("--Omega", angular_args.Omega, "Omega = a omega");
  ang->add_flag("--oracle", angular_args.oracle, "Also report the dense-matrix values");
  add_common(ang, false);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve-kerr", "Kerr parameters admitting bound states");
  solve->add_option("--k", solve_args.k, "Azimuthal half-integer k")->required();
  solve->add_option("--m", solve_args.m, "Particle rest mass");
  solve->add_option("--n", solve_args.n, "Laguerre degrees, e.g. 0..10");
  solve->add_option("--j", solve_args.j, "Angular labels, e.g. -6..6 (0 is skipped)");
  solve->add_option("--side", solve_args.side, "+, - or both");
  solve->add_option("--output", solve_args.output, "Write records here instead of stdout");
  solve->add_flag("--expect-roots", solve_args.expect_roots, "Exit with status 3 when nothing is found");
  solve->add_flag("--window-only", solve_args.window_only, "Only print the admissible window");
  add_common(solve, true);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check-kn", "Bound states of an extreme Kerr-Newman configuration");
  add_physics(check, check_args.physics);
  add_common(check, false);

  EigenArgs eig_args;
  auto* eig = app.add_subcommand("eigenfunction", "Radial and angular densities of a bound state");
  eig->add_option("--k", eig_args.k, "Azimuthal half-integer k")->required();
  eig->add_option("--m", eig_args.m, "Particle rest mass");
  eig->add_option("--am", eig_args.am, "a m of the state (refined unless --no-refine)")->required();
  eig->add_option("--n", eig_args.n, "Laguerre degree")->required();
  eig->add_option("--j", eig_args.j, "Angular label")->required();
  eig->add_flag("--no-refine", eig_args.no_refine, "Use am as given");
  eig->add_option("--radial-out", eig_args.radial_out, "CSV file for |f(x)|^2");
  eig->add_option("--angular-out", eig_args.angular_out, "CSV file for |g(theta)|^2");
  eig->add_option("--components-out", eig_args.components_out, "CSV file for the real pair (u, v)");
  eig->add_option("--samples", eig_args.samples, "Radial samples (log-spaced)");
  eig->add_option("--theta-samples", eig_args.theta_samples, "Angular samples");
  eig->add_option("--x-min", eig_args.x_min, "Smallest x = r - rho");
  eig->add_option("--x-max", eig_args.x_max, "Largest x (default from the decay rate)");
  add_common(eig, true);

  VerifyArgs verify_args;
  auto* ver = app.add_subcommand("verify", "Run the singular-point and oracle checks");
  ver->add_option("--case", verify_args.which, "all, oscillation, regular, threshold or angular-oracle");
  ver->add_option("--tau", verify_args.tau, "Detuning of the oscillation check, as the value of tau");
  ver->add_option("--k", verify_args.k, "k for the angular oracle comparison");
  add_common(ver, false);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    // Splice config values in as flags unless the command line already has them.
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
      if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (!path.empty()) {
      CLI::App* sub = nullptr;
      for (const auto& a : args) {
        if (!a.empty() && a[0] != '-') {
          sub = app.get_subcommand_no_throw(a);
          if (sub != nullptr) break;
        }
      }
      if (sub == nullptr) throw InvalidParameter("--config needs a subcommand");
      for (const auto& [key, value] : read_config(path)) {
        if (key == "config" || given_on_command_line(args, key)) continue;
        const CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr) throw InvalidParameter("unknown config key '" + key + "'");
        if (opt->get_expected_min() == 0) {
          if (value == "true" || value == "1" || value.empty()) args.push_back("--" + key);
        } else {
          args.push_back("--" + key + "=" + value);
        }
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidParams;
  }

  std::vector<const char*> ptrs{argv[0]};
  for (const auto& a : args) ptrs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInvalidParams;
  }

  try {
    cfg.validate();
    if (omega->parsed()) return cmd_omega(omega_args, out);
    if (ang->parsed()) return cmd_angular(angular_args, cfg, out);
    if (solve->parsed()) return cmd_solve_kerr(solve_args, cfg, out, err);
    if (check->parsed()) return cmd_check_kn(check_args, cfg, out);
    if (eig->parsed()) return cmd_eigenfunction(eig_args, cfg, out, err);
    if (ver->parsed()) return cmd_verify(verify_args, out);
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidParams;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kInvalidParams;
}

}  // namespace kerrdirac::cli
