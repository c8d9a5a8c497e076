#include "doctest.h"

#include <cmath>
#include <random>

#include "kerrdirac/angular.hpp"
#include "kerrdirac/errors.hpp"
#include "kerrdirac/quantize.hpp"
#include "kerrdirac/radial.hpp"
#include "kerrdirac/verify.hpp"

using namespace kerrdirac;
using namespace kerrdirac::radial;

namespace {

const BoundStateSolution& reference_state() {
  static const BoundStateSolution bs = [] {
    auto s = quantize::refine_kerr_root(HalfInteger::from_twice(5), 1.0, 2, -4, -1.2640651805);
    REQUIRE(s.has_value());
    return *s;
  }();
  return bs;
}

int sign_changes(const std::vector<double>& v) {
  int count = 0;
  for (std::size_t i = 1; i < v.size(); ++i) count += (v[i - 1] < 0) != (v[i] < 0);
  return count;
}

}  // namespace

TEST_CASE("parameter validation") {
  const auto k = HalfInteger::from_twice(1);
  CHECK_NOTHROW(ExtremeKNParams::extreme(k, 0.6, 0.8, 1.0, 0.1));
  ExtremeKNParams bad{1.1, 0.6, 0.8, 1.0, 0.0, k};
  CHECK_THROWS_AS(bad.validate(), InvalidParameter);
  CHECK_THROWS_AS(ExtremeKNParams::kerr(k, 0.5, -1.0), InvalidParameter);
  CHECK_THROWS_AS(ExtremeKNParams::extreme(k, 0.0, 0.0, 1.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(HalfInteger::from_value(1.0), InvalidK);
}

TEST_CASE("omega makes the horizon coefficient vanish") {
  const auto p = ExtremeKNParams::extreme(HalfInteger::from_twice(3), -0.7, 0.4, 1.3, 0.25);
  const double omega = compute_omega(p);
  CHECK(std::abs(compute_tau(p, omega)) < 1e-14);
  CHECK(p.potential(p.rho(), omega) == doctest::Approx(compute_tau(p, omega)).scale(1.0));
  CHECK(compute_omega(ExtremeKNParams::kerr(HalfInteger::from_twice(5), -1.264065, 1.0)) ==
        doctest::Approx(2.5 / (2 * 1.264065)));
}

TEST_CASE("coefficient identities on random parameters") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  while (checked < 200) {
    const auto k = HalfInteger::from_twice(2 * static_cast<int>(rng() % 6) - 5);
    const double a = 3 * u(rng), Q = 2 * u(rng), m = 1.5 + u(rng), e = 0.9 * m * u(rng);
    const auto p = ExtremeKNParams::extreme(k, a, Q, m, e);
    const double lambda = 6 * u(rng);
    RadialCoefficients c;
    try {
      c = compute_coefficients(p, lambda);
    } catch (const EnergyOutOfRange&) {
      continue;
    } catch (const KappaTooSmall&) {
      continue;
    }
    const double rho = p.rho(), mu = 2 * rho * c.omega + e * Q;
    const double ref = rho * rho * m * m - mu * mu;
    const double scale = std::max({c.alpha * c.alpha, rho * rho * m * m, c.kappa * c.kappa, 1.0});
    CHECK(std::abs(c.alpha * c.alpha - c.beta * c.beta - ref) <= 1e-12 * scale);
    CHECK(std::abs(c.kappa * c.kappa - lambda * lambda - ref) <= 1e-12 * scale);
    CHECK(c.gamma == doctest::Approx(std::sqrt(m * m - c.omega * c.omega)));
    ++checked;
  }
}

TEST_CASE("Kerr closed forms") {
  const auto k = HalfInteger::from_twice(5);
  for (double L : {-1.3, -1.6, 1.45}) {
    const auto p = ExtremeKNParams::kerr(k, L, 1.0);
    const auto c = compute_coefficients(p, 4.0);
    CHECK(c.alpha == doctest::Approx(quantize::kerr_alpha(k, L)).epsilon(1e-13));
    CHECK(c.beta == doctest::Approx(quantize::kerr_beta(k, L)).epsilon(1e-13));
    CHECK(c.kappa * c.kappa == doctest::Approx(quantize::kerr_kappa_sq(k, L, 4.0)).epsilon(1e-13));
  }
}

TEST_CASE("rejections") {
  const auto k = HalfInteger::from_twice(5);
  CHECK_THROWS_AS(compute_coefficients(ExtremeKNParams::kerr(k, -1.0, 1.0), 3.0), EnergyOutOfRange);
  CHECK_THROWS_AS(compute_coefficients(ExtremeKNParams::kerr(k, -1.3, 1.0), 0.0), KappaTooSmall);
  auto r = classify_bound_state(ExtremeKNParams::kerr(k, -1.0, 1.0), 3.0, 10);
  REQUIRE(std::holds_alternative<Rejection>(r));
  CHECK(std::get<Rejection>(r) == Rejection::EnergyOutOfRange);
  r = classify_bound_state(ExtremeKNParams::kerr(k, -1.3, 1.0), 3.0, 10);
  REQUIRE(std::holds_alternative<Rejection>(r));
  CHECK(to_string(std::get<Rejection>(r)) == "quantization");
}

TEST_CASE("closed-form eigenfunction solves the radial system") {
  const auto& bs = reference_state();
  CHECK(bs.n() == 2);
  CHECK_FALSE(bs.special());
  CHECK(max_residual_rx(bs, 1e-3, 50.0) < 1e-8);
  CHECK(max_residual_ry(bs, 1e-3, 50.0) < 1e-8);

  // independent route: integrate the system numerically from x = 1 outwards
  const auto sys = verify::rx_system(bs.params, bs.omega, bs.lambda);
  const auto path = verify::integrate(sys, 1.0, 8.0, eigenfunction_at(bs, 1.0), 1e-12);
  const auto exact = eigenfunction_at(bs, 8.0);
  const auto& last = path.values.back();
  CHECK(path.x.back() == doctest::Approx(8.0));
  for (int i = 0; i < 2; ++i) CHECK(std::abs(last[i] - exact[i]) <= 1e-7 * (std::abs(exact[0]) + std::abs(exact[1])));
}

TEST_CASE("derivative matches finite differences") {
  const auto& bs = reference_state();
  for (double x : {0.05, 1.0, 7.0}) {
    const double h = 1e-5 * x;
    const auto d = eigenfunction_derivative(bs, x);
    const auto fp = eigenfunction_at(bs, x + h), fm = eigenfunction_at(bs, x - h);
    for (int i = 0; i < 2; ++i) {
      const auto fd = (fp[i] - fm[i]) / (2 * h);
      CHECK(std::abs(fd - d[i]) <= 1e-6 * (std::abs(d[0]) + std::abs(d[1])));
    }
  }
}

TEST_CASE("the Laguerre pair has n + 1 and n interlacing nodes") {
  const auto& bs = reference_state();
  const int n = bs.n();
  std::vector<double> u, v, xs;
  for (int i = 0; i < 20000; ++i) {
    const double x = 1e-4 * std::pow(1e6, i / 19999.0);
    const auto y = pre_transform(bs, x);
    xs.push_back(x);
    u.push_back(y[0]);
    v.push_back(y[1]);
  }
  CHECK(sign_changes(u) == n + 1);
  CHECK(sign_changes(v) == n);
  // between two consecutive zeros of u there is exactly one zero of v
  std::vector<std::size_t> zu;
  for (std::size_t i = 1; i < u.size(); ++i)
    if ((u[i - 1] < 0) != (u[i] < 0)) zu.push_back(i);
  for (std::size_t z = 1; z < zu.size(); ++z) {
    std::vector<double> seg(v.begin() + zu[z - 1], v.begin() + zu[z]);
    CHECK(sign_changes(seg) == 1);
  }
}

TEST_CASE("normalization agrees with the panel quadrature oracle") {
  const auto& bs = reference_state();
  const double norm = normalization_integral(bs);
  const auto oracle = verify::normalization_oracle(bs);
  CHECK(std::isfinite(norm));
  CHECK(norm > 0.0);
  CHECK(oracle.tail_bound <= 1e-10 * oracle.value);
  CHECK(std::abs(norm - oracle.value) <= 1e-6 * oracle.value);
  quad::QuadOptions tight;
  tight.rel_tol = 5e-11;
  CHECK(std::abs(normalization_integral(bs, tight) - norm) <= 1e-8 * norm);
}

TEST_CASE("density is |f|^2 and decays at both ends") {
  const auto& bs = reference_state();
  const auto f = eigenfunction_at(bs, 0.7);
  CHECK(density(bs, 0.7) == doctest::Approx(std::norm(f[0]) + std::norm(f[1])));
  const auto sampled = eigenfunction(bs, {1e-3, 1.0, 200.0});
  REQUIRE(sampled.values.size() == 3);
  CHECK(density(bs, 1e-3) < 1e-10 * density(bs, 10.0));
  CHECK(density(bs, 400.0) < 1e-10 * density(bs, 10.0));
}
