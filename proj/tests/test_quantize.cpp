#include "doctest.h"

#include <cmath>

#include "kerrdirac/angular.hpp"
#include "kerrdirac/errors.hpp"
#include "kerrdirac/quantize.hpp"

using namespace kerrdirac;
using namespace kerrdirac::quantize;

TEST_CASE("Kerr window") {
  const auto w = KerrWindow::of(HalfInteger::from_twice(5), 2.0);
  CHECK(w.lo == doctest::Approx(0.625 * 2.0));
  CHECK(w.hi == doctest::Approx(2.5 / std::sqrt(2.0)));
  CHECK(w.contains(-1.3));
  CHECK_FALSE(w.contains(1.25));
  CHECK_FALSE(w.contains(1.8));
}

TEST_CASE("side parsing") {
  CHECK(parse_side("+") == Side::Plus);
  CHECK(parse_side("-") == Side::Minus);
  CHECK(symbol(Side::Minus) == '-');
  CHECK(sign_of(Side::Plus) == 1);
  CHECK_THROWS_AS(parse_side("up"), InvalidParameter);
}

TEST_CASE("scan options are validated") {
  ScanOptions opt;
  opt.scan = 3;
  CHECK_THROWS_AS(opt.validate(), InvalidParameter);
  opt = {};
  opt.root_tol = -1.0;
  CHECK_THROWS_AS(opt.validate(), InvalidParameter);
}

TEST_CASE("quantization function is positive above |k|/sqrt(2)") {
  const auto k = HalfInteger::from_twice(3);
  for (double L : {1.07, 1.3, 2.0}) {
    CHECK(kerr_alpha(k, L) > 0.0);
    const double lambda = angular::angular_eigenvalue({k, -L, -0.75}, -2, 400);
    CHECK(1 + kerr_alpha(k, L) + std::sqrt(kerr_kappa_sq(k, L, lambda)) > 0.0);
  }
}

TEST_CASE("lambda curve covers the window side") {
  ScanOptions opt;
  opt.scan = 200;
  const auto k = HalfInteger::from_twice(5);
  const auto curve = lambda_curve(k, -4, Side::Minus, opt);
  REQUIRE(curve.L.size() == curve.lambda.size());
  const auto w = KerrWindow::of(k, 1.0);
  for (double L : curve.L) {
    CHECK(L < 0.0);
    CHECK(w.contains(L));
  }
  const std::size_t mid = curve.L.size() / 2;
  CHECK(curve.lambda[mid] ==
        doctest::Approx(angular::angular_eigenvalue({k, curve.L[mid], -1.25}, -4, 2000)).epsilon(1e-6));
}

TEST_CASE("finds the k = 5/2 root at am = -1.264065") {
  const auto k = HalfInteger::from_twice(5);
  const auto result = solve_kerr(k, 1.0, 2, -4, Side::Minus);
  REQUIRE(result.states.size() == 1);
  const auto& s = result.states.front();
  CHECK(s.params.a == doctest::Approx(-1.264065).epsilon(1e-6));
  CHECK(s.n() == 2);
  CHECK(s.j == -4);
  CHECK(std::abs(1 + s.n() + s.coeffs.alpha + s.coeffs.kappa) < 1e-9);
  CHECK(s.omega / s.params.m == doctest::Approx(0.988873).epsilon(1e-6));
}

TEST_CASE("refinement from a nearby guess reaches the same root") {
  const auto k = HalfInteger::from_twice(5);
  const auto s = refine_kerr_root(k, 1.0, 4, -2, -1.2667);
  REQUIRE(s.has_value());
  CHECK(s->params.a == doctest::Approx(-1.266630).epsilon(1e-6));
  CHECK_FALSE(refine_kerr_root(k, 1.0, 0, -1, -1.3).has_value());
}

TEST_CASE("sequence approaches the lower window end monotonically") {
  const auto k = HalfInteger::from_twice(5);
  const auto seq = enumerate_sequence(k, 1.0, -4, Side::Minus, 0, 5);
  REQUIRE(seq.size() >= 4);
  for (std::size_t i = 1; i < seq.size(); ++i) {
    CHECK(seq[i].n > seq[i - 1].n);
    CHECK(std::abs(seq[i].L) < std::abs(seq[i - 1].L));
    CHECK(std::abs(seq[i].L) > 1.25);
  }
}

TEST_CASE("extreme Reissner-Nordstrom admits no bound state") {
  const auto p = radial::ExtremeKNParams::extreme(HalfInteger::from_twice(1), 0.0, 1.0, 1.0, 0.3);
  const auto r = check_kerr_newman(p, 3, 10);
  CHECK(r.states.empty());
  CHECK(r.rejections.size() == 6);
  for (const auto& rej : r.rejections) CHECK(rej.reason == radial::Rejection::Quantization);
}
