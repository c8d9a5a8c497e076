#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <utility>
#include <cstddef>
#include <string>
#include <vector>

#include "kerrdirac/errors.hpp"

namespace kerrdirac::ode {

template <class T, std::size_t N>
using State = std::array<T, N>;

template <class V>
struct Trajectory {
  std::vector<double> x;
  std::vector<V> y;
};

struct AdaptiveOptions {
  double rtol = 1e-10;
  double atol = 1e-14;
  double initial_step = 0.0;  // 0 picks |x1 - x0| * 1e-3
  double max_step = 0.0;      // 0 means unbounded
  long max_steps = 2'000'000;
  bool record = true;
};

namespace detail {

template <class T, std::size_t N>
State<T, N> axpy(const State<T, N>& y, double h, std::initializer_list<std::pair<double, const State<T, N>*>> terms) {
  State<T, N> out = y;
  for (const auto& [c, k] : terms) {
    if (c == 0.0) continue;
    for (std::size_t i = 0; i < N; ++i) out[i] += (h * c) * (*k)[i];
  }
  return out;
}

}  // namespace detail

/// Dormand-Prince 5(4) with local error control: max-norm error against
/// atol + rtol * max-norm of the state.
///
/// `f(x, y)` returns dy/dx. Integration may run in either direction. The returned
/// trajectory holds every accepted step (or only the endpoints if !record).
template <class T, std::size_t N, class F>
Trajectory<State<T, N>> integrate_dp45(F&& f, double x0, double x1, State<T, N> y,
                                       const AdaptiveOptions& opt = {}) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Trajectory<State<T, N>> out;
  out.x.push_back(x0);
  out.y.push_back(y);
  if (x1 == x0) return out;

  const double dir = x1 > x0 ? 1.0 : -1.0;
  const double span = std::abs(x1 - x0);
  double h = opt.initial_step > 0.0 ? opt.initial_step : span * 1e-3;
  if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
  double x = x0;
  State<T, N> k1 = f(x, y);

  for (long step = 0; step < opt.max_steps; ++step) {
    const double remaining = std::abs(x1 - x);
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    const double hs = dir * h;
    const auto k2 = f(x + c2 * hs, detail::axpy(y, hs, {{a21, &k1}}));
    const auto k3 = f(x + c3 * hs, detail::axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
    const auto k4 = f(x + c4 * hs, detail::axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const auto k5 =
        f(x + c5 * hs, detail::axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const auto k6 = f(x + hs, detail::axpy(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const auto ynew = detail::axpy(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const double xnew = last ? x1 : x + hs;
    const auto k7 = f(xnew, ynew);

    // Scale by the size of the whole state, so that a component passing through
    // zero does not force tiny steps.
    double size = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      size = std::max({size, std::abs(y[i]), std::abs(ynew[i])});
      const auto ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      err = std::max(err, std::abs(ei));
    }
    err /= opt.atol + opt.rtol * size;
    if (!std::isfinite(err)) err = 1e10;

    if (err <= 1.0) {
      x = xnew;
      y = ynew;
      k1 = k7;
      if (opt.record || last) {
        out.x.push_back(x);
        out.y.push_back(y);
      }
      if (last) return out;
      const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
      h *= grow;
    } else {
      h *= std::max(0.1, 0.9 * std::pow(err, -0.2));
    }
    if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
    if (h < 1e-14 * std::max(1.0, std::abs(x)) || h < 1e-300) {
      throw StepUnderflow("integrate_dp45: step size underflow at x = " + std::to_string(x));
    }
  }
  throw StepUnderflow("integrate_dp45: step budget exhausted at x = " + std::to_string(x));
}

}  // namespace kerrdirac::ode
