#pragma once

#include <cmath>
#include <cstdlib>
#include <string>

#include "kerrdirac/errors.hpp"

namespace kerrdirac {

/// Azimuthal quantum number k in {±1/2, ±3/2, ...}, stored as the odd integer 2k.
class HalfInteger {
 public:
  static HalfInteger from_twice(int twice) {
    if (twice % 2 == 0) {
      throw InvalidK("2k must be odd, got 2k = " + std::to_string(twice));
    }
    return HalfInteger(twice);
  }

  static HalfInteger from_value(double k) {
    const double twice = 2.0 * k;
    const double rounded = std::round(twice);
    if (!std::isfinite(k) || std::abs(twice - rounded) > 1e-9 || std::abs(rounded) > 1e6) {
      throw InvalidK("k must be a half-integer, got " + std::to_string(k));
    }
    return from_twice(static_cast<int>(rounded));
  }

  double value() const { return 0.5 * twice_; }
  int twice() const { return twice_; }
  double abs() const { return 0.5 * std::abs(twice_); }
  int sign() const { return twice_ > 0 ? 1 : -1; }

  friend bool operator==(HalfInteger a, HalfInteger b) = default;

 private:
  explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_;
};

}  // namespace kerrdirac
