#pragma once

#include <cmath>
#include <ostream>

namespace bdspectra {

/// First-order dual number: value and derivative with respect to t.
struct Dual {
  double value = 0.0;
  double deriv = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double v, double d = 0.0) : value(v), deriv(d) {}

  static constexpr Dual variable(double t) { return {t, 1.0}; }

  constexpr Dual operator-() const { return {-value, -deriv}; }

  constexpr Dual& operator+=(const Dual& o) {
    value += o.value;
    deriv += o.deriv;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    value -= o.value;
    deriv -= o.deriv;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) {
    deriv = deriv * o.value + value * o.deriv;
    value *= o.value;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    deriv = (deriv * o.value - value * o.deriv) / (o.value * o.value);
    value /= o.value;
    return *this;
  }

  friend constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend constexpr Dual operator/(Dual a, const Dual& b) { return a /= b; }

  friend constexpr bool operator==(const Dual&, const Dual&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Dual& d) {
    return os << '(' << d.value << ", " << d.deriv << ')';
  }
};

inline Dual sqrt(const Dual& x) {
  const double r = std::sqrt(x.value);
  return {r, x.deriv / (2.0 * r)};
}

inline Dual exp(const Dual& x) {
  const double e = std::exp(x.value);
  return {e, e * x.deriv};
}

inline Dual log(const Dual& x) { return {std::log(x.value), x.deriv / x.value}; }

/// x^n for an integer exponent; any base except 0 with n < 0.
inline Dual pow_int(const Dual& x, int n) {
  if (n == 0) return {1.0, 0.0};
  const double lower = std::pow(x.value, n - 1);
  return {lower * x.value, n * lower * x.deriv};
}

/// x^y = exp(y ln x); requires x > 0.
inline Dual pow(const Dual& x, const Dual& y) {
  const double lx = std::log(x.value);
  const double v = std::exp(y.value * lx);
  return {v, v * (y.deriv * lx + y.value * x.deriv / x.value)};
}

}  // namespace bdspectra
