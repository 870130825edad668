#pragma once

#include <cmath>

namespace fg {

/// Scalar carrying two independent nilpotent perturbations eps1, eps2
/// (eps1^2 = eps2^2 = 0) plus their cross product. Pushing
/// f(y + s*u + t*v) through arithmetic in Dual2 yields the mixed partial
/// d^2 f / ds dt in the d12 slot, exact up to rounding.
struct Dual2 {
  double v = 0.0;    // value
  double d1 = 0.0;   // coefficient of eps1
  double d2 = 0.0;   // coefficient of eps2
  double d12 = 0.0;  // coefficient of eps1*eps2

  constexpr Dual2() = default;
  constexpr Dual2(double value) : v(value) {}
  constexpr Dual2(double value, double a, double b, double ab)
      : v(value), d1(a), d2(b), d12(ab) {}
};

constexpr Dual2 operator+(const Dual2& a, const Dual2& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d12 + b.d12};
}
constexpr Dual2 operator-(const Dual2& a, const Dual2& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d12 - b.d12};
}
constexpr Dual2 operator-(const Dual2& a) { return {-a.v, -a.d1, -a.d2, -a.d12}; }

constexpr Dual2 operator*(const Dual2& a, const Dual2& b) {
  return {a.v * b.v,
          a.v * b.d1 + a.d1 * b.v,
          a.v * b.d2 + a.d2 * b.v,
          a.v * b.d12 + a.d1 * b.d2 + a.d2 * b.d1 + a.d12 * b.v};
}

constexpr Dual2 operator*(double c, const Dual2& a) {
  return {c * a.v, c * a.d1, c * a.d2, c * a.d12};
}
constexpr Dual2 operator*(const Dual2& a, double c) { return c * a; }

constexpr Dual2 operator+(const Dual2& a, double c) { return {a.v + c, a.d1, a.d2, a.d12}; }
constexpr Dual2 operator+(double c, const Dual2& a) { return a + c; }
constexpr Dual2 operator-(const Dual2& a, double c) { return {a.v - c, a.d1, a.d2, a.d12}; }
constexpr Dual2 operator-(double c, const Dual2& a) { return (-a) + c; }

inline Dual2 inverse(const Dual2& a) {
  const double iv = 1.0 / a.v;
  const double iv2 = iv * iv;
  // 1/(v + e) = 1/v - e/v^2 + e^2/v^3, e^2 = 2 d1 d2 eps1 eps2
  return {iv, -a.d1 * iv2, -a.d2 * iv2,
          -a.d12 * iv2 + 2.0 * a.d1 * a.d2 * iv2 * iv};
}

inline Dual2 operator/(const Dual2& a, const Dual2& b) { return a * inverse(b); }
inline Dual2 operator/(const Dual2& a, double c) { return a * (1.0 / c); }
inline Dual2 operator/(double c, const Dual2& a) { return c * inverse(a); }

/// Chain rule for a scalar map given its value and first two derivatives
/// at x.v; enough because nilpotency kills all higher orders.
inline Dual2 applyScalar(double f, double df, double ddf, const Dual2& x) {
  return {f, df * x.d1, df * x.d2, df * x.d12 + ddf * x.d1 * x.d2};
}

inline Dual2 sqrt(const Dual2& a) {
  const double r = std::sqrt(a.v);
  return applyScalar(r, 0.5 / r, -0.25 / (r * a.v), a);
}

inline Dual2 exp(const Dual2& a) {
  const double e = std::exp(a.v);
  return applyScalar(e, e, e, a);
}

}  // namespace fg
