#pragma once

#include <cmath>

namespace densitykit {

/// Second-order Taylor jet of a scalar function of two parameters (u, v):
/// value, gradient and Hessian, propagated exactly through arithmetic.
struct Jet2 {
  double f = 0.0;
  double fu = 0.0, fv = 0.0;
  double fuu = 0.0, fuv = 0.0, fvv = 0.0;

  constexpr Jet2() = default;
  constexpr Jet2(double c) : f(c) {}  // NOLINT: constants promote implicitly
  constexpr Jet2(double f_, double fu_, double fv_, double fuu_, double fuv_, double fvv_)
      : f(f_), fu(fu_), fv(fv_), fuu(fuu_), fuv(fuv_), fvv(fvv_) {}

  static constexpr Jet2 u(double value) { return {value, 1, 0, 0, 0, 0}; }
  static constexpr Jet2 v(double value) { return {value, 0, 1, 0, 0, 0}; }

  Jet2& operator+=(const Jet2& o) {
    f += o.f; fu += o.fu; fv += o.fv; fuu += o.fuu; fuv += o.fuv; fvv += o.fvv;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    f -= o.f; fu -= o.fu; fv -= o.fv; fuu -= o.fuu; fuv -= o.fuv; fvv -= o.fvv;
    return *this;
  }
  Jet2& operator*=(const Jet2& o) {
    *this = Jet2{f * o.f,
                 fu * o.f + f * o.fu,
                 fv * o.f + f * o.fv,
                 fuu * o.f + 2 * fu * o.fu + f * o.fuu,
                 fuv * o.f + fu * o.fv + fv * o.fu + f * o.fuv,
                 fvv * o.f + 2 * fv * o.fv + f * o.fvv};
    return *this;
  }
  Jet2& operator/=(const Jet2& o);

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
  friend Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }
  friend Jet2 operator-(const Jet2& a) { return {-a.f, -a.fu, -a.fv, -a.fuu, -a.fuv, -a.fvv}; }
};

/// Applies a scalar function g with g(f), g'(f), g''(f) given.
inline Jet2 chain(const Jet2& a, double g, double g1, double g2) {
  return {g,
          g1 * a.fu,
          g1 * a.fv,
          g1 * a.fuu + g2 * a.fu * a.fu,
          g1 * a.fuv + g2 * a.fu * a.fv,
          g1 * a.fvv + g2 * a.fv * a.fv};
}

inline Jet2& Jet2::operator/=(const Jet2& o) {
  const double inv = 1.0 / o.f;
  *this *= chain(o, inv, -inv * inv, 2.0 * inv * inv * inv);
  return *this;
}

inline Jet2 sin(const Jet2& a) { return chain(a, std::sin(a.f), std::cos(a.f), -std::sin(a.f)); }
inline Jet2 cos(const Jet2& a) { return chain(a, std::cos(a.f), -std::sin(a.f), -std::cos(a.f)); }
inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.f);
  return chain(a, e, e, e);
}
inline Jet2 cosh(const Jet2& a) { return chain(a, std::cosh(a.f), std::sinh(a.f), std::cosh(a.f)); }
inline Jet2 sinh(const Jet2& a) { return chain(a, std::sinh(a.f), std::cosh(a.f), std::sinh(a.f)); }
inline Jet2 sqrt(const Jet2& a) {
  const double s = std::sqrt(a.f);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.f));
}

}  // namespace densitykit
