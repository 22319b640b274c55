#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "densitykit/errors.hpp"

namespace densitykit {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Largest supported ambient dimension. Coordinates live inline so that the
/// hot clipping loops never allocate.
inline constexpr int kMaxDim = 8;

/// Point or vector in R^n, 3 <= n <= kMaxDim (n = 2 is accepted for the
/// parameter-domain helpers). Unused trailing slots stay zero, which lets the
/// arithmetic run over the full fixed-width array.
class VecN {
 public:
  VecN() = default;

  explicit VecN(int dim) : dim_(dim) {
    require(dim >= 1 && dim <= kMaxDim, ErrorKind::construction,
            "dimension " + std::to_string(dim) + " outside [1, " + std::to_string(kMaxDim) + "]");
  }

  VecN(std::initializer_list<double> coords) : VecN(static_cast<int>(coords.size())) {
    std::copy(coords.begin(), coords.end(), c_.begin());
  }

  static VecN from(std::span<const double> coords) {
    VecN v(static_cast<int>(coords.size()));
    std::copy(coords.begin(), coords.end(), v.c_.begin());
    return v;
  }

  static VecN zero(int dim) { return VecN(dim); }

  int dim() const noexcept { return dim_; }
  double operator[](int i) const noexcept { return c_[i]; }
  double& operator[](int i) noexcept { return c_[i]; }
  std::span<const double> coords() const noexcept { return {c_.data(), static_cast<size_t>(dim_)}; }

  /// Same coordinates embedded in a higher dimension (trailing zeros).
  VecN lifted(int dim) const {
    require(dim >= dim_, ErrorKind::invalid_parameter, "cannot lift to a smaller dimension");
    VecN v(dim);
    v.c_ = c_;
    return v;
  }

  bool all_finite() const noexcept {
    for (int i = 0; i < dim_; ++i)
      if (!std::isfinite(c_[i])) return false;
    return true;
  }

  VecN& operator+=(const VecN& o) noexcept {
    for (int i = 0; i < kMaxDim; ++i) c_[i] += o.c_[i];
    return *this;
  }
  VecN& operator-=(const VecN& o) noexcept {
    for (int i = 0; i < kMaxDim; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  VecN& operator*=(double s) noexcept {
    for (int i = 0; i < kMaxDim; ++i) c_[i] *= s;
    return *this;
  }
  VecN& operator/=(double s) noexcept {
    for (int i = 0; i < kMaxDim; ++i) c_[i] /= s;
    return *this;
  }

  friend VecN operator+(VecN a, const VecN& b) noexcept { return a += b; }
  friend VecN operator-(VecN a, const VecN& b) noexcept { return a -= b; }
  friend VecN operator*(VecN a, double s) noexcept { return a *= s; }
  friend VecN operator*(double s, VecN a) noexcept { return a *= s; }
  friend VecN operator/(VecN a, double s) noexcept { return a /= s; }
  friend VecN operator-(VecN a) noexcept { return a *= -1.0; }

  friend bool operator==(const VecN& a, const VecN& b) noexcept {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

using PointN = VecN;

inline double dot(const VecN& a, const VecN& b) noexcept {
  double s = 0.0;
  for (int i = 0; i < kMaxDim; ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const VecN& a) noexcept { return dot(a, a); }
inline double norm(const VecN& a) noexcept { return std::sqrt(norm2(a)); }
inline double distance(const VecN& a, const VecN& b) noexcept { return norm(a - b); }
inline double distance2(const VecN& a, const VecN& b) noexcept { return norm2(a - b); }

inline VecN normalized(const VecN& a) {
  const double n = norm(a);
  return n > 0.0 ? a / n : a;
}

/// |u ^ v|^2 via the Lagrange identity sum_{i<j} (u_i v_j - u_j v_i)^2, which
/// stays accurate for nearly parallel vectors in any dimension.
inline double wedge_norm2(const VecN& u, const VecN& v) noexcept {
  const int n = std::max(u.dim(), v.dim());
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double w = u[i] * v[j] - u[j] * v[i];
      s += w * w;
    }
  return s;
}

/// Unsigned angle between two vectors in [0, pi].
inline double angle_between(const VecN& u, const VecN& v) noexcept {
  return std::atan2(std::sqrt(wedge_norm2(u, v)), dot(u, v));
}

/// Neumaier compensated accumulator; results depend only on insertion order.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Checks that every point shares one dimension in [3, kMaxDim]; returns it.
inline int common_dimension(std::span<const PointN> pts, std::string_view what) {
  require(!pts.empty(), ErrorKind::construction, std::string(what) + ": no points");
  const int n = pts.front().dim();
  require(n >= 3 && n <= kMaxDim, ErrorKind::construction,
          std::string(what) + ": ambient dimension must lie in [3, " + std::to_string(kMaxDim) + "]");
  for (const auto& p : pts) {
    require(p.dim() == n, ErrorKind::construction, std::string(what) + ": mixed dimensions");
    require(p.all_finite(), ErrorKind::construction, std::string(what) + ": non-finite coordinate");
  }
  return n;
}

}  // namespace densitykit
