#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "densitykit/jet.hpp"
#include "densitykit/vec.hpp"

namespace densitykit {

enum class DomainKind { disk, sector, rectangle };

/// Parameter domain of an analytic patch. A disk is the periodic special case
/// of a sector (angle 2 pi) centred at the origin.
struct ParamDomain {
  DomainKind kind = DomainKind::disk;
  double radius = 1.0;
  double angle = kTwoPi;
  double u0 = 0.0, u1 = 1.0, v0 = 0.0, v1 = 1.0;

  static ParamDomain disk(double r) { return {DomainKind::disk, r, kTwoPi}; }
  static ParamDomain sector(double r, double opening) { return {DomainKind::sector, r, opening}; }
  static ParamDomain rectangle(double u0, double u1, double v0, double v1) {
    ParamDomain d;
    d.kind = DomainKind::rectangle;
    d.u0 = u0; d.u1 = u1; d.v0 = v0; d.v1 = v1;
    return d;
  }
};

struct BranchPoint {
  double u, v;
  int order;  // m >= 2 in u = (z^m, f(z))
};

/// First and second derivatives of an immersion at one parameter point, and
/// the extrinsic quantities derived from them.
struct LocalGeometry {
  PointN x;
  VecN xu, xv, xuu, xuv, xvv;
  double E = 0, F = 0, G = 0, det = 0;
  bool regular = false;

  LocalGeometry() = default;
  LocalGeometry(PointN x_, VecN xu_, VecN xv_, VecN xuu_, VecN xuv_, VecN xvv_)
      : x(std::move(x_)), xu(std::move(xu_)), xv(std::move(xv_)),
        xuu(std::move(xuu_)), xuv(std::move(xuv_)), xvv(std::move(xvv_)) {
    E = dot(xu, xu);
    F = dot(xu, xv);
    G = dot(xv, xv);
    det = E * G - F * F;
    regular = (E + G) > 0.0 && det > 1e-14 * (E + G) * (E + G);
  }

  /// Orthogonal projection onto the tangent plane span(xu, xv).
  VecN tangent_part(const VecN& w) const {
    if (!regular) return VecN::zero(w.dim());
    const double wu = dot(w, xu), wv = dot(w, xv);
    const double a = (G * wu - F * wv) / det;
    const double b = (E * wv - F * wu) / det;
    return xu * a + xv * b;
  }

  VecN normal_part(const VecN& w) const { return w - tangent_part(w); }

  /// Mean curvature vector, trace convention: g^{ij} (x_ij)^perp. Points
  /// toward the centre on a sphere, |H| = 2/R there.
  VecN mean_curvature() const {
    if (!regular) return VecN::zero(x.dim());
    return (normal_part(xuu) * G - normal_part(xuv) * (2.0 * F) + normal_part(xvv) * E) / det;
  }

  /// Norm of the second fundamental form, |A|^2 = g^{ik} g^{jl} <A_ij, A_kl>.
  double second_form_norm() const {
    if (!regular) return 0.0;
    const std::array<std::array<VecN, 2>, 2> n{{{normal_part(xuu), normal_part(xuv)},
                                                {normal_part(xuv), normal_part(xvv)}}};
    const double gi[2][2] = {{G / det, -F / det}, {-F / det, E / det}};
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) s += gi[i][k] * gi[j][l] * dot(n[i][j], n[k][l]);
    return std::sqrt(std::max(0.0, s));
  }
};

/// Immersion u: domain -> R^n with exact first and second derivatives.
class AnalyticPatch {
 public:
  virtual ~AnalyticPatch() = default;

  virtual std::string name() const = 0;
  virtual int dimension() const = 0;
  virtual ParamDomain domain() const = 0;
  virtual PointN position(double u, double v) const = 0;
  virtual LocalGeometry local(double u, double v) const = 0;
  virtual std::vector<BranchPoint> branch_points() const { return {}; }

  /// Angular refinement factor for polar meshing around the domain centre
  /// (a z^m branch point needs m times the usual number of spokes).
  virtual int angular_multiplicity() const { return 1; }

  VecN mean_curvature(double u, double v) const { return local(u, v).mean_curvature(); }
  double second_form_norm(double u, double v) const { return local(u, v).second_form_norm(); }
};

/// CRTP adapter: Derived supplies
///   template <class T> void eval(const T& u, const T& v, std::array<T, kMaxDim>& out) const;
/// and gets both the plain position and the jet-based local geometry.
template <class Derived>
class PatchBase : public AnalyticPatch {
 public:
  PointN position(double u, double v) const override {
    std::array<double, kMaxDim> out{};
    derived().eval(u, v, out);
    VecN p(dimension());
    for (int i = 0; i < dimension(); ++i) p[i] = out[i];
    return p;
  }

  LocalGeometry local(double u, double v) const override {
    std::array<Jet2, kMaxDim> out{};
    derived().eval(Jet2::u(u), Jet2::v(v), out);
    const int n = dimension();
    VecN x(n), xu(n), xv(n), xuu(n), xuv(n), xvv(n);
    for (int i = 0; i < n; ++i) {
      x[i] = out[i].f;
      xu[i] = out[i].fu;
      xv[i] = out[i].fv;
      xuu[i] = out[i].fuu;
      xuv[i] = out[i].fuv;
      xvv[i] = out[i].fvv;
    }
    return LocalGeometry(x, xu, xv, xuu, xuv, xvv);
  }

 private:
  const Derived& derived() const { return static_cast<const Derived&>(*this); }
};

// ---------------------------------------------------------------------------
// Catalog immersions

class FlatPatch : public PatchBase<FlatPatch> {
 public:
  explicit FlatPatch(ParamDomain d) : domain_(d) {}
  std::string name() const override { return "flat"; }
  int dimension() const override { return 3; }
  ParamDomain domain() const override { return domain_; }

  template <class T>
  void eval(const T& u, const T& v, std::array<T, kMaxDim>& out) const {
    out[0] = u;
    out[1] = v;
    out[2] = T(0.0);
  }

 private:
  ParamDomain domain_;
};

/// z -> (z^m, h z^{m+1}) in C^2 = R^4: a holomorphic (hence minimal) disk with
/// an order-m branch point at 0 whose image is otherwise embedded. With h = 0
/// it degenerates to the flat m-fold cover z -> z^m in R^3.
class BranchedDiskPatch : public PatchBase<BranchedDiskPatch> {
 public:
  BranchedDiskPatch(int m, double h, double radius = 1.0) : m_(m), h_(h), radius_(radius) {
    require(m >= 1, ErrorKind::invalid_parameter, "branch order must be >= 1");
  }
  std::string name() const override { return "branched_disk"; }
  int dimension() const override { return h_ == 0.0 ? 3 : 4; }
  ParamDomain domain() const override { return ParamDomain::disk(radius_); }
  int angular_multiplicity() const override { return m_; }
  std::vector<BranchPoint> branch_points() const override {
    if (m_ < 2) return {};
    return {BranchPoint{0.0, 0.0, m_}};
  }
  int order() const { return m_; }

  template <class T>
  void eval(const T& u, const T& v, std::array<T, kMaxDim>& out) const {
    T re(1.0), im(0.0);
    for (int k = 0; k < m_; ++k) {
      const T nre = re * u - im * v;
      im = re * v + im * u;
      re = nre;
    }
    out[0] = re;
    out[1] = im;
    if (h_ == 0.0) {
      out[2] = T(0.0);
      return;
    }
    out[2] = T(h_) * (re * u - im * v);
    out[3] = T(h_) * (re * v + im * u);
  }

 private:
  int m_;
  double h_;
  double radius_;
};

/// Round sphere of radius R through inverse stereographic projection from the
/// south pole; the domain disk of radius tan(theta/2) maps onto the polar cap
/// of angle theta around the north pole (0, 0, R).
class SpherePatch : public PatchBase<SpherePatch> {
 public:
  SpherePatch(double R, double polar_angle) : R_(R), theta_(polar_angle) {
    require(R > 0.0, ErrorKind::invalid_parameter, "sphere radius must be positive");
    require(polar_angle > 0.0 && polar_angle <= kPi / 2 + 1e-12, ErrorKind::invalid_parameter,
            "cap polar angle must lie in (0, pi/2]");
  }
  std::string name() const override { return "sphere_cap"; }
  int dimension() const override { return 3; }
  ParamDomain domain() const override { return ParamDomain::disk(std::tan(theta_ / 2)); }
  double sphere_radius() const { return R_; }
  double polar_angle() const { return theta_; }

  template <class T>
  void eval(const T& u, const T& v, std::array<T, kMaxDim>& out) const {
    const T s = u * u + v * v;
    const T inv = T(R_) / (T(1.0) + s);
    out[0] = T(2.0) * u * inv;
    out[1] = T(2.0) * v * inv;
    out[2] = (T(1.0) - s) * inv;
  }

 private:
  double R_, theta_;
};

/// Rectangular piece of the catenoid with waist radius a:
/// (s, phi) -> (a cosh(s/a) cos phi, a cosh(s/a) sin phi, s).
class CatenoidPatch : public PatchBase<CatenoidPatch> {
 public:
  CatenoidPatch(double waist, double height, double span) : a_(waist), h_(height), span_(span) {
    require(waist > 0 && height > 0 && span > 0 && span < kTwoPi, ErrorKind::invalid_parameter,
            "catenoid needs waist > 0, height > 0, 0 < span < 2 pi");
  }
  std::string name() const override { return "catenoid"; }
  int dimension() const override { return 3; }
  ParamDomain domain() const override {
    return ParamDomain::rectangle(-h_ / 2, h_ / 2, -span_ / 2, span_ / 2);
  }

  template <class T>
  void eval(const T& s, const T& phi, std::array<T, kMaxDim>& out) const {
    using std::cos;
    using std::cosh;
    using std::sin;
    const T rho = T(a_) * cosh(s / T(a_));
    out[0] = rho * cos(phi);
    out[1] = rho * sin(phi);
    out[2] = s;
  }

 private:
  double a_, h_, span_;
};

/// Enneper's surface restricted to the parameter disk of the given radius.
class EnneperPatch : public PatchBase<EnneperPatch> {
 public:
  EnneperPatch(double scale, double radius) : scale_(scale), radius_(radius) {
    require(scale > 0 && radius > 0, ErrorKind::invalid_parameter, "enneper needs positive scale and radius");
  }
  std::string name() const override { return "enneper"; }
  int dimension() const override { return 3; }
  ParamDomain domain() const override { return ParamDomain::disk(radius_); }

  template <class T>
  void eval(const T& u, const T& v, std::array<T, kMaxDim>& out) const {
    const T k(scale_);
    out[0] = k * (u - u * u * u / T(3.0) + u * v * v);
    out[1] = k * (v - v * v * v / T(3.0) + v * u * u);
    out[2] = k * (u * u - v * v);
  }

 private:
  double scale_, radius_;
};

/// Graph of a seeded random cubic polynomial (no constant or linear terms)
/// over the unit disk; the fuzzing carrier for non-minimal surfaces.
class GraphDiskPatch : public PatchBase<GraphDiskPatch> {
 public:
  GraphDiskPatch(std::uint64_t seed, double amplitude) : seed_(seed), amp_(amplitude) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (auto& c : c_) c = amp_ * coef(rng);
  }
  std::string name() const override { return "graph_disk"; }
  int dimension() const override { return 3; }
  ParamDomain domain() const override { return ParamDomain::disk(1.0); }

  template <class T>
  void eval(const T& u, const T& v, std::array<T, kMaxDim>& out) const {
    out[0] = u;
    out[1] = v;
    // u^2, uv, v^2, u^3, u^2 v, u v^2, v^3
    out[2] = T(c_[0]) * u * u + T(c_[1]) * u * v + T(c_[2]) * v * v + T(c_[3]) * u * u * u +
             T(c_[4]) * u * u * v + T(c_[5]) * u * v * v + T(c_[6]) * v * v * v;
  }

 private:
  std::uint64_t seed_;
  double amp_;
  std::array<double, 7> c_{};
};

/// Homothety x -> lambda * x of another patch.
class ScaledPatch : public AnalyticPatch {
 public:
  ScaledPatch(std::shared_ptr<const AnalyticPatch> inner, double lambda) : inner_(std::move(inner)), lambda_(lambda) {
    require(lambda > 0.0, ErrorKind::invalid_parameter, "scale factor must be positive");
  }
  std::string name() const override { return inner_->name(); }
  int dimension() const override { return inner_->dimension(); }
  ParamDomain domain() const override { return inner_->domain(); }
  std::vector<BranchPoint> branch_points() const override { return inner_->branch_points(); }
  int angular_multiplicity() const override { return inner_->angular_multiplicity(); }
  PointN position(double u, double v) const override { return inner_->position(u, v) * lambda_; }
  LocalGeometry local(double u, double v) const override {
    const LocalGeometry g = inner_->local(u, v);
    return LocalGeometry(g.x * lambda_, g.xu * lambda_, g.xv * lambda_, g.xuu * lambda_, g.xuv * lambda_,
                         g.xvv * lambda_);
  }

 private:
  std::shared_ptr<const AnalyticPatch> inner_;
  double lambda_;
};

}  // namespace densitykit
