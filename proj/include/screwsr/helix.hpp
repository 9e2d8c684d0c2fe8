#pragma once

// Helices in M_k: standard-position helices with an axis, curvature and
// torsion from one-parameter subgroups, the inverse construction of a
// generator with prescribed curvature and torsion, Frenet frames, circles, and
// the arithmetic of periodic helix types (l + i theta, q, p).

#include <cmath>
#include <compare>
#include <numbers>
#include <numeric>
#include <string>

#include "screwsr/errors.hpp"
#include "screwsr/spaceform.hpp"

namespace screwsr {

/// Curvature below this is treated as a geodesic, with torsion zero.
inline constexpr double kGeodesicCurvatureThreshold = 1e-9;

// sin_k, cos_k, cot_k and the principal arcsin_k.

inline double sin_k(double r, SpaceForm k) {
  switch (k) {
    case SpaceForm::spherical: return std::sin(r);
    case SpaceForm::flat: return r;
    case SpaceForm::hyperbolic: return std::sinh(r);
  }
  return 0.0;
}

inline double cos_k(double r, SpaceForm k) {
  switch (k) {
    case SpaceForm::spherical: return std::cos(r);
    case SpaceForm::flat: return 1.0;
    case SpaceForm::hyperbolic: return std::cosh(r);
  }
  return 0.0;
}

inline double cot_k(double r, SpaceForm k) { return cos_k(r, k) / sin_k(r, k); }

/// Inverse of sin_k on [0, inf) (on [0, pi/2] for k = 1).
inline double arcsin_k(double x, SpaceForm k) {
  detail::require(x >= 0.0, "arcsin_k: argument must be non-negative (radii are positive)");
  switch (k) {
    case SpaceForm::spherical:
      detail::require(x <= 1.0, "arcsin_k: argument must lie in [0, 1] for k = 1");
      return std::asin(x);
    case SpaceForm::flat: return x;
    case SpaceForm::hyperbolic: return std::asinh(x);
  }
  return 0.0;
}

/// R_k(s) = (cos_k s, -k sin_k s; sin_k s, cos_k s).
inline Eigen::Matrix2d planar_rotation(double s, SpaceForm k) {
  Eigen::Matrix2d m;
  m << cos_k(s, k), -curvature(k) * sin_k(s, k),
       sin_k(s, k), cos_k(s, k);
  return m;
}

struct FrenetData {
  double kappa = 0.0;
  double tau = 0.0;
  /// False when the formula used is only continued (not established) for
  /// this space form, i.e. axis-helix formulas evaluated with k = 1.
  bool certified = true;
};

/// Length and holonomy of a periodic geodesic.
class ComplexLength {
 public:
  ComplexLength(double ell, double theta) : ell_(ell), theta_(theta) {
    detail::require(std::isfinite(ell) && ell > 0.0, "complex length: ell must be positive");
    detail::require(std::isfinite(theta) && theta >= 0.0 && theta < 2.0 * std::numbers::pi,
                    "complex length: theta must lie in [0, 2pi)");
  }

  double ell() const noexcept { return ell_; }
  double theta() const noexcept { return theta_; }

  friend auto operator<=>(const ComplexLength&, const ComplexLength&) = default;

 private:
  double ell_;
  double theta_;
};

/// Periodic helix turning p times about an axis of complex length
/// ell + i theta while the axis is traversed q times.
class HelixType {
 public:
  HelixType(ComplexLength cl, long q, long p) : cl_(cl), q_(q), p_(p) {
    detail::require(q >= 1, "helix type: q must be a positive integer");
    detail::require(std::gcd(std::abs(p), q) == 1,
                    "helix type: p and q must be coprime (q = 1 when p = 0)");
  }

  const ComplexLength& complex_length() const noexcept { return cl_; }
  long q() const noexcept { return q_; }
  long p() const noexcept { return p_; }

  /// mu = (2 pi p / q - theta) / ell.
  double angular_speed() const {
    return (2.0 * std::numbers::pi * static_cast<double>(p_) / static_cast<double>(q_) -
            cl_.theta()) /
           cl_.ell();
  }

 private:
  ComplexLength cl_;
  long q_;
  long p_;
};

/// V(c, mu) = c (0, -k e1^T; e1, L_{mu e1}). The orbit of
/// standard_helix_point(r) is the helix in standard position.
inline AlgebraElement standard_helix_generator(double c, double mu, SpaceForm k) {
  detail::require(c > 0.0, "standard helix: axis speed c must be positive");
  detail::require(k != SpaceForm::flat || mu != 0.0,
                  "standard helix: angular speed must be nonzero in flat space");
  return AlgebraElement::trusted(c * algebra_matrix(Vec3::UnitX(), Vec3(mu * Vec3::UnitX()), k), k);
}

/// (cos_k r, 0, sin_k r, 0), the starting point of the standard helix.
inline Vec4 standard_helix_point(double r, SpaceForm k) {
  return Vec4(cos_k(r, k), 0.0, sin_k(r, k), 0.0);
}

/// diag(R_k(ct), R_1(c mu t)) applied to standard_helix_point(r).
inline Vec4 standard_helix_block_form(double c, double mu, double r, SpaceForm k, double t) {
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<2, 2>() = planar_rotation(c * t, k);
  m.bottomRightCorner<2, 2>() = planar_rotation(c * mu * t, SpaceForm::spherical);
  return m * standard_helix_point(r, k);
}

/// The translation along the geodesic from e0 towards e2 by distance r: it
/// fixes e1 and e3 and maps e0 to standard_helix_point(r).
inline GroupElement axis_transvection(double r, SpaceForm k) {
  Mat4 m = Mat4::Identity();
  m(0, 0) = cos_k(r, k);
  m(0, 2) = -curvature(k) * sin_k(r, k);
  m(2, 0) = sin_k(r, k);
  m(2, 2) = cos_k(r, k);
  return GroupElement::trusted(m, k);
}

/// g^{-1} V(c, mu) g for g = axis_transvection(r); its orbit through e0 is
/// congruent to the standard helix of radius r.
inline AlgebraElement conjugated_helix_generator(double c, double mu, double r, SpaceForm k) {
  return conjugate(axis_transvection(r, k), standard_helix_generator(c, mu, k));
}

/// Whether the axis-helix formulas (unit speed, curvature, torsion) are
/// established for this space form. They are for k = 0, -1 only.
constexpr bool axis_formulas_certified(SpaceForm k) noexcept {
  return k != SpaceForm::spherical;
}

/// Axis speed c making the helix of radius r and angular speed mu unit
/// speed: c^2 (cos_k^2 r + mu^2 sin_k^2 r) = 1. For k = 0, -1 this is a
/// decreasing bijection (0, inf) -> (0, 1).
inline double unit_speed_axis_speed(double r, double mu, SpaceForm k) {
  detail::require(r > 0.0, "unit speed: radius must be positive");
  detail::require(k != SpaceForm::flat || mu != 0.0,
                  "unit speed: angular speed must be nonzero in flat space");
  const double s = sin_k(r, k);
  const double c = cos_k(r, k);
  const double denom = c * c + mu * mu * s * s;
  detail::require(denom > 0.0, "unit speed: degenerate helix (zero speed)");
  return 1.0 / std::sqrt(denom);
}

/// kappa^2 = (c^2 mu^2 - k)(1 - c^2), tau = c^2 mu for a unit-speed helix
/// with axis speed c and angular speed mu.
inline FrenetData kappa_tau_from_axis(double c, double mu, SpaceForm k) {
  const double c2 = c * c;
  double radicand = (c2 * mu * mu - curvature(k)) * (1.0 - c2);
  if (radicand < 0.0) {
    detail::require(radicand > -1e-14,
                    "curvature radicand is negative: (c, mu) is not a unit-speed axis helix");
    radicand = 0.0;
  }
  FrenetData out{std::sqrt(radicand), c2 * mu, axis_formulas_certified(k)};
  if (out.kappa < kGeodesicCurvatureThreshold) out.tau = 0.0;
  return out;
}

/// Curvature and torsion of t -> exp(tV) e0, which must have unit speed:
/// kappa = |V^2 e0 + k e0|, kappa^2 tau = <V^3 e0, V e0 x (V^2 e0 + k e0)>.
inline FrenetData kappa_tau_from_generator(const AlgebraElement& v) {
  const SpaceForm k = v.form();
  const Mat4& m = v.matrix();
  const Vec4 e0 = Vec4::UnitX();
  const Vec4 velocity = m * e0;
  const double speed2 = inner_k(velocity, velocity, k);
  detail::require(std::abs(speed2 - 1.0) <= 1e-9,
                  "kappa_tau_from_generator: orbit of e0 must have unit speed (|V e0|^2 = " +
                      std::to_string(speed2) + ")");
  const Vec4 accel = m * velocity + curvature(k) * e0;
  const Vec4 jerk = m * (m * velocity);
  FrenetData out;
  out.kappa = accel.tail<3>().norm();
  if (out.kappa < kGeodesicCurvatureThreshold) return out;
  const Vec3 binormal_scaled = velocity.tail<3>().cross(accel.tail<3>());
  out.tau = jerk.tail<3>().dot(binormal_scaled) / (out.kappa * out.kappa);
  return out;
}

/// Z = (0, -k e1^T; e1, L_{tau e1 + kappa e3}): exp(tZ) e0 is the unit-speed
/// helix with curvature kappa and torsion tau whose Frenet frame at t = 0 is
/// the standard basis of T_{e0} M_k.
inline AlgebraElement generator_from_kappa_tau(double kappa, double tau, SpaceForm k) {
  detail::require(kappa >= 0.0, "curvature must be non-negative");
  detail::require(kappa != 0.0 || tau == 0.0, "a geodesic (kappa = 0) has torsion 0 by convention");
  return AlgebraElement::trusted(algebra_matrix(Vec3::UnitX(), Vec3(tau, 0.0, kappa), k), k);
}

/// Frenet frame F(t) of exp(tZ) e0, obtained by flowing F(0) = identity with
/// exp(tZ). For kappa = 0 the normal and binormal are parallel.
inline Frame frenet_frame(const AlgebraElement& z, double t) {
  detail::require((z.translation_part() - Vec3::UnitX()).cwiseAbs().maxCoeff() <= 1e-12 &&
                      std::abs(z.matrix()(1, 3)) <= 1e-12,
                  "frenet_frame: generator must come from generator_from_kappa_tau");
  return phi(exp_at(z, t));
}

/// Frenet basis (T, N, B) at e0 of the unit-speed orbit exp(tV) e0, as the
/// columns of a rotation of T_{e0}M_k. For kappa ~ 0 any normal is chosen.
inline Mat3 initial_frenet_basis(const AlgebraElement& v) {
  const Mat4& m = v.matrix();
  const Vec3 t = (m * Vec4::UnitX()).tail<3>();
  const Vec3 kn = (m * (m * Vec4::UnitX()) + curvature(v.form()) * Vec4::UnitX()).tail<3>();
  Vec3 n;
  if (kn.norm() >= kGeodesicCurvatureThreshold) {
    n = kn.normalized();
  } else {
    n = t.unitOrthogonal();
  }
  Mat3 basis;
  basis.col(0) = t;
  basis.col(1) = n;
  basis.col(2) = t.cross(n);
  return basis;
}

struct CircleData {
  double length = 0.0;
  double kappa = 0.0;
};

/// Length 2 pi sin_k r and curvature |cot_k r| of a circle of radius r.
/// (For k = 1 and r > pi/2, the circle is the circle of radius pi - r about
/// the antipodal center, hence the absolute value.)
inline CircleData circle_data(double r, SpaceForm k) {
  detail::require(r > 0.0, "circle radius must be positive");
  detail::require(k != SpaceForm::spherical || r < std::numbers::pi,
                  "circle radius must be smaller than pi in S^3");
  return CircleData{2.0 * std::numbers::pi * sin_k(r, k), std::abs(cot_k(r, k))};
}

struct HelixTypeParams {
  double length = 0.0;         // L
  double angular_speed = 0.0;  // mu
};

/// cL = q l and mu l = 2 pi p / q - theta.
inline HelixTypeParams helix_type_params(const HelixType& ht, double c) {
  detail::require(c > 0.0 && c < 1.0, "helix type: axis speed must lie in (0, 1)");
  return HelixTypeParams{static_cast<double>(ht.q()) * ht.complex_length().ell() / c,
                         ht.angular_speed()};
}

}  // namespace screwsr
