#pragma once

// Ambient linear algebra for the three-dimensional space forms M_k inside
// R^4, their identity-component isometry groups G_k, the Lie algebras g_k,
// and the identification of G_k with the direct orthonormal frame bundle.
//
// Conventions: points of M_k are column vectors in R^4. For k = 0 they are
// homogeneous (x0 = 1) and G_0 acts as 4x4 matrices (1 0; a A). Tangent
// vectors at any point have four ambient coordinates; at e0 the last three
// coordinates identify T_{e0}M_k with R^3.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "screwsr/errors.hpp"
#include "screwsr/matrix_exp.hpp"

namespace screwsr {

template <class S>
using Vec3T = Eigen::Matrix<S, 3, 1>;
template <class S>
using Vec4T = Eigen::Matrix<S, 4, 1>;
template <class S>
using Mat3T = Eigen::Matrix<S, 3, 3>;
template <class S>
using Mat4T = Eigen::Matrix<S, 4, 4>;

using Vec3 = Vec3T<double>;
using Vec4 = Vec4T<double>;
using Mat3 = Mat3T<double>;
using Mat4 = Mat4T<double>;
using Basis = Eigen::Matrix<double, 4, 3>;

/// Entrywise tolerance for Lie algebra membership.
inline constexpr double kAlgebraTolerance = 1e-12;
/// Entrywise tolerance for group and frame membership, relative to the
/// squared magnitude of the matrix when that exceeds one.
inline constexpr double kGroupTolerance = 1e-10;

/// Curvature label of the model space: R^3 (0), S^3 (1) or H^3 (-1).
enum class SpaceForm : int { hyperbolic = -1, flat = 0, spherical = 1 };

constexpr int curvature(SpaceForm k) noexcept { return static_cast<int>(k); }

inline SpaceForm space_form_from_curvature(int k) {
  switch (k) {
    case -1: return SpaceForm::hyperbolic;
    case 0: return SpaceForm::flat;
    case 1: return SpaceForm::spherical;
    default:
      throw PreconditionError("curvature label must be one of 0, 1, -1 (got " +
                              std::to_string(k) + ")");
  }
}

constexpr std::string_view to_string(SpaceForm k) noexcept {
  switch (k) {
    case SpaceForm::hyperbolic: return "hyperbolic";
    case SpaceForm::flat: return "flat";
    case SpaceForm::spherical: return "spherical";
  }
  return "?";
}

/// diag(k, 1, 1, 1), the Gram matrix of <,>_k.
template <class S = double>
Mat4T<S> metric_matrix(SpaceForm k) {
  Mat4T<S> j = Mat4T<S>::Identity();
  j(0, 0) = S(curvature(k));
  return j;
}

/// <x, y>_k = k x0 y0 + x1 y1 + x2 y2 + x3 y3.
template <class A, class B>
auto inner_k(const Eigen::MatrixBase<A>& x, const Eigen::MatrixBase<B>& y,
             SpaceForm k) {
  using S = typename A::Scalar;
  return S(curvature(k)) * x(0) * y(0) + x(1) * y(1) + x(2) * y(2) +
         x(3) * y(3);
}

/// L_v, the matrix of y -> v x y.
template <class Derived>
Mat3T<typename Derived::Scalar> cross_op(const Eigen::MatrixBase<Derived>& v) {
  using S = typename Derived::Scalar;
  Mat3T<S> m;
  m << S(0), -v(2), v(1),
       v(2), S(0), -v(0),
       -v(1), v(0), S(0);
  return m;
}

/// Rot(v, t) = exp(t L_v): rotation about R v through the angle |v| t
/// (Rodrigues). Rot(0, t) is the identity.
template <class Derived>
Mat3T<typename Derived::Scalar> rot(const Eigen::MatrixBase<Derived>& v,
                                    typename Derived::Scalar t) {
  using S = typename Derived::Scalar;
  using std::cos;
  using std::sin;
  const S speed = v.norm();
  if (speed == S(0)) return Mat3T<S>::Identity();
  const Mat3T<S> k = cross_op(Vec3T<S>(v / speed));
  const S angle = speed * t;
  return Mat3T<S>::Identity() + sin(angle) * k + (S(1) - cos(angle)) * (k * k);
}

/// Embeds a 3x3 block as diag(1, R) (an element of K = Stab(e0)).
template <class Derived>
Mat4T<typename Derived::Scalar> rotation_block(
    const Eigen::MatrixBase<Derived>& r) {
  using S = typename Derived::Scalar;
  Mat4T<S> m = Mat4T<S>::Identity();
  m.template bottomRightCorner<3, 3>() = r;
  return m;
}

/// Block matrix (0, -k x^T; x, L_z). Every element of g_k has this form.
template <class A, class B>
Mat4T<typename A::Scalar> algebra_matrix(const Eigen::MatrixBase<A>& x,
                                         const Eigen::MatrixBase<B>& z,
                                         SpaceForm k) {
  using S = typename A::Scalar;
  Mat4T<S> m = Mat4T<S>::Zero();
  m.template block<1, 3>(0, 1) = -S(curvature(k)) * x.transpose();
  m.template block<3, 1>(1, 0) = x;
  m.template bottomRightCorner<3, 3>() = cross_op(z);
  return m;
}

/// Largest violation of g_k membership.
inline double algebra_residual(const Mat4& m, SpaceForm k) {
  if (k == SpaceForm::flat) {
    const Mat3 b = m.bottomRightCorner<3, 3>();
    return std::max(m.row(0).cwiseAbs().maxCoeff(),
                    (b + b.transpose()).cwiseAbs().maxCoeff());
  }
  const Mat4 j = metric_matrix(k);
  return (m.transpose() * j + j * m).cwiseAbs().maxCoeff();
}

/// Largest violation of G_k membership (excluding the sign conditions),
/// divided by max(1, max|m_ij|^2).
inline double group_residual(const Mat4& m, SpaceForm k) {
  if (k == SpaceForm::flat) {
    const Mat3 b = m.bottomRightCorner<3, 3>();
    const double row = (m.row(0) - Vec4::UnitX().transpose()).cwiseAbs().maxCoeff();
    return std::max(row, (b.transpose() * b - Mat3::Identity()).cwiseAbs().maxCoeff());
  }
  const Mat4 j = metric_matrix(k);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff() * m.cwiseAbs().maxCoeff());
  return (m.transpose() * j * m - j).cwiseAbs().maxCoeff() / scale;
}

/// Sign conditions of the identity component: det > 0, and m00 > 0 for k = -1.
inline bool in_identity_component(const Mat4& m, SpaceForm k) {
  if (m.determinant() <= 0.0) return false;
  if (k == SpaceForm::hyperbolic && m(0, 0) <= 0.0) return false;
  return true;
}

/// An element of the Lie algebra g_k.
class AlgebraElement {
 public:
  AlgebraElement(const Mat4& m, SpaceForm k, double tol = kAlgebraTolerance)
      : m_(m), k_(k) {
    const double r = algebra_residual(m, k);
    detail::require(r <= tol, "matrix is not in g_" + std::to_string(curvature(k)) +
                                  " (residual " + std::to_string(r) + ")");
  }

  /// Wraps a matrix that is in g_k by construction.
  static AlgebraElement trusted(const Mat4& m, SpaceForm k) noexcept {
    return AlgebraElement(TrustedTag{}, m, k);
  }

  static AlgebraElement zero(SpaceForm k) noexcept { return trusted(Mat4::Zero(), k); }

  const Mat4& matrix() const noexcept { return m_; }
  SpaceForm form() const noexcept { return k_; }

  /// V e0, the velocity at e0 of the orbit of e0.
  Vec3 translation_part() const { return m_.block<3, 1>(1, 0); }

 private:
  struct TrustedTag {};
  AlgebraElement(TrustedTag, const Mat4& m, SpaceForm k) noexcept : m_(m), k_(k) {}

  Mat4 m_;
  SpaceForm k_;
};

/// An element of G_k, the identity component of the isometry group of M_k.
class GroupElement {
 public:
  GroupElement(const Mat4& m, SpaceForm k, double tol = kGroupTolerance)
      : m_(m), k_(k) {
    const double r = group_residual(m, k);
    detail::require(r <= tol, "matrix is not in G_" + std::to_string(curvature(k)) +
                                  " (residual " + std::to_string(r) + ")");
    detail::require(in_identity_component(m, k),
                    "matrix is not in the identity component of the isometry group");
  }

  static GroupElement trusted(const Mat4& m, SpaceForm k) noexcept {
    return GroupElement(TrustedTag{}, m, k);
  }

  static GroupElement identity(SpaceForm k) noexcept { return trusted(Mat4::Identity(), k); }

  const Mat4& matrix() const noexcept { return m_; }
  SpaceForm form() const noexcept { return k_; }

  /// Exact inverse from the group structure (J g^T J, or (1 0; -A^T a A^T)).
  GroupElement inverse() const {
    if (k_ == SpaceForm::flat) {
      Mat4 inv = Mat4::Identity();
      const Mat3 at = m_.bottomRightCorner<3, 3>().transpose();
      inv.bottomRightCorner<3, 3>() = at;
      inv.block<3, 1>(1, 0) = -at * m_.block<3, 1>(1, 0);
      return trusted(inv, k_);
    }
    const Mat4 j = metric_matrix(k_);
    return trusted(j * m_.transpose() * j, k_);
  }

  Vec4 operator*(const Vec4& x) const { return m_ * x; }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    detail::require(a.k_ == b.k_, "cannot multiply elements of different groups");
    return trusted(a.m_ * b.m_, a.k_);
  }

 private:
  struct TrustedTag {};
  GroupElement(TrustedTag, const Mat4& m, SpaceForm k) noexcept : m_(m), k_(k) {}

  Mat4 m_;
  SpaceForm k_;
};

/// g^{-1} V g; stays in g_k.
inline AlgebraElement conjugate(const GroupElement& g, const AlgebraElement& v) {
  detail::require(g.form() == v.form(), "group and algebra element have different k");
  return AlgebraElement::trusted(g.inverse().matrix() * v.matrix() * g.matrix(), v.form());
}

/// D^lambda(x) = (0, -k x^T; x, lambda L_x), the generator of the lambda-screw
/// distribution at the identity. Its sub-Riemannian norm is |x|.
inline AlgebraElement screw_generator(const Vec3& x, double lambda, SpaceForm k) {
  return AlgebraElement::trusted(algebra_matrix(x, Vec3(lambda * x), k), k);
}

/// Sub-Riemannian norm of D^lambda(x).
inline double screw_norm(const Vec3& x) { return x.norm(); }

/// Gram-Schmidt of the columns under <,>_k, returning the nearest-in-spirit
/// element of G_k. Used to remove drift after long flows.
inline Mat4 reproject_to_group(const Mat4& m, SpaceForm k) {
  Mat4 out = m;
  if (k == SpaceForm::flat) {
    out.row(0) = Vec4::UnitX().transpose();
    Mat3 b = m.bottomRightCorner<3, 3>();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < i; ++j) b.col(i) -= b.col(j).dot(b.col(i)) * b.col(j);
      b.col(i).normalize();
    }
    out.bottomRightCorner<3, 3>() = b;
    return out;
  }
  const double kk = curvature(k);
  // Column 0 must satisfy <p, p>_k = k.
  out.col(0) /= std::sqrt(inner_k(out.col(0), out.col(0), k) / kk);
  for (int i = 1; i < 4; ++i) {
    Vec4 c = out.col(i);
    c -= (inner_k(out.col(0), c, k) / kk) * out.col(0);
    for (int j = 1; j < i; ++j) c -= inner_k(out.col(j), c, k) * out.col(j);
    out.col(i) = c / std::sqrt(inner_k(c, c, k));
  }
  return out;
}

struct ExpOptions {
  /// Re-project the result onto G_k (off by default so that drift stays visible).
  bool reproject = false;
};

/// exp(t V).
inline GroupElement exp_at(const AlgebraElement& v, double t, ExpOptions options = {}) {
  Mat4 m = expm(Mat4(t * v.matrix()));
  if (options.reproject) m = reproject_to_group(m, v.form());
  return GroupElement::trusted(m, v.form());
}

/// A point of M_k together with a direct orthonormal basis of its tangent
/// space, each basis vector given in ambient coordinates.
struct Frame {
  Vec4 point;
  Basis basis;

  /// Columns (p, b1, b2, b3).
  Mat4 as_matrix() const {
    Mat4 m;
    m.col(0) = point;
    m.rightCols<3>() = basis;
    return m;
  }
};

/// Largest violation of the frame invariants: p on M_k, each b_i tangent, and
/// (b1, b2, b3) orthonormal. Relative to max(1, |p|^2) like group_residual.
inline double frame_residual(const Frame& f, SpaceForm k) {
  const Vec4& p = f.point;
  const double scale = std::max(1.0, p.cwiseAbs().maxCoeff() * p.cwiseAbs().maxCoeff());
  double r = 0.0;
  if (k == SpaceForm::flat) {
    r = std::abs(p(0) - 1.0);
    r = std::max(r, f.basis.row(0).cwiseAbs().maxCoeff());
  } else {
    r = std::abs(inner_k(p, p, k) - curvature(k)) / scale;
    for (int i = 0; i < 3; ++i) {
      r = std::max(r, std::abs(inner_k(f.basis.col(i), p, k)) / scale);
    }
  }
  const Mat4 j = metric_matrix(k);
  const Mat3 gram = f.basis.transpose() * j * f.basis;
  return std::max(r, (gram - Mat3::Identity()).cwiseAbs().maxCoeff() / scale);
}

/// Positive orientation: det(p | b1 b2 b3) > 0. For k = 0 this is the sign
/// of det of the spatial 3x3 block.
inline bool frame_is_direct(const Frame& f) { return f.as_matrix().determinant() > 0.0; }

/// Phi(g) = (g e0, dg_{e0}).
inline Frame phi(const GroupElement& g) {
  return Frame{g.matrix().col(0), g.matrix().rightCols<3>()};
}

/// Inverse of Phi; G_k acts simply transitively on direct orthonormal frames.
inline GroupElement phi_inv(const Frame& f, SpaceForm k, double tol = kGroupTolerance) {
  const double r = frame_residual(f, k);
  detail::require(r <= tol, "not an orthonormal frame of M_" + std::to_string(curvature(k)) +
                                " (residual " + std::to_string(r) + ")");
  detail::require(frame_is_direct(f), "frame is not positively oriented");
  if (k == SpaceForm::hyperbolic) {
    detail::require(f.point(0) > 0.0, "point is not on the upper sheet of the hyperboloid");
  }
  return GroupElement::trusted(f.as_matrix(), k);
}

/// Entrywise sup distance between two frames.
inline double frame_distance(const Frame& a, const Frame& b) {
  return (a.as_matrix() - b.as_matrix()).cwiseAbs().maxCoeff();
}

}  // namespace screwsr
