#pragma once

// Sub-Riemannian geodesics of the lambda-screw structure on G_k = SO(M_k).
//
// Two closed forms are provided. The Lie form is the product of exponentials
//   gamma_{x,y}(t) = exp(t (0, -k x^T; x, L_{lambda x + y})) exp(t diag(0, -L_y)),
// the geometric form is the frame curve (h(t), F(t) Rot((lambda - tau, 0, -kappa), t) O)
// over a unit-speed helix h with Frenet frame F. Both are evaluated in a
// caller-chosen scalar type so that finite-difference checks can run in
// quad precision.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "screwsr/errors.hpp"
#include "screwsr/helix.hpp"
#include "screwsr/spaceform.hpp"

namespace screwsr {

/// Space form plus pitch. The pitch must differ from k^2, the condition for
/// the distribution to be bracket generating (taken literally: lambda = -1 is
/// allowed for k = +-1).
class ScrewConfig {
 public:
  ScrewConfig(SpaceForm k, double lambda) : k_(k), lambda_(lambda) {
    const double k2 = static_cast<double>(curvature(k) * curvature(k));
    detail::require(std::isfinite(lambda), "pitch must be finite");
    detail::require(lambda != k2, "pitch lambda must differ from k^2 = " +
                                      std::to_string(static_cast<int>(k2)) +
                                      " (distribution is not bracket generating)");
  }

  SpaceForm k() const noexcept { return k_; }
  double lambda() const noexcept { return lambda_; }

  /// lambda^2 - k, the denominator of every length formula.
  double lambda2_minus_k() const noexcept { return lambda_ * lambda_ - curvature(k_); }

 private:
  SpaceForm k_;
  double lambda_;
};

/// gamma_{x,y}(t) in scalar type S.
template <class S>
Mat4T<S> geodesic_lie_matrix(const Vec3& x, const Vec3& y, const ScrewConfig& cfg, S t) {
  const Vec3T<S> xs = x.cast<S>();
  const Vec3T<S> ys = y.cast<S>();
  const Vec3T<S> z = S(cfg.lambda()) * xs + ys;
  const Mat4T<S> first = expm(Mat4T<S>(t * algebra_matrix(xs, z, cfg.k())));
  Mat4T<S> vertical = Mat4T<S>::Zero();
  vertical.template bottomRightCorner<3, 3>() = -cross_op(ys);
  const Mat4T<S> second = expm(Mat4T<S>(t * vertical));
  return first * second;
}

/// Sub-Riemannian geodesic through the identity with controls (x, y).
inline GroupElement geodesic_lie(const Vec3& x, const Vec3& y, const ScrewConfig& cfg, double t) {
  return GroupElement::trusted(geodesic_lie_matrix<double>(x, y, cfg, t), cfg.k());
}

/// The geometric form as a group element, in scalar type S:
/// exp(tZ) diag(1, Rot((lambda - tau, 0, -kappa), t) O) with Z from
/// generator_from_kappa_tau.
template <class S>
Mat4T<S> geodesic_geometric_matrix(double kappa, double tau, const Mat3& orientation,
                                   const ScrewConfig& cfg, S t) {
  const Mat4T<S> z = generator_from_kappa_tau(kappa, tau, cfg.k()).matrix().template cast<S>();
  const Vec3T<S> axis(S(cfg.lambda()) - S(tau), S(0), -S(kappa));
  const Mat3T<S> spin = rot(axis, t) * orientation.cast<S>();
  return expm(Mat4T<S>(t * z)) * rotation_block(spin);
}

/// gamma(t) = (h(t), F(t) Rot((lambda - tau, 0, -kappa), t) O) for the helix
/// h through e0 with curvature kappa, torsion tau and F(0) = identity.
inline Frame geodesic_geometric(double kappa, double tau, const Mat3& orientation,
                                const ScrewConfig& cfg, double t) {
  return phi(GroupElement::trusted(
      geodesic_geometric_matrix<double>(kappa, tau, orientation, cfg, t), cfg.k()));
}

struct LieControls {
  Vec3 x;
  Vec3 y;
};

struct HelixControls {
  double kappa = 0.0;
  double tau = 0.0;
  Mat3 orientation = Mat3::Identity();
};

/// A geodesic in either closed form, reparametrized as sigma(t) = gamma(d t)
/// and left-translated by a base point.
struct GeodesicSpec {
  std::variant<LieControls, HelixControls> form;
  ScrewConfig config;
  double speed_scale = 1.0;
  Mat4 basepoint = Mat4::Identity();
};

inline GeodesicSpec lie_geodesic(const Vec3& x, const Vec3& y, const ScrewConfig& cfg) {
  return GeodesicSpec{LieControls{x, y}, cfg};
}

inline GeodesicSpec helix_geodesic(double kappa, double tau, const ScrewConfig& cfg,
                                   const Mat3& orientation = Mat3::Identity()) {
  detail::require(kappa >= 0.0, "helix geodesic: curvature must be non-negative");
  detail::require(kappa != 0.0 || tau == 0.0, "helix geodesic: torsion must vanish when kappa = 0");
  detail::require((orientation.transpose() * orientation - Mat3::Identity()).cwiseAbs().maxCoeff() <=
                          kGroupTolerance &&
                      orientation.determinant() > 0.0,
                  "helix geodesic: orientation must be in SO(3)");
  return GeodesicSpec{HelixControls{kappa, tau, orientation}, cfg};
}

/// Left-translates a geodesic spec by g (g must be in G_k for the same k).
inline GeodesicSpec left_translate(const GroupElement& g, GeodesicSpec spec) {
  detail::require(g.form() == spec.config.k(), "left translation by an element of a different group");
  spec.basepoint = g.matrix() * spec.basepoint;
  return spec;
}

/// sigma(t) in scalar type S.
template <class S>
Mat4T<S> geodesic_matrix(const GeodesicSpec& spec, S t) {
  const S s = S(spec.speed_scale) * t;
  const Mat4T<S> local = std::visit(
      [&](const auto& form) -> Mat4T<S> {
        using Form = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<Form, LieControls>) {
          return geodesic_lie_matrix<S>(form.x, form.y, spec.config, s);
        } else {
          return geodesic_geometric_matrix<S>(form.kappa, form.tau, form.orientation, spec.config, s);
        }
      },
      spec.form);
  return spec.basepoint.cast<S>() * local;
}

inline GroupElement geodesic_at(const GeodesicSpec& spec, double t) {
  return GroupElement::trusted(geodesic_matrix<double>(spec, t), spec.config.k());
}

namespace detail {

template <class S, int R, int C>
const Eigen::Matrix<S, R, C>& path_matrix(const Eigen::Matrix<S, R, C>& m) {
  return m;
}

inline const Mat4& path_matrix(const GroupElement& g) { return g.matrix(); }

}  // namespace detail

/// Central-difference approximation of gamma(t)^{-1} gamma'(t), error O(h^2).
/// The path is called with the scalar type of `t` and may return a matrix of
/// that scalar (or a GroupElement).
template <class Path, class S>
Mat4 left_log_derivative(Path&& path, S t, S h) {
  const auto g = detail::path_matrix(path(t));
  const auto plus = detail::path_matrix(path(t + h));
  const auto minus = detail::path_matrix(path(t - h));
  using M = std::decay_t<decltype(g)>;
  const M inv = g.inverse();
  const M d = (inv * plus - inv * minus) / (S(2) * h);
  return d.template cast<double>();
}

/// Scalar for finite-difference checks. Differencing gamma(t +- h) loses
/// about |gamma|^2 / h in relative accuracy; in H^3 |gamma| grows like
/// e^{|x| t}, which exhausts double and long double well before t = 10.
using CheckScalar = boost::multiprecision::float128;

struct HorizontalitySample {
  double t = 0.0;
  Vec3 control = Vec3::Zero();  // x(t) with gamma^{-1} gamma' = D^lambda(x(t)) + residual
  double residual = 0.0;        // entrywise max of the off-distribution part
  double speed = 0.0;           // |x(t)|
};

struct HorizontalityReport {
  std::vector<HorizontalitySample> samples;
  double max_residual = 0.0;
  double min_speed = 0.0;
  double max_speed = 0.0;
};

/// Splits a left-trivialized velocity A into D^lambda(x) (x read off the
/// first column) and the remainder; returns (x, entrywise max of remainder).
inline std::pair<Vec3, double> split_distribution(const Mat4& a, const ScrewConfig& cfg) {
  const Vec3 x = a.block<3, 1>(1, 0);
  const double residual = (a - screw_generator(x, cfg.lambda(), cfg.k()).matrix()).cwiseAbs().maxCoeff();
  return {x, residual};
}

/// Numerically checks that a geodesic spec is tangent to D^lambda on a time
/// grid, differencing the closed form in CheckScalar with step h.
inline HorizontalityReport horizontality_check(const GeodesicSpec& spec, std::span<const double> times,
                                               double h = 1e-4) {
  HorizontalityReport report;
  report.min_speed = std::numeric_limits<double>::infinity();
  auto path = [&spec](CheckScalar s) { return geodesic_matrix<CheckScalar>(spec, s); };
  for (const double t : times) {
    const Mat4 a = left_log_derivative(path, CheckScalar(t), CheckScalar(h));
    const auto [x, residual] = split_distribution(a, spec.config);
    report.samples.push_back(HorizontalitySample{t, x, residual, x.norm()});
    report.max_residual = std::max(report.max_residual, residual);
    report.min_speed = std::min(report.min_speed, x.norm());
    report.max_speed = std::max(report.max_speed, x.norm());
  }
  if (report.samples.empty()) report.min_speed = 0.0;
  return report;
}

/// Residual above which a curve is reported as not horizontal.
inline constexpr double kHorizontalityTolerance = 1e-6;

/// Constant sub-Riemannian speed |x(t)| of a geodesic, measured numerically.
inline double speed(const GeodesicSpec& spec) {
  const double grid[] = {0.0, 0.5, 1.0, 2.0};
  const HorizontalityReport report = horizontality_check(spec, grid);
  if (report.max_residual > kHorizontalityTolerance) {
    throw PreconditionError("speed: curve is not horizontal (residual " +
                            std::to_string(report.max_residual) + ")");
  }
  double total = 0.0;
  for (const auto& s : report.samples) total += s.speed;
  return total / static_cast<double>(report.samples.size());
}

struct TrajectorySample {
  double t = 0.0;
  Mat4 element = Mat4::Identity();

  Frame frame() const { return Frame{element.col(0), element.rightCols<3>()}; }
};

/// Samples sigma on t0, t0 + dt, ... up to t1 (inclusive within dt/2).
inline std::vector<TrajectorySample> sample_trajectory(const GeodesicSpec& spec, double t0, double t1,
                                                       double dt) {
  detail::require(dt > 0.0, "trajectory: dt must be positive");
  detail::require(t1 >= t0, "trajectory: t1 must not precede t0");
  const auto count = static_cast<long>(std::floor((t1 - t0) / dt + 0.5)) + 1;
  std::vector<TrajectorySample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double t = t0 + static_cast<double>(i) * dt;
    out.push_back(TrajectorySample{t, geodesic_matrix<double>(spec, t)});
  }
  return out;
}

}  // namespace screwsr
