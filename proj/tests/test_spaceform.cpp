#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "screwsr/spaceform.hpp"

using namespace screwsr;

namespace {

constexpr SpaceForm kForms[] = {SpaceForm::hyperbolic, SpaceForm::flat, SpaceForm::spherical};

Vec4 e(int i) { return Vec4::Unit(i); }

}  // namespace

TEST(SpaceForm, CurvatureLabels) {
  EXPECT_EQ(space_form_from_curvature(-1), SpaceForm::hyperbolic);
  EXPECT_EQ(space_form_from_curvature(0), SpaceForm::flat);
  EXPECT_EQ(space_form_from_curvature(1), SpaceForm::spherical);
  EXPECT_THROW(space_form_from_curvature(2), PreconditionError);
}

TEST(SpaceForm, InnerProduct) {
  const Vec4 x(2, 1, 0, 0);
  EXPECT_DOUBLE_EQ(inner_k(x, x, SpaceForm::hyperbolic), -3.0);
  EXPECT_DOUBLE_EQ(inner_k(x, x, SpaceForm::flat), 1.0);
  EXPECT_DOUBLE_EQ(inner_k(x, x, SpaceForm::spherical), 5.0);
}

TEST(SpaceForm, CrossOperator) {
  const Vec3 v(1, -2, 0.5), w(0.3, 4, -1);
  EXPECT_LT((cross_op(v) * w - v.cross(w)).norm(), 1e-15);
}

TEST(SpaceForm, RotRodrigues) {
  EXPECT_EQ(rot(Vec3::Zero(), 3.0), Mat3::Identity());
  // Quarter turn about e3 maps e1 to e2.
  EXPECT_LT((rot(Vec3::UnitZ(), std::numbers::pi / 2) * Vec3::UnitX() - Vec3::UnitY()).norm(), 1e-15);
  // Rot(v, t) = exp(t L_v).
  const Vec3 v(0.3, -1.1, 0.7);
  Mat4 big = Mat4::Zero();
  big.bottomRightCorner<3, 3>() = cross_op(v);
  const Mat4 reference = oracle::taylor_exp(Mat4(2.5 * big));
  EXPECT_LT((rotation_block(rot(v, 2.5)) - reference).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SpaceForm, AlgebraMembership) {
  for (const SpaceForm k : kForms) {
    const Mat4 m = algebra_matrix(Vec3(1, 2, 3), Vec3(-1, 0.5, 2), k);
    EXPECT_LE(algebra_residual(m, k), 1e-15);
    EXPECT_NO_THROW(AlgebraElement(m, k));
  }
  // A symmetric block is never in g_k.
  Mat4 bad = Mat4::Zero();
  bad(1, 2) = bad(2, 1) = 1.0;
  for (const SpaceForm k : kForms) EXPECT_THROW(AlgebraElement(bad, k), PreconditionError);
  // Translation part with the wrong sign of the first row.
  Mat4 wrong = algebra_matrix(Vec3(1, 0, 0), Vec3::Zero(), SpaceForm::spherical);
  wrong(0, 1) = 1.0;
  EXPECT_THROW(AlgebraElement(wrong, SpaceForm::spherical), PreconditionError);
}

TEST(SpaceForm, ExpMatchesTaylorOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const SpaceForm k : kForms) {
    for (int i = 0; i < 20; ++i) {
      const AlgebraElement v(algebra_matrix(Vec3(u(rng), u(rng), u(rng)), Vec3(u(rng), u(rng), u(rng)), k), k);
      const double t = 2.0 * u(rng);
      const Mat4 got = exp_at(v, t).matrix();
      const Mat4 want = oracle::taylor_exp(Mat4(t * v.matrix()));
      EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-13);
      EXPECT_LE(group_residual(got, k), 1e-13);
    }
  }
}

TEST(SpaceForm, ExpLongFlowsRelativeAccuracy) {
  // Boost in the e0-e1 plane of H^3 and a rotation, both through parameter 50.
  const AlgebraElement boost(algebra_matrix(Vec3::UnitX(), Vec3::Zero(), SpaceForm::hyperbolic),
                             SpaceForm::hyperbolic);
  const Mat4 b = exp_at(boost, 50.0).matrix();
  EXPECT_LT(std::abs(b(0, 0) - std::cosh(50.0)) / std::cosh(50.0), 1e-13);
  EXPECT_LT(std::abs(b(1, 0) - std::sinh(50.0)) / std::sinh(50.0), 1e-13);
  const AlgebraElement spin(algebra_matrix(Vec3::Zero(), Vec3::UnitZ(), SpaceForm::spherical),
                            SpaceForm::spherical);
  const Mat4 r = exp_at(spin, 50.0).matrix();
  EXPECT_LT(std::abs(r(1, 1) - std::cos(50.0)), 1e-13);
  EXPECT_LT(std::abs(r(2, 1) - std::sin(50.0)), 1e-13);
}

TEST(SpaceForm, ExpZeroAndOneParameterGroup) {
  for (const SpaceForm k : kForms) {
    const AlgebraElement v(algebra_matrix(Vec3(0.2, 0.4, -0.1), Vec3(1, 0, 0.3), k), k);
    EXPECT_EQ(exp_at(v, 0.0).matrix(), Mat4::Identity());
    const Mat4 ab = exp_at(v, 0.7).matrix() * exp_at(v, 1.1).matrix();
    EXPECT_LT((ab - exp_at(v, 1.8).matrix()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(SpaceForm, ReprojectionRemovesDrift) {
  for (const SpaceForm k : kForms) {
    const AlgebraElement v(algebra_matrix(Vec3(0.5, -0.2, 0.1), Vec3(0.3, 0.3, 1), k), k);
    Mat4 drifted = exp_at(v, 3.0).matrix();
    drifted(2, 1) += 1e-7;
    EXPECT_GT(group_residual(drifted, k), 1e-8);
    EXPECT_LT(group_residual(reproject_to_group(drifted, k), k), 1e-14);
    EXPECT_LT(group_residual(exp_at(v, 3.0, ExpOptions{true}).matrix(), k), 1e-14);
  }
}

TEST(SpaceForm, GroupInverseAndSignConditions) {
  for (const SpaceForm k : kForms) {
    const AlgebraElement v(algebra_matrix(Vec3(0.5, 1, -0.3), Vec3(0.3, -0.7, 1), k), k);
    const GroupElement g = exp_at(v, 1.3);
    EXPECT_LT(((g * g.inverse()).matrix() - Mat4::Identity()).cwiseAbs().maxCoeff(), 1e-13);
  }
  // Reflection: orthogonal but not direct.
  const Mat4 reflection = Vec4(1, 1, 1, -1).asDiagonal();
  for (const SpaceForm k : kForms) EXPECT_THROW(GroupElement(reflection, k), PreconditionError);
  // Time reversal in the Lorentz group: in O(1,3), det = 1, not orthochronous.
  const Mat4 flip = Vec4(-1, -1, 1, 1).asDiagonal();
  EXPECT_THROW(GroupElement(flip, SpaceForm::hyperbolic), PreconditionError);
  EXPECT_NO_THROW(GroupElement(flip, SpaceForm::spherical));
  // Mixing groups is rejected.
  EXPECT_THROW(GroupElement::identity(SpaceForm::flat) * GroupElement::identity(SpaceForm::spherical),
               PreconditionError);
}

TEST(SpaceForm, ScrewGenerator) {
  const AlgebraElement d = screw_generator(Vec3(0, 2, 0), 0.5, SpaceForm::hyperbolic);
  EXPECT_DOUBLE_EQ(d.matrix()(0, 2), 2.0);  // -k x^T with k = -1
  EXPECT_DOUBLE_EQ(d.matrix()(2, 0), 2.0);
  EXPECT_DOUBLE_EQ(d.matrix()(1, 3), 1.0);  // lambda L_x: (L_x)_{13} = x_2
  EXPECT_DOUBLE_EQ(screw_norm(Vec3(0, 2, 0)), 2.0);
  EXPECT_EQ(screw_generator(Vec3::Zero(), 3.0, SpaceForm::flat).matrix(), Mat4::Zero());
}

TEST(SpaceForm, PhiRoundTrip) {
  for (const SpaceForm k : kForms) {
    EXPECT_EQ(phi(GroupElement::identity(k)).point, e(0));
    const AlgebraElement v(algebra_matrix(Vec3(1, -1, 0.5), Vec3(0.2, 0.1, -0.4), k), k);
    const GroupElement g = exp_at(v, 2.0);
    const Frame f = phi(g);
    EXPECT_LT(frame_residual(f, k), 1e-13);
    EXPECT_LT((phi_inv(f, k).matrix() - g.matrix()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(SpaceForm, PhiInvRejectsBadFrames) {
  // Left-handed frame at e0.
  Frame left{e(0), Basis::Zero()};
  left.basis.col(0) = e(1);
  left.basis.col(1) = e(3);
  left.basis.col(2) = e(2);
  for (const SpaceForm k : kForms) EXPECT_THROW(phi_inv(left, k), PreconditionError);
  // Not orthonormal.
  Frame skew = phi(GroupElement::identity(SpaceForm::spherical));
  skew.basis(2, 0) = 0.1;
  EXPECT_THROW(phi_inv(skew, SpaceForm::spherical), PreconditionError);
  // Lower sheet of the hyperboloid.
  Frame lower{-e(0), Basis::Zero()};
  lower.basis.col(0) = e(1);
  lower.basis.col(1) = e(2);
  lower.basis.col(2) = -e(3);
  EXPECT_THROW(phi_inv(lower, SpaceForm::hyperbolic), PreconditionError);
  // Point off R^3 (homogeneous coordinate must be 1).
  Frame off = phi(GroupElement::identity(SpaceForm::flat));
  off.point(0) = 2.0;
  EXPECT_THROW(phi_inv(off, SpaceForm::flat), PreconditionError);
}
