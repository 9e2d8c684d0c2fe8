#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "screwsr/helix.hpp"

using namespace screwsr;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr SpaceForm kForms[] = {SpaceForm::hyperbolic, SpaceForm::flat, SpaceForm::spherical};

}  // namespace

TEST(Helix, TrigonometryOfSpaceForms) {
  EXPECT_DOUBLE_EQ(sin_k(0.7, SpaceForm::flat), 0.7);
  EXPECT_DOUBLE_EQ(cos_k(0.7, SpaceForm::flat), 1.0);
  for (const SpaceForm k : kForms) {
    const double r = 0.9;
    EXPECT_NEAR(cos_k(r, k) * cos_k(r, k) + curvature(k) * sin_k(r, k) * sin_k(r, k), 1.0, 1e-15);
    EXPECT_NEAR(arcsin_k(sin_k(r, k), k), r, 1e-15);
  }
  EXPECT_THROW(arcsin_k(-0.1, SpaceForm::hyperbolic), PreconditionError);
  EXPECT_THROW(arcsin_k(1.5, SpaceForm::spherical), PreconditionError);
}

TEST(Helix, ComplexLengthAndTypeInvariants) {
  EXPECT_THROW(ComplexLength(0.0, 0.0), PreconditionError);
  EXPECT_THROW(ComplexLength(1.0, 2 * kPi), PreconditionError);
  EXPECT_THROW(ComplexLength(1.0, -0.1), PreconditionError);
  const ComplexLength cl(2 * kPi, 0.0);
  EXPECT_THROW(HelixType(cl, 0, 1), PreconditionError);
  EXPECT_THROW(HelixType(cl, 2, 4), PreconditionError);
  EXPECT_THROW(HelixType(cl, 2, 0), PreconditionError);  // gcd(0, 2) = 2
  EXPECT_NO_THROW(HelixType(cl, 1, 0));
  EXPECT_NO_THROW(HelixType(cl, 3, -2));
  EXPECT_DOUBLE_EQ(HelixType(cl, 1, 1).angular_speed(), 1.0);
}

TEST(Helix, StandardHelixBlockFormMatchesOrbit) {
  for (const SpaceForm k : kForms) {
    const double c = 0.6, mu = 1.3, r = 0.8;
    const AlgebraElement v = standard_helix_generator(c, mu, k);
    for (double t : {0.0, 0.5, 2.0, 7.0}) {
      const Vec4 orbit = exp_at(v, t) * standard_helix_point(r, k);
      const double scale = std::max(1.0, orbit.cwiseAbs().maxCoeff());
      EXPECT_LT((orbit - standard_helix_block_form(c, mu, r, k, t)).cwiseAbs().maxCoeff() / scale, 1e-13);
    }
  }
  EXPECT_THROW(standard_helix_generator(0.0, 1.0, SpaceForm::flat), PreconditionError);
  EXPECT_THROW(standard_helix_generator(0.5, 0.0, SpaceForm::flat), PreconditionError);
}

TEST(Helix, AxisTransvectionMovesStartPoint) {
  for (const SpaceForm k : kForms) {
    const GroupElement g = axis_transvection(1.1, k);
    EXPECT_LT(group_residual(g.matrix(), k), 1e-15);
    EXPECT_LT((g * Vec4::UnitX() - standard_helix_point(1.1, k)).norm(), 1e-15);
    EXPECT_EQ(g * Vec4::Unit(1), Vec4::Unit(1));
    EXPECT_EQ(g * Vec4::Unit(3), Vec4::Unit(3));
  }
}

TEST(Helix, ConjugatedGeneratorMatchesClosedForm) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    const int kk = static_cast<int>(rng() % 3) - 1;
    const double c = 0.1 + 1.5 * u(rng), mu = -3 + 6 * u(rng), r = 0.05 + 2 * u(rng);
    const Mat4 got = conjugated_helix_generator(c, mu, r, space_form_from_curvature(kk)).matrix();
    EXPECT_LT((got - oracle::conjugated_generator(c, mu, r, kk)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Helix, CurvatureTorsionFromAxis) {
  // Euclidean helix c = 1/sqrt 2, mu = 1, r = 1: the classical (cos s, sin s, s).
  const auto [kappa0, tau0] = oracle::classical_helix(1.0, 1.0);
  const double c = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(unit_speed_axis_speed(1.0, 1.0, SpaceForm::flat), c, 1e-15);
  const FrenetData fd = kappa_tau_from_axis(c, 1.0, SpaceForm::flat);
  EXPECT_NEAR(fd.kappa, kappa0, 1e-12);
  EXPECT_NEAR(fd.tau, tau0, 1e-12);
  EXPECT_TRUE(fd.certified);
  // Only continued, not established, on the sphere.
  EXPECT_FALSE(kappa_tau_from_axis(0.5, 3.0, SpaceForm::spherical).certified);
  // mu = 0 in H^3 gives a curve equidistant from a geodesic: torsion 0.
  const double c1 = unit_speed_axis_speed(0.7, 0.0, SpaceForm::hyperbolic);
  const FrenetData hyper = kappa_tau_from_axis(c1, 0.0, SpaceForm::hyperbolic);
  EXPECT_NEAR(hyper.kappa, std::tanh(0.7), 1e-14);
  EXPECT_EQ(hyper.tau, 0.0);
}

TEST(Helix, CurvatureFromAxisAgreesWithRadiusForm) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const SpaceForm k : {SpaceForm::flat, SpaceForm::hyperbolic}) {
    for (int i = 0; i < 30; ++i) {
      const double r = 0.05 + 2 * u(rng), mu = (u(rng) < 0.5 ? -1 : 1) * (0.1 + 3 * u(rng));
      const double c = unit_speed_axis_speed(r, mu, k);
      EXPECT_GT(c, 0.0);
      EXPECT_LT(c, 1.0);
      const double kappa = kappa_tau_from_axis(c, mu, k).kappa;
      const double expected = (1 - c * c) * cot_k(r, k);
      EXPECT_LT(std::abs(kappa - expected) / expected, 1e-10);
    }
  }
}

TEST(Helix, GeneratorAndAxisFormulasAgree) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const SpaceForm k : {SpaceForm::flat, SpaceForm::hyperbolic}) {
    for (int i = 0; i < 30; ++i) {
      const double r = 0.1 + 2 * u(rng), mu = -3 + 6 * u(rng);
      if (k == SpaceForm::flat && std::abs(mu) < 0.05) continue;
      const double c = unit_speed_axis_speed(r, mu, k);
      const FrenetData from_axis = kappa_tau_from_axis(c, mu, k);
      const FrenetData from_gen = kappa_tau_from_generator(conjugated_helix_generator(c, mu, r, k));
      EXPECT_NEAR(from_gen.kappa, from_axis.kappa, 1e-12 * std::max(1.0, from_axis.kappa));
      EXPECT_NEAR(from_gen.tau, from_axis.tau, 1e-11 * std::max(1.0, std::abs(from_axis.tau)));
    }
  }
}

TEST(Helix, KappaTauFromGeneratorRequiresUnitSpeed) {
  const AlgebraElement slow = standard_helix_generator(0.5, 1.0, SpaceForm::flat);
  EXPECT_THROW(kappa_tau_from_generator(slow), PreconditionError);
}

TEST(Helix, GeneratorFromKappaTauRoundTrip) {
  for (const SpaceForm k : kForms) {
    for (const auto& [kappa, tau] : {std::pair{0.5, 0.5}, std::pair{2.0, -1.0}, std::pair{0.0, 0.0}}) {
      const FrenetData fd = kappa_tau_from_generator(generator_from_kappa_tau(kappa, tau, k));
      EXPECT_NEAR(fd.kappa, kappa, 1e-14);
      EXPECT_NEAR(fd.tau, tau, 1e-14);
    }
  }
  EXPECT_THROW(generator_from_kappa_tau(-1.0, 0.0, SpaceForm::flat), PreconditionError);
  EXPECT_THROW(generator_from_kappa_tau(0.0, 1.0, SpaceForm::flat), PreconditionError);
}

TEST(Helix, FrenetFrameObeysFrenetEquations) {
  // F(t) = exp(tZ): F' = F Z, whose rotation block is the Frenet matrix.
  const AlgebraElement z = generator_from_kappa_tau(0.8, -0.4, SpaceForm::hyperbolic);
  const Frame f0 = frenet_frame(z, 0.0);
  EXPECT_EQ(f0.as_matrix(), Mat4::Identity());
  const Mat4& m = z.matrix();
  EXPECT_DOUBLE_EQ(m(2, 1), 0.8);   // T' = kappa N
  EXPECT_DOUBLE_EQ(m(3, 2), -0.4);  // N' = ... + tau B
  EXPECT_THROW(frenet_frame(standard_helix_generator(0.5, 1.0, SpaceForm::flat), 1.0), PreconditionError);
}

TEST(Helix, InitialFrenetBasis) {
  const AlgebraElement z = generator_from_kappa_tau(1.5, 0.3, SpaceForm::spherical);
  EXPECT_LT((initial_frenet_basis(z) - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  // For a geodesic, any orthonormal completion.
  const Mat3 b = initial_frenet_basis(generator_from_kappa_tau(0.0, 0.0, SpaceForm::flat));
  EXPECT_LT((b.transpose() * b - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_GT(b.determinant(), 0.0);
}

TEST(Helix, Circles) {
  const CircleData flat = circle_data(std::sqrt(3.0), SpaceForm::flat);
  EXPECT_NEAR(flat.length, 2 * kPi * std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(flat.kappa, 1 / std::sqrt(3.0), 1e-15);
  const CircleData great = circle_data(kPi / 2, SpaceForm::spherical);
  EXPECT_NEAR(great.length, 2 * kPi, 1e-14);
  EXPECT_NEAR(great.kappa, 0.0, 1e-15);
  // Radius r and pi - r describe the same circle in S^3.
  EXPECT_NEAR(circle_data(2.5, SpaceForm::spherical).kappa, circle_data(kPi - 2.5, SpaceForm::spherical).kappa, 1e-14);
  EXPECT_THROW(circle_data(0.0, SpaceForm::flat), PreconditionError);
  EXPECT_THROW(circle_data(4.0, SpaceForm::spherical), PreconditionError);
}

TEST(Helix, HelixTypeParams) {
  const HelixType ht(ComplexLength(2 * kPi, 0.0), 1, 1);
  const HelixTypeParams p = helix_type_params(ht, 1 / std::sqrt(2.0));
  EXPECT_NEAR(p.length, 2 * kPi * std::sqrt(2.0), 1e-14);
  EXPECT_DOUBLE_EQ(p.angular_speed, 1.0);
  EXPECT_THROW(helix_type_params(ht, 1.0), PreconditionError);
}
