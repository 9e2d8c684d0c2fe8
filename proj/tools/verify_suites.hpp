#pragma once

// Property suites behind `screwsr verify`. Each suite samples inputs from a
// seeded generator, records the largest residual of every property and
// compares it with that property's tolerance.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "screwsr/screwsr.hpp"

namespace screwsr::cli {

struct PropertyResult {
  std::string suite;
  std::string property;
  double max_residual = 0.0;
  double tolerance = 0.0;
  long samples = 0;

  bool passed() const { return max_residual < tolerance; }
};

class SuiteContext {
 public:
  SuiteContext(unsigned long seed, std::optional<double> tolerance_override)
      : rng_(seed), override_(tolerance_override) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  SpaceForm any_form() { return space_form_from_curvature(pick(3) - 1); }

  /// Pitch in [-3, 3] admissible for k.
  double pitch(SpaceForm k) {
    const double forbidden = static_cast<double>(curvature(k) * curvature(k));
    for (;;) {
      const double lambda = uniform(-3.0, 3.0);
      if (std::abs(lambda - forbidden) > 1e-3) return lambda;
    }
  }

  Vec3 unit_vector() {
    for (;;) {
      const Vec3 v(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
      const double n = v.norm();
      if (n > 0.1 && n <= 1.0) return v / n;
    }
  }

  Mat3 rotation() { return rot(unit_vector(), uniform(0.0, 2.0 * std::numbers::pi)); }

  PropertyResult& property(const std::string& suite, const std::string& name, double tolerance) {
    results_.push_back(PropertyResult{suite, name, 0.0, override_.value_or(tolerance), 0});
    return results_.back();
  }

  static void record(PropertyResult& p, double residual) {
    ++p.samples;
    // NaN must fail the property.
    if (!(residual <= p.max_residual)) p.max_residual = std::isnan(residual) ? INFINITY : residual;
  }

  const std::deque<PropertyResult>& results() const { return results_; }

 private:
  std::mt19937_64 rng_;
  std::optional<double> override_;
  std::deque<PropertyResult> results_;  // references handed out stay valid
};

inline std::vector<double> time_grid(double t1, int points) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) out.push_back(t1 * i / (points - 1));
  return out;
}

// Phi(gamma_{e1, (tau - lambda) e1 + kappa e3}) against the geometric form.
inline void suite_equivalence(SuiteContext& ctx, int samples) {
  auto& dist = ctx.property("equivalence", "lie_vs_geometric_frame_distance", 1e-9);
  for (int s = 0; s < samples; ++s) {
    const SpaceForm k = ctx.any_form();
    const ScrewConfig cfg(k, ctx.pitch(k));
    const double kappa = ctx.uniform(0.0, 3.0);
    const double tau = ctx.uniform(-3.0, 3.0);
    double worst = 0.0;
    for (const double t : time_grid(10.0, 50)) {
      const Frame a = phi(geodesic_lie(Vec3::UnitX(), Vec3(tau - cfg.lambda(), 0.0, kappa), cfg, t));
      const Frame b = geodesic_geometric(kappa, tau, Mat3::Identity(), cfg, t);
      worst = std::max(worst, frame_distance(a, b));
    }
    SuiteContext::record(dist, worst);
  }
}

// Horizontality and constant speed, including left translations, right
// rotations and reparametrizations.
inline void suite_horizontality(SuiteContext& ctx, int samples) {
  auto& off = ctx.property("horizontality", "off_distribution_residual", 1e-6);
  auto& spd = ctx.property("horizontality", "speed_deviation", 1e-6);
  const auto grid = time_grid(5.0, 11);
  for (int s = 0; s < samples; ++s) {
    const SpaceForm k = ctx.any_form();
    const ScrewConfig cfg(k, ctx.pitch(k));
    const double d = ctx.uniform(0.5, 1.5);
    GeodesicSpec spec = (s % 2 == 0)
                            ? lie_geodesic(ctx.unit_vector() * ctx.uniform(0.5, 1.5),
                                           ctx.unit_vector() * ctx.uniform(0.0, 2.0), cfg)
                            : helix_geodesic(ctx.uniform(0.0, 2.0), ctx.uniform(-2.0, 2.0), cfg, ctx.rotation());
    spec.speed_scale = d;
    const AlgebraElement shift =
        AlgebraElement::trusted(algebra_matrix(ctx.unit_vector(), ctx.unit_vector(), k), k);
    spec = left_translate(exp_at(shift, ctx.uniform(0.0, 1.0)), spec);
    const double expected =
        d * (std::holds_alternative<LieControls>(spec.form) ? std::get<LieControls>(spec.form).x.norm() : 1.0);
    const HorizontalityReport rep = horizontality_check(spec, grid);
    SuiteContext::record(off, rep.max_residual);
    double worst = 0.0;
    for (const auto& sample : rep.samples) worst = std::max(worst, std::abs(sample.speed - expected));
    SuiteContext::record(spd, worst);
  }
}

namespace detail {

using Q = CheckScalar;

inline Vec4T<Q> orbit(const Mat4& v, Q t) { return expm(Mat4T<Q>(t * v.cast<Q>())) * Vec4T<Q>::UnitX(); }

/// Tangential part of X at the point c of M_k.
inline Vec4T<Q> tangential(const Vec4T<Q>& x, const Vec4T<Q>& c, SpaceForm k) {
  if (k == SpaceForm::flat) {
    Vec4T<Q> out = x;
    out(0) = Q(0);
    return out;
  }
  const Q kk = Q(curvature(k));
  const Q xc = kk * x(0) * c(0) + x(1) * c(1) + x(2) * c(2) + x(3) * c(3);
  return x - (xc / kk) * c;
}

/// Covariant acceleration of t -> exp(tV) e0 at time t, by second
/// differences of the ambient curve.
inline Vec4T<Q> covariant_acceleration(const Mat4& v, SpaceForm k, Q t, Q delta) {
  const Vec4T<Q> second = (orbit(v, t + delta) - Q(2) * orbit(v, t) + orbit(v, t - delta)) / (delta * delta);
  return tangential(second, orbit(v, t), k);
}

}  // namespace detail

/// Curvature and torsion of exp(tV) e0 at t = 0 from finite differences:
/// A = nabla_T T, kappa = |A|, kappa^2 tau = det(T, A, nabla_T A).
inline FrenetData numerical_frenet(const AlgebraElement& v, double delta = 1e-3) {
  using detail::Q;
  const SpaceForm k = v.form();
  const Mat4& m = v.matrix();
  const Q h(delta);
  const Vec4T<Q> velocity = (detail::orbit(m, h) - detail::orbit(m, -h)) / (Q(2) * h);
  const Vec4T<Q> accel = detail::covariant_acceleration(m, k, Q(0), h);
  const Vec4T<Q> jerk = detail::tangential(
      (detail::covariant_acceleration(m, k, h, h) - detail::covariant_acceleration(m, k, -h, h)) / (Q(2) * h),
      Vec4T<Q>::UnitX(), k);
  const Vec3 t = velocity.tail<3>().cast<double>();
  const Vec3 a = accel.tail<3>().cast<double>();
  const Vec3 j = jerk.tail<3>().cast<double>();
  FrenetData out;
  out.kappa = a.norm();
  out.tau = out.kappa > 0.0 ? j.dot(t.cross(a)) / (out.kappa * out.kappa) : 0.0;
  return out;
}

inline void suite_frenet(SuiteContext& ctx, int samples) {
  auto& rel = ctx.property("frenet", "generator_vs_finite_difference_relative", 1e-4);
  auto& classical = ctx.property("frenet", "classical_euclidean_helix", 1e-12);
  int accepted = 0;
  while (accepted < samples) {
    const SpaceForm k = ctx.any_form();
    const Vec3 x = ctx.unit_vector();
    const Vec3 z(ctx.uniform(-2, 2), ctx.uniform(-2, 2), ctx.uniform(-2, 2));
    const AlgebraElement v = AlgebraElement::trusted(algebra_matrix(x, z, k), k);
    const FrenetData exact = kappa_tau_from_generator(v);
    // Relative torsion error is meaningless near kappa = 0 or tau = 0.
    if (exact.kappa < 0.2 || std::abs(exact.tau) < 0.05) continue;
    ++accepted;
    const FrenetData fd = numerical_frenet(v);
    SuiteContext::record(rel, std::max(std::abs(fd.kappa - exact.kappa) / exact.kappa,
                                       std::abs(fd.tau - exact.tau) / std::abs(exact.tau)));
  }
  const FrenetData helix = kappa_tau_from_generator(
      conjugated_helix_generator(1.0 / std::sqrt(2.0), 1.0, 1.0, SpaceForm::flat));
  SuiteContext::record(classical, std::max(std::abs(helix.kappa - 0.5), std::abs(helix.tau - 0.5)));
}

/// verify_entry over model spectra, the (2 pi, 0) example and random
/// complex length spectra.
inline void suite_closing(SuiteContext& ctx, int samples) {
  auto& fundamental = ctx.property("closing", "fundamental_equation_residual", 1e-10);
  auto& rot_closure = ctx.property("closing", "rot_closure", 1e-9);
  auto& frame = ctx.property("closing", "frame_closure", 1e-8);
  auto& length = ctx.property("closing", "length_recomputation", 1e-11);
  auto& coprime = ctx.property("closing", "coprime_witnesses", 0.5);

  auto replay = [&](const std::vector<SpectrumLength>& spectrum, const ScrewConfig& cfg) {
    for (const auto& e : flatten(spectrum)) {
      const VerificationReport rep = verify_entry(e, cfg);
      SuiteContext::record(fundamental, rep.fundamental_residual);
      SuiteContext::record(rot_closure, rep.rot_closure);
      SuiteContext::record(frame, rep.frame_closure);
      SuiteContext::record(length, rep.length_residual);
      SuiteContext::record(coprime, rep.primitive ? 0.0 : 1.0);
    }
  };

  replay(model_spectrum(ScrewConfig(SpaceForm::flat, 1.0), EnumerationBudget(20.0)), ScrewConfig(SpaceForm::flat, 1.0));
  replay(model_spectrum(ScrewConfig(SpaceForm::spherical, 0.0), EnumerationBudget(20.0)),
         ScrewConfig(SpaceForm::spherical, 0.0));
  replay(model_spectrum(ScrewConfig(SpaceForm::spherical, 2.5), EnumerationBudget(20.0)),
         ScrewConfig(SpaceForm::spherical, 2.5));
  {
    const ScrewConfig cfg(SpaceForm::flat, 1.0);
    replay(full_spectrum(CLSpectrum{"", {ComplexLength(2.0 * std::numbers::pi, 0.0)}}, cfg, EnumerationBudget(9.0)),
           cfg);
  }
  for (int s = 0; s < samples; ++s) {
    const SpaceForm k = ctx.pick(2) == 0 ? SpaceForm::flat : SpaceForm::hyperbolic;
    const ScrewConfig cfg(k, ctx.pitch(k));
    CLSpectrum cls;
    for (int i = 0; i < 3; ++i) {
      cls.entries.emplace_back(ctx.uniform(0.5, 3.0), ctx.uniform(0.0, 2.0 * std::numbers::pi));
    }
    replay(full_spectrum(cls, cfg, EnumerationBudget(10.0, 16)), cfg);
  }
}

struct SuiteSpec {
  const char* name;
  std::function<void(SuiteContext&)> run;
};

inline std::vector<SuiteSpec> all_suites() {
  return {
      {"equivalence", [](SuiteContext& c) { suite_equivalence(c, 50); }},
      {"horizontality", [](SuiteContext& c) { suite_horizontality(c, 20); }},
      {"frenet", [](SuiteContext& c) { suite_frenet(c, 50); }},
      {"closing", [](SuiteContext& c) { suite_closing(c, 6); }},
  };
}

inline void print_results(std::ostream& os, const std::deque<PropertyResult>& results) {
  for (const auto& r : results) {
    char line[256];
    std::snprintf(line, sizeof line, "%-14s %-42s samples=%-5ld max=%.3e tol=%.1e %s\n", r.suite.c_str(),
                  r.property.c_str(), r.samples, r.max_residual, r.tolerance, r.passed() ? "PASS" : "FAIL");
    os << line;
  }
}

}  // namespace screwsr::cli
