#pragma once

// Sub-Riemannian length spectrum of (SO(M), D^lambda) for M = M_k / Gamma.
//
// Three families of periodic geodesics contribute: lifts of circles in the
// model space, curves over a closed geodesic of M that only spin the frame
// (geodesic fibers), and lifts of periodic helices winding about a closed
// geodesic (helix types). Every entry carries the integer and real data that
// witness it, and verify_entry rebuilds the witness geodesic and checks that it
// actually closes.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "screwsr/errors.hpp"
#include "screwsr/geodesic.hpp"
#include "screwsr/helix.hpp"
#include "screwsr/rational.hpp"
#include "screwsr/spaceform.hpp"

namespace screwsr {

/// Relative tolerance under which two lengths are the same spectrum value.
inline constexpr double kLengthMergeTolerance = 1e-9;

/// Complex length spectrum of a manifold: a list of ell + i theta, repeats
/// allowed. `name` is free-form.
struct CLSpectrum {
  std::string name;
  std::vector<ComplexLength> entries;
};

struct EnumerationBudget {
  double cutoff = 0.0;  // Lambda
  long m_max = 64;
  double rational_tol = 1e-9;
  long max_denominator = 1000000;

  explicit EnumerationBudget(double cutoff_, long m_max_ = 64, double rational_tol_ = 1e-9,
                             long max_denominator_ = 1000000)
      : cutoff(cutoff_), m_max(m_max_), rational_tol(rational_tol_), max_denominator(max_denominator_) {
    detail::require(std::isfinite(cutoff) && cutoff > 0.0, "budget: cutoff must be positive");
    detail::require(m_max > 0, "budget: m_max must be positive");
    detail::require(rational_tol > 0.0, "budget: rational_tol must be positive");
    detail::require(max_denominator > 0, "budget: max_denominator must be positive");
  }
};

enum class Source { circle = 0, geodesic_fiber = 1, helix_type = 2 };

constexpr std::string_view to_string(Source s) noexcept {
  switch (s) {
    case Source::circle: return "circle";
    case Source::geodesic_fiber: return "geodesic_fiber";
    case Source::helix_type: return "helix_type";
  }
  return "?";
}

/// Lift of a circle of radius r in the model space closing after n turns
/// while the frame makes m turns.
struct CircleWitness {
  long m = 0;
  long n = 0;
  double r = 0.0;
};

/// Frame spinning over a closed geodesic of complex length ell + i theta,
/// traversed n times, with n (lambda ell + theta) = 2 pi m.
struct FiberWitness {
  ComplexLength cl;
  long n = 0;
  long m = 0;  // m', may be zero or negative
};

struct HelixWitness {
  ComplexLength cl;
  long q = 0;
  long p = 0;
  long n = 0;
  long m = 0;
  double r = 0.0;
  double c = 0.0;
  double mu = 0.0;
  double kappa = 0.0;
  double tau = 0.0;
  double period = 0.0;  // L = q ell / c, the period of the helix in M
};

using Witness = std::variant<CircleWitness, FiberWitness, HelixWitness>;

struct SpectrumEntry {
  double length = 0.0;
  Witness witness;

  Source source() const noexcept { return static_cast<Source>(witness.index()); }
};

/// A spectrum value with every witness that produced it.
struct SpectrumLength {
  double length = 0.0;  // smallest witness length in the group
  std::vector<SpectrumEntry> witnesses;
};

namespace detail {

using WitnessKey = std::tuple<double, double, long, long, long, long>;

inline WitnessKey witness_key(const Witness& w) {
  return std::visit(
      [](const auto& x) -> WitnessKey {
        using W = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<W, CircleWitness>) {
          return {0.0, 0.0, 0, 0, x.n, x.m};
        } else if constexpr (std::is_same_v<W, FiberWitness>) {
          return {x.cl.ell(), x.cl.theta(), 0, 0, x.n, x.m};
        } else {
          return {x.cl.ell(), x.cl.theta(), x.q, x.p, x.n, x.m};
        }
      },
      w);
}

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace detail

/// Total order used for all output: length, then source, then witness data.
inline bool entry_less(const SpectrumEntry& a, const SpectrumEntry& b) {
  if (a.length != b.length) return a.length < b.length;
  if (a.witness.index() != b.witness.index()) return a.witness.index() < b.witness.index();
  return detail::witness_key(a.witness) < detail::witness_key(b.witness);
}

/// Sorts entries, drops exact duplicates and groups lengths that agree to
/// kLengthMergeTolerance relative (chained from the first member of a group).
inline std::vector<SpectrumLength> merge_entries(std::vector<SpectrumEntry> entries) {
  std::sort(entries.begin(), entries.end(), entry_less);
  entries.erase(std::unique(entries.begin(), entries.end(),
                            [](const SpectrumEntry& a, const SpectrumEntry& b) {
                              return a.length == b.length && a.witness.index() == b.witness.index() &&
                                     detail::witness_key(a.witness) == detail::witness_key(b.witness);
                            }),
                entries.end());
  std::vector<SpectrumLength> out;
  for (auto& e : entries) {
    if (!out.empty() && e.length - out.back().length <= kLengthMergeTolerance * out.back().length) {
      out.back().witnesses.push_back(std::move(e));
    } else {
      out.push_back(SpectrumLength{e.length, {std::move(e)}});
    }
  }
  return out;
}

inline std::vector<SpectrumEntry> flatten(const std::vector<SpectrumLength>& spectrum) {
  std::vector<SpectrumEntry> out;
  for (const auto& s : spectrum) out.insert(out.end(), s.witnesses.begin(), s.witnesses.end());
  return out;
}

inline std::vector<double> lengths_of(const std::vector<SpectrumLength>& spectrum) {
  std::vector<double> out;
  out.reserve(spectrum.size());
  for (const auto& s : spectrum) out.push_back(s.length);
  return out;
}

// ---------------------------------------------------------------------------
// Model space

/// Radius r of the circle whose lift closes with winding numbers (m, n):
/// sin_k^2 r = (m^2 - n^2) / (n^2 (lambda^2 - k)). nullopt if there is none.
inline std::optional<double> circle_radius(long m, long n, const ScrewConfig& cfg) {
  const double lk = cfg.lambda2_minus_k();
  if (lk == 0.0 || m <= 0 || n <= 0) return std::nullopt;
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);
  const double s2 = (md * md - nd * nd) / (nd * nd * lk);
  if (!(s2 > 0.0)) return std::nullopt;
  if (cfg.k() == SpaceForm::spherical && s2 > 1.0) return std::nullopt;
  return arcsin_k(std::sqrt(s2), cfg.k());
}

/// Lengths 2 pi sqrt((m^2 - n^2) / (lambda^2 - k)) <= cutoff over coprime
/// positive (m, n) admitting a circle. Exhaustive: the cutoff bounds
/// |m^2 - n^2|, which bounds both indices. Empty when lambda^2 = k.
inline std::vector<SpectrumLength> model_spectrum(const ScrewConfig& cfg, const EnumerationBudget& budget) {
  std::vector<SpectrumEntry> entries;
  const double lk = cfg.lambda2_minus_k();
  if (lk == 0.0) return {};
  // |m^2 - n^2| <= bound; the larger index minus the smaller is at least 1.
  const double bound = budget.cutoff * budget.cutoff * std::abs(lk) / (detail::kTwoPi * detail::kTwoPi);
  const long limit = static_cast<long>(std::floor(bound)) + 1;
  for (long small = 1; 2 * small + 1 <= limit; ++small) {
    for (long large = small + 1; large * large - small * small <= limit; ++large) {
      if (std::gcd(small, large) != 1) continue;
      // m > n when lambda^2 > k; m < n otherwise (only k = 1, lambda^2 < 1).
      const long m = lk > 0.0 ? large : small;
      const long n = lk > 0.0 ? small : large;
      const auto r = circle_radius(m, n, cfg);
      if (!r) continue;
      const double md = static_cast<double>(m);
      const double nd = static_cast<double>(n);
      const double length = detail::kTwoPi * std::sqrt((md * md - nd * nd) / lk);
      if (length > budget.cutoff) continue;
      entries.push_back(SpectrumEntry{length, CircleWitness{m, n, *r}});
    }
  }
  return merge_entries(std::move(entries));
}

// ---------------------------------------------------------------------------
// Geodesic fibers

/// Length n ell when (lambda ell + theta) / 2 pi is (detected as) m'/n in
/// lowest terms; n = 1 when lambda ell + theta = 0.
inline std::vector<SpectrumEntry> geodesic_fiber_lengths(const ComplexLength& cl, const ScrewConfig& cfg,
                                                         const EnumerationBudget& budget) {
  const double turn = cfg.lambda() * cl.ell() + cl.theta();
  std::optional<RationalApprox> ratio;
  if (turn == 0.0) {
    ratio = RationalApprox{0, 1, 0.0};
  } else {
    ratio = detect_rational(turn / detail::kTwoPi, budget.max_denominator, budget.rational_tol);
  }
  if (!ratio) return {};
  const double length = static_cast<double>(ratio->denominator) * cl.ell();
  if (length > budget.cutoff) return {};
  return {SpectrumEntry{length, FiberWitness{cl, ratio->denominator, ratio->numerator}}};
}

// ---------------------------------------------------------------------------
// Helix types

/// 2 pi p - q (theta + lambda ell), the detuning of a helix type from the
/// screw rate.
inline double helix_detuning(const HelixType& ht, const ScrewConfig& cfg) {
  const ComplexLength& cl = ht.complex_length();
  return detail::kTwoPi * static_cast<double>(ht.p()) -
         static_cast<double>(ht.q()) * (cl.theta() + cfg.lambda() * cl.ell());
}

/// Relative margin on the (n, m) gate. Tuples on the boundary give c = 1 and
/// r = 0 (the helix collapses onto its axis); rounding can push them either way.
inline constexpr double kGateMargin = 1e-9;

/// Gate on (n, m): 4 pi^2 m^2 > n^2 (2 pi p - (theta + lambda ell) q)^2.
inline bool helix_gate(const HelixType& ht, long n, long m, const ScrewConfig& cfg) {
  const double x = helix_detuning(ht, cfg);
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double lhs = 4.0 * std::numbers::pi * std::numbers::pi * md * md;
  return lhs - nd * nd * x * x > kGateMargin * lhs;
}

/// The same gate written in terms of the helix: 2 pi m > n q ell |mu - lambda|.
inline bool helix_gate_via_mu(const HelixType& ht, long n, long m, const ScrewConfig& cfg) {
  const double q_ell = static_cast<double>(ht.q()) * ht.complex_length().ell();
  const double lhs = detail::kTwoPi * static_cast<double>(m);
  const double rhs = static_cast<double>(n) * q_ell * std::abs(ht.angular_speed() - cfg.lambda());
  return lhs * lhs - rhs * rhs > kGateMargin * lhs * lhs;
}

/// Closed-form length of the (n, m) geodesic over a helix type:
/// sqrt([4 pi^2 m^2 + n^2 (ell^2 (lambda^2 - k) q^2 - X^2)] / (lambda^2 - k)).
inline double helix_length_formula(const HelixType& ht, long n, long m, const ScrewConfig& cfg) {
  const double lk = cfg.lambda2_minus_k();
  const double x = helix_detuning(ht, cfg);
  const double ell = ht.complex_length().ell();
  const double qd = static_cast<double>(ht.q());
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double num = 4.0 * std::numbers::pi * std::numbers::pi * md * md + nd * nd * (ell * ell * lk * qd * qd - x * x);
  return std::sqrt(num / lk);
}

/// Axis speed c: c^2 = (lambda^2 - k) / ((2 pi m / (q ell n))^2 + lambda^2 - k - (mu - lambda)^2).
inline double helix_axis_speed(const HelixType& ht, long n, long m, const ScrewConfig& cfg) {
  const double lk = cfg.lambda2_minus_k();
  const double a = detail::kTwoPi * static_cast<double>(m) /
                   (static_cast<double>(ht.q()) * ht.complex_length().ell() * static_cast<double>(n));
  const double dmu = ht.angular_speed() - cfg.lambda();
  return std::sqrt(lk / (a * a + lk - dmu * dmu));
}

/// sin_k^2 r from the closed-form radius formula:
/// [4 pi^2 m^2 - n^2 X^2] / [n^2 (lambda^2 - k) ((2 pi p - q theta)^2 - k ell^2 q^2)].
/// nullopt when the denominator vanishes (mu = 0 in flat space: no helix).
inline std::optional<double> helix_radius_sin2(const HelixType& ht, long n, long m, const ScrewConfig& cfg) {
  const double lk = cfg.lambda2_minus_k();
  const double x = helix_detuning(ht, cfg);
  const ComplexLength& cl = ht.complex_length();
  const double qd = static_cast<double>(ht.q());
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double y = detail::kTwoPi * static_cast<double>(ht.p()) - qd * cl.theta();
  const double den = nd * nd * lk * (y * y - curvature(cfg.k()) * cl.ell() * cl.ell() * qd * qd);
  if (!(den > 0.0)) return std::nullopt;
  return (4.0 * std::numbers::pi * std::numbers::pi * md * md - nd * nd * x * x) / den;
}

/// The witness for (n, m) over a helix type, or nullopt if the gate fails or
/// the helix degenerates. Throws VerificationError when the radius formula
/// and the unit-speed relation disagree, or when the length formula and
/// n q ell / c disagree, beyond 1e-9 relative.
inline std::optional<SpectrumEntry> helix_candidate(const HelixType& ht, long n, long m, const ScrewConfig& cfg) {
  detail::require(cfg.k() != SpaceForm::spherical, "helix types are defined for flat and hyperbolic manifolds only");
  if (!helix_gate(ht, n, m, cfg)) return std::nullopt;
  const auto s2 = helix_radius_sin2(ht, n, m, cfg);
  if (!s2 || !(*s2 > 0.0)) return std::nullopt;
  const double length = helix_length_formula(ht, n, m, cfg);
  const double c = helix_axis_speed(ht, n, m, cfg);
  const double mu = ht.angular_speed();
  const double r = arcsin_k(std::sqrt(*s2), cfg.k());

  auto describe = [&] {
    std::ostringstream os;
    os.precision(17);
    os << "helix type (ell=" << ht.complex_length().ell() << ", theta=" << ht.complex_length().theta()
       << ", q=" << ht.q() << ", p=" << ht.p() << "), (n, m) = (" << n << ", " << m << ")";
    return os.str();
  };
  const double c_from_radius = unit_speed_axis_speed(r, mu, cfg.k());
  if (std::abs(c_from_radius - c) > 1e-9 * c) {
    std::ostringstream os;
    os.precision(17);
    os << describe() << ": radius formula gives c = " << c_from_radius << " but the axis-speed relation gives "
       << c;
    throw VerificationError(os.str());
  }
  const FrenetData fd = kappa_tau_from_axis(c, mu, cfg.k());
  const double period = static_cast<double>(ht.q()) * ht.complex_length().ell() / c;
  const double via_period = static_cast<double>(n) * period;
  if (std::abs(via_period - length) > 1e-9 * length) {
    std::ostringstream os;
    os.precision(17);
    os << describe() << ": length formula gives " << length << " but n q ell / c = " << via_period;
    throw VerificationError(os.str());
  }
  return SpectrumEntry{length, HelixWitness{ht.complex_length(), ht.q(), ht.p(), n, m, r, c, mu, fd.kappa, fd.tau,
                                            period}};
}

/// Integer range of p with |2 pi p - q (theta + lambda ell)| < 2 pi m / n.
inline std::pair<long, long> helix_p_range(const ComplexLength& cl, long q, long n, long m, const ScrewConfig& cfg) {
  const double centre = static_cast<double>(q) * (cl.theta() + cfg.lambda() * cl.ell()) / detail::kTwoPi;
  const double half = static_cast<double>(m) / static_cast<double>(n);
  return {static_cast<long>(std::floor(centre - half)), static_cast<long>(std::ceil(centre + half))};
}

/// All (n, m) for one helix type with m <= m_max and length <= cutoff.
inline std::vector<SpectrumEntry> helix_type_lengths(const HelixType& ht, const ScrewConfig& cfg,
                                                     const EnumerationBudget& budget) {
  detail::require(cfg.k() != SpaceForm::spherical, "helix types are defined for flat and hyperbolic manifolds only");
  std::vector<SpectrumEntry> out;
  const double q_ell = static_cast<double>(ht.q()) * ht.complex_length().ell();
  // length = n q ell / c > n q ell.
  for (long n = 1; static_cast<double>(n) * q_ell < budget.cutoff; ++n) {
    for (long m = 1; m <= budget.m_max; ++m) {
      if (std::gcd(n, m) != 1) continue;
      auto e = helix_candidate(ht, n, m, cfg);
      if (e && e->length <= budget.cutoff) out.push_back(std::move(*e));
    }
  }
  std::sort(out.begin(), out.end(), entry_less);
  return out;
}

/// Union of the model spectrum, the geodesic-fiber lengths and the helix-type
/// lengths over every complex length in `cls`. Repeated complex lengths are
/// ignored; the result does not depend on the order of `cls`.
inline std::vector<SpectrumLength> full_spectrum(const CLSpectrum& cls, const ScrewConfig& cfg,
                                                 const EnumerationBudget& budget) {
  detail::require(cfg.k() != SpaceForm::spherical,
                  "the spectrum of a quotient is only available for flat and hyperbolic manifolds "
                  "(the spherical case is excluded)");
  std::vector<ComplexLength> unique = cls.entries;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  std::vector<SpectrumEntry> entries = flatten(model_spectrum(cfg, budget));
  for (const ComplexLength& cl : unique) {
    for (auto& e : geodesic_fiber_lengths(cl, cfg, budget)) entries.push_back(std::move(e));
    for (long q = 1; static_cast<double>(q) * cl.ell() < budget.cutoff; ++q) {
      for (long n = 1; static_cast<double>(n * q) * cl.ell() < budget.cutoff; ++n) {
        for (long m = 1; m <= budget.m_max; ++m) {
          if (std::gcd(n, m) != 1) continue;
          const auto [p_lo, p_hi] = helix_p_range(cl, q, n, m, cfg);
          for (long p = p_lo; p <= p_hi; ++p) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            auto e = helix_candidate(HelixType(cl, q, p), n, m, cfg);
            if (e && e->length <= budget.cutoff) entries.push_back(std::move(*e));
          }
        }
      }
    }
  }
  return merge_entries(std::move(entries));
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyTolerances {
  double fundamental = 1e-10;    // |n L sqrt(kappa^2 + (lambda - tau)^2) - 2 m pi|
  double rot_closure = 1e-9;     // |Rot((lambda - tau, 0, -kappa), n L) - I|
  double frame_closure = 1e-8;   // witness geodesic vs its deck image, relative
  double length = 1e-11;         // length recomputed from the witness, relative
  double fiber_rational = 1e-9;  // |n (lambda ell + theta) / 2 pi - m'|
};

struct VerificationReport {
  bool passed = true;
  double fundamental_residual = 0.0;
  double rot_closure = 0.0;
  double frame_closure = 0.0;
  double length_residual = 0.0;
  bool primitive = true;
  std::vector<std::string> failures;
};

namespace detail {

/// diag(R_k(s), R_1(-phi)): translation by s along the e0-e1 geodesic
/// combined with rotation by -phi about it.
inline Mat4 axis_screw(double s, double phi, SpaceForm k) {
  Mat4 d = Mat4::Zero();
  d.topLeftCorner<2, 2>() = planar_rotation(s, k);
  d.bottomRightCorner<2, 2>() = planar_rotation(-phi, SpaceForm::spherical);
  return d;
}

inline double relative_distance(const Mat4& a, const Mat4& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

}  // namespace detail

/// Rebuilds the witness geodesic of an entry in the model space and checks
/// that it closes (for circles) or is mapped to itself by the deck
/// transformation of the closed geodesic it winds about (fibers, helices).
inline VerificationReport verify_entry(const SpectrumEntry& e, const ScrewConfig& cfg,
                                       const VerifyTolerances& tol = {}) {
  VerificationReport rep;
  const SpaceForm k = cfg.k();
  const double lambda = cfg.lambda();
  auto fail = [&rep](std::string what) {
    rep.passed = false;
    rep.failures.push_back(std::move(what));
  };
  auto check = [&](double value, double limit, const char* what) {
    if (!(value < limit)) fail(std::string(what) + " = " + std::to_string(value));
  };

  // Fundamental equation and Rot-closure for a helix (kappa, tau) of period L
  // traversed n times with m frame turns.
  auto closing = [&](double kappa, double tau, double period, long n, long m) {
    const double angular = std::sqrt(kappa * kappa + (lambda - tau) * (lambda - tau));
    const double total = static_cast<double>(n) * period;
    rep.fundamental_residual = std::abs(total * angular - detail::kTwoPi * static_cast<double>(m));
    rep.rot_closure = (rot(Vec3(lambda - tau, 0.0, -kappa), total) - Mat3::Identity()).cwiseAbs().maxCoeff();
    check(rep.fundamental_residual, tol.fundamental, "fundamental equation residual");
    check(rep.rot_closure, tol.rot_closure, "Rot closure");
  };

  std::visit(
      [&](const auto& w) {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, CircleWitness>) {
          rep.primitive = w.m > 0 && w.n > 0 && std::gcd(w.m, w.n) == 1;
          const CircleData circle = circle_data(w.r, k);
          closing(circle.kappa, 0.0, circle.length, w.n, w.m);
          const double md = static_cast<double>(w.m);
          const double nd = static_cast<double>(w.n);
          const double closed_form = detail::kTwoPi * std::sqrt((md * md - nd * nd) / cfg.lambda2_minus_k());
          rep.length_residual = std::max(std::abs(nd * circle.length - e.length),
                                         std::abs(closed_form - e.length)) / e.length;
          // A circle of curvature kappa through e0 tangent to e1 closes in the
          // model space itself.
          const double total = nd * circle.length;
          rep.frame_closure = detail::relative_distance(
              geodesic_geometric_matrix<double>(circle.kappa, 0.0, Mat3::Identity(), cfg, total), Mat4::Identity());
        } else if constexpr (std::is_same_v<W, FiberWitness>) {
          rep.primitive = w.n > 0 && std::gcd(std::abs(w.m), w.n) == 1;
          const double turn = lambda * w.cl.ell() + w.cl.theta();
          rep.fundamental_residual =
              std::abs(static_cast<double>(w.n) * turn / detail::kTwoPi - static_cast<double>(w.m));
          check(rep.fundamental_residual, tol.fiber_rational, "fiber rationality residual");
          const double total = static_cast<double>(w.n) * w.cl.ell();
          rep.rot_closure =
              (rot(Vec3(turn, 0.0, 0.0), static_cast<double>(w.n)) - Mat3::Identity()).cwiseAbs().maxCoeff();
          check(rep.rot_closure, tol.rot_closure, "Rot closure");
          rep.length_residual = std::abs(total - e.length) / e.length;
          const Mat4 end = geodesic_geometric_matrix<double>(0.0, 0.0, Mat3::Identity(), cfg, total);
          const Mat4 deck = detail::axis_screw(total, static_cast<double>(w.n) * w.cl.theta(), k);
          rep.frame_closure = detail::relative_distance(end, deck);
        } else {
          rep.primitive = w.q >= 1 && std::gcd(std::abs(w.p), w.q) == 1 && w.n > 0 && w.m > 0 &&
                          std::gcd(w.n, w.m) == 1;
          closing(w.kappa, w.tau, w.period, w.n, w.m);
          const HelixType ht(w.cl, w.q, w.p);
          rep.length_residual =
              std::max(std::abs(static_cast<double>(w.n) * w.period - e.length),
                       std::abs(helix_length_formula(ht, w.n, w.m, cfg) - e.length)) / e.length;
          // Place the Frenet-normalized witness on the standard helix of
          // radius r about the e0-e1 axis: Gamma(t) = g B gamma(t), with g the
          // transvection to the helix start and B its Frenet basis there.
          const GroupElement g = axis_transvection(w.r, k);
          const AlgebraElement local = conjugated_helix_generator(w.c, w.mu, w.r, k);
          const Mat4 start = g.matrix() * rotation_block(initial_frenet_basis(local));
          const double total = static_cast<double>(w.n) * w.period;
          const Mat4 end = start * geodesic_geometric_matrix<double>(w.kappa, w.tau, Mat3::Identity(), cfg, total);
          const double turns = static_cast<double>(w.n * w.q);
          const Mat4 deck = detail::axis_screw(turns * w.cl.ell(), turns * w.cl.theta(), k);
          rep.frame_closure = detail::relative_distance(end, deck * start);
        }
      },
      e.witness);

  check(rep.frame_closure, tol.frame_closure, "frame closure");
  check(rep.length_residual, tol.length, "length residual");
  if (!rep.primitive) fail("integer witnesses are not coprime");
  return rep;
}

struct CompareReport {
  bool match = true;
  std::size_t size_a = 0;
  std::size_t size_b = 0;
  /// Index of the first disagreement (in both sorted lists) when !match.
  std::size_t index = 0;
  std::optional<double> a_value;
  std::optional<double> b_value;
};

/// Compares two ascending length lists elementwise to `tol` relative.
inline CompareReport compare_spectra(std::span<const double> a, std::span<const double> b, double tol) {
  CompareReport rep;
  rep.size_a = a.size();
  rep.size_b = b.size();
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (std::abs(a[i] - b[i]) > tol * std::max(std::abs(a[i]), std::abs(b[i]))) {
      rep.match = false;
      rep.index = i;
      rep.a_value = a[i];
      rep.b_value = b[i];
      return rep;
    }
  }
  if (a.size() != b.size()) {
    rep.match = false;
    rep.index = common;
    if (common < a.size()) rep.a_value = a[common];
    if (common < b.size()) rep.b_value = b[common];
  }
  return rep;
}

inline CompareReport compare_spectra(const std::vector<SpectrumLength>& a, const std::vector<SpectrumLength>& b,
                                     double tol) {
  const auto la = lengths_of(a);
  const auto lb = lengths_of(b);
  return compare_spectra(la, lb, tol);
}

/// Groups an ascending list of lengths by kLengthMergeTolerance, keeping the
/// first of each group.
inline std::vector<double> distinct_lengths(std::vector<double> lengths) {
  std::sort(lengths.begin(), lengths.end());
  std::vector<double> out;
  for (const double x : lengths) {
    if (out.empty() || x - out.back() > kLengthMergeTolerance * out.back()) out.push_back(x);
  }
  return out;
}

}  // namespace screwsr
