#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "screwsr/spaceform.hpp"

namespace oracle {

using screwsr::Mat3;
using screwsr::Mat4;
using screwsr::SpaceForm;
using screwsr::Vec3;
using screwsr::Vec4;
using Q = boost::multiprecision::float128;
using Vec4Q = Eigen::Matrix<Q, 4, 1>;
using Mat4Q = Eigen::Matrix<Q, 4, 4>;

inline constexpr double kPi = std::numbers::pi;

/// Plain Taylor series in quad precision, no scaling. Only for ||A|| <~ 5.
inline Mat4Q taylor_exp(const Mat4Q& a, int terms = 120) {
  Mat4Q sum = Mat4Q::Identity();
  Mat4Q term = Mat4Q::Identity();
  for (int j = 1; j < terms; ++j) {
    term = (term * a) / Q(j);
    sum += term;
  }
  return sum;
}

inline Mat4 taylor_exp(const Mat4& a) { return taylor_exp(Mat4Q(a.cast<Q>())).cast<double>(); }

/// The conjugated standard-helix generator written out entry by entry.
inline Mat4 conjugated_generator(double c, double mu, double r, int k) {
  double s = 0, co = 0;
  if (k == 1) { s = std::sin(r); co = std::cos(r); }
  if (k == 0) { s = r; co = 1.0; }
  if (k == -1) { s = std::sinh(r); co = std::cosh(r); }
  Mat4 w;
  w << 0, -k * co, 0, -k * mu * s,
       co, 0, -k * s, 0,
       0, k * s, 0, -mu * co,
       mu * s, 0, mu * co, 0;
  return c * w;
}

/// Curvature and torsion of the Euclidean helix (a cos s, a sin s, b s).
inline std::pair<double, double> classical_helix(double a, double b) {
  return {a / (a * a + b * b), b / (a * a + b * b)};
}

// --- Finite-difference Frenet apparatus of t -> exp(tV) e0 -------------------

inline Q inner(const Vec4Q& x, const Vec4Q& y, int k) {
  return Q(k) * x(0) * y(0) + x(1) * y(1) + x(2) * y(2) + x(3) * y(3);
}

/// Project onto the tangent space at p (for k = 0, drop the homogeneous slot).
inline Vec4Q project(const Vec4Q& x, const Vec4Q& p, int k) {
  if (k == 0) {
    Vec4Q y = x;
    y(0) = 0;
    return y;
  }
  return x - (inner(x, p, k) / Q(k)) * p;
}

/// The vector u tangent at p with <u, w>_k = det(p, a, b, w) for every w,
/// i.e. the oriented cross product of a and b in T_p M_k (k = 0: plain cross).
inline Vec4Q cross_at(const Vec4Q& p, const Vec4Q& a, const Vec4Q& b, int k) {
  if (k == 0) {
    Vec4Q u = Vec4Q::Zero();
    u(1) = a(2) * b(3) - a(3) * b(2);
    u(2) = a(3) * b(1) - a(1) * b(3);
    u(3) = a(1) * b(2) - a(2) * b(1);
    return u;
  }
  // Cofactor vector: g_i = det with e_i in the last column; u = J^{-1} g.
  Vec4Q g;
  for (int i = 0; i < 4; ++i) {
    Mat4Q m;
    m.col(0) = p;
    m.col(1) = a;
    m.col(2) = b;
    m.col(3) = Vec4Q::Unit(i);
    g(i) = m.determinant();
  }
  Vec4Q u = g;
  u(0) /= Q(k);
  // Orientation: (p, e1, e2, e3) at e0 is positive, and det(e0, e1, e2, e3) = 1.
  return u;
}

struct Frenet {
  double kappa;
  double tau;
};

/// Builds T, N, B along the curve by differences in quad precision and
/// reads off kappa = <T', N>, tau = -<B', N> (covariant derivatives).
inline Frenet finite_difference_frenet(const Mat4& v, int k, double delta = 1e-3) {
  const Mat4Q vq = v.cast<Q>();
  const Q h(delta);
  auto point = [&](Q t) -> Vec4Q { return taylor_exp(Mat4Q(t * vq), 60) * Vec4Q::UnitX(); };
  auto tangent = [&](Q t) -> Vec4Q {
    Vec4Q d = (point(t + h) - point(t - h)) / (Q(2) * h);
    d = project(d, point(t), k);
    return d / sqrt(inner(d, d, k));
  };
  auto normal_and_kappa = [&](Q t, Q* kappa) -> Vec4Q {
    Vec4Q d = project((tangent(t + h) - tangent(t - h)) / (Q(2) * h), point(t), k);
    const Q n = sqrt(inner(d, d, k));
    if (kappa) *kappa = n;
    return d / n;
  };
  auto binormal = [&](Q t) -> Vec4Q { return cross_at(point(t), tangent(t), normal_and_kappa(t, nullptr), k); };
  Q kappa;
  const Vec4Q n0 = normal_and_kappa(Q(0), &kappa);
  const Vec4Q db = project((binormal(h) - binormal(-h)) / (Q(2) * h), Vec4Q::UnitX(), k);
  return Frenet{static_cast<double>(kappa), static_cast<double>(-inner(db, n0, k))};
}

// --- Brute-force spectra -----------------------------------------------------

/// All 2 pi sqrt((m^2 - n^2) / (lambda^2 - k)) <= cutoff over coprime m, n <= bound
/// whose circle exists, by exhaustive search.
inline std::vector<double> brute_model_lengths(int k, double lambda, double cutoff, int bound = 200) {
  std::vector<double> out;
  const double lk = lambda * lambda - k;
  for (int m = 1; m <= bound; ++m) {
    for (int n = 1; n <= bound; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const double rad = (double(m) * m - double(n) * n) / lk;
      if (!(rad > 0)) continue;
      const double s2 = rad / (double(n) * n);
      if (k == 1 && s2 > 1.0) continue;
      const double len = 2 * kPi * std::sqrt(rad);
      if (len <= cutoff) out.push_back(len);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) <= 1e-9 * a; }),
            out.end());
  return out;
}

}  // namespace oracle
