#pragma once

#include <cmath>
#include <optional>

namespace screwsr {

struct RationalApprox {
  long numerator = 0;
  long denominator = 1;   // always positive
  double residual = 0.0;  // |denominator * x - numerator|
};

/// Smallest-denominator fraction m/n (n <= max_denominator) with
/// |n x - m| < tol, found among the continued-fraction convergents of x. For
/// tol < 1/(2 max_denominator) every such fraction is a convergent, so
/// nothing is missed. Returns nullopt when no convergent qualifies.
inline std::optional<RationalApprox> detect_rational(double x, long max_denominator, double tol) {
  if (!std::isfinite(x) || max_denominator < 1) return std::nullopt;
  using LD = long double;
  const LD xl = x;
  // h_{i-1}/k_{i-1} and h_{i-2}/k_{i-2}.
  long h1 = 1, k1 = 0, h2 = 0, k2 = 1;
  LD rest = xl;
  for (int iter = 0; iter < 64; ++iter) {
    const LD a = std::floor(rest);
    if (std::abs(a) > LD(1e15)) break;
    const long ai = static_cast<long>(a);
    const long h = ai * h1 + h2;
    const long k = ai * k1 + k2;
    if (k > max_denominator) break;
    const LD residual = std::abs(static_cast<LD>(k) * xl - static_cast<LD>(h));
    if (residual < tol) return RationalApprox{h, k, static_cast<double>(residual)};
    const LD frac = rest - a;
    if (frac == LD(0)) break;
    rest = LD(1) / frac;
    h2 = h1;
    k2 = k1;
    h1 = h;
    k1 = k;
  }
  return std::nullopt;
}

}  // namespace screwsr
