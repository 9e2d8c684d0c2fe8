#pragma once

#include <Eigen/Core>

#include <cmath>

namespace screwsr {

/// Matrix exponential of a small fixed-size square matrix by scaling and
/// squaring with a degree-18 Taylor kernel.
///
/// The argument is scaled by 2^-s so that its 1-norm is at most 1/4; the
/// Taylor remainder is then below 0.25^19/19! ~ 2e-29, under the unit
/// roundoff of both double and x87 long double. Squaring back s times
/// contributes roughly s ulps, so for ||A||_1 <= 50 (s <= 8) the result is
/// accurate to about 1e-14 relative to ||exp(A)||. Works for any Eigen
/// scalar type with ldexp/log2/ceil found by ADL or in std.
template <class Derived>
auto expm(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Derived::RowsAtCompileTime,
                               Derived::ColsAtCompileTime>;
  constexpr int kTaylorDegree = 18;

  using std::ceil;
  using std::ldexp;
  using std::log2;

  const Scalar norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > Scalar(0.25)) {
    squarings = static_cast<int>(ceil(log2(norm / Scalar(0.25))));
  }
  const Matrix scaled = a * ldexp(Scalar(1), -squarings);

  // Horner form: I + A(I + A/2(I + A/3(...))).
  Matrix result = Matrix::Identity(a.rows(), a.cols());
  for (int j = kTaylorDegree; j >= 1; --j) {
    result = Matrix::Identity(a.rows(), a.cols()) +
             (scaled * result) / Scalar(j);
  }
  for (int i = 0; i < squarings; ++i) result = (result * result).eval();
  return result;
}

}  // namespace screwsr
