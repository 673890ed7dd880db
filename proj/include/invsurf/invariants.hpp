#pragma once

#include "invsurf/errors.hpp"
#include "invsurf/polycore.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <vector>

namespace invsurf {

/// Elementary symmetric polynomials (s_1, ..., s_m) of m values.
template <typename Scalar = double>
struct EspVector {
  Vec<Scalar> s;

  EspVector() = default;
  explicit EspVector(Vec<Scalar> values) : s(std::move(values)) {}

  Eigen::Index m() const { return s.size(); }
};

/// Sorts the values ascending, then accumulates s_k <- s_k + v * s_{k-1}, which
/// is the coefficient recurrence of prod (y + v_j). The fixed order makes the
/// result independent of the input permutation at bit level.
template <typename Derived>
EspVector<typename Derived::Scalar> esp_from_values(const Eigen::MatrixBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index m = values.size();
  if (m == 0) throw Error(ErrorKind::EmptyInput, "ESPs of an empty value set");

  std::vector<Scalar> sorted(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) sorted[i] = values(i);
  std::sort(sorted.begin(), sorted.end());

  Vec<Scalar> e = Vec<Scalar>::Zero(m + 1);
  e[0] = Scalar(1.0);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = j + 1; k >= 1; --k) e[k] += sorted[j] * e[k - 1];
  }
  return EspVector<Scalar>(e.tail(m));
}

/// Viete: a_{m-k} = (-1)^k s_k.
template <typename Scalar>
MonicPolynomial<Scalar> monic_from_esp(const EspVector<Scalar>& e) {
  const Eigen::Index m = e.m();
  Vec<Scalar> a(m);
  for (Eigen::Index k = 1; k <= m; ++k) a[m - k] = (k % 2 == 0) ? e.s[k - 1] : Scalar(-e.s[k - 1]);
  return MonicPolynomial<Scalar>(std::move(a));
}

template <typename Scalar>
EspVector<Scalar> esp_from_monic(const MonicPolynomial<Scalar>& p) {
  const Eigen::Index m = p.degree();
  Vec<Scalar> s(m);
  for (Eigen::Index k = 1; k <= m; ++k) s[k - 1] = (k % 2 == 0) ? p.coeffs[m - k] : Scalar(-p.coeffs[m - k]);
  return EspVector<Scalar>(std::move(s));
}

/// Affine rescaling of the surface-value axis: forward(y) = (y - shift) / scale.
struct ValueTransform {
  double scale = 1.0;
  double shift = 0.0;

  double forward(double y) const { return (y - shift) / scale; }
  double inverse(double u) const { return u * scale + shift; }

  template <typename Derived>
  Eigen::MatrixXd forward(const Eigen::MatrixBase<Derived>& y) const {
    return ((y.array() - shift) / scale).matrix();
  }
  template <typename Derived>
  Eigen::MatrixXd inverse(const Eigen::MatrixBase<Derived>& u) const {
    return (u.array() * scale + shift).matrix();
  }
};

inline constexpr double kDefaultValueMargin = 0.05;

/// Maps [min, max] of the recorded values onto [-1 + margin, 1 - margin].
/// A degenerate (constant) range falls back to scale 1 centred on the constant.
template <typename Derived>
ValueTransform fit_value_transform(const Eigen::MatrixBase<Derived>& values, double margin = kDefaultValueMargin) {
  if (!(margin > 0.0 && margin < 0.5)) throw Error(ErrorKind::InvalidArgument, "value margin must lie in (0, 0.5)");
  if (values.size() == 0) throw Error(ErrorKind::EmptyInput, "value transform of an empty dataset");
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  ValueTransform t;
  if (!(hi > lo)) {
    t.scale = 1.0;
    t.shift = lo;
    return t;
  }
  t.shift = 0.5 * (hi + lo);
  t.scale = (hi - lo) / (2.0 * (1.0 - margin));
  return t;
}

}  // namespace invsurf
