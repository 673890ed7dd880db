#pragma once

// Univariate polynomials in the monomial and Chebyshev bases. All coefficient
// vectors are ascending (constant term first). Everything is templated on the
// scalar so the same code runs in double and in DoubleDouble.

#include "invsurf/double_double.hpp"
#include "invsurf/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>

namespace invsurf {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace tolerance {
inline constexpr double kLeading = 1e-13;
inline constexpr double kTrim = 1e-13;
inline constexpr double kDomain = 1e-12;
}  // namespace tolerance

inline constexpr int kMaxPolyDegree = 64;

namespace detail {

template <typename Scalar>
Scalar scalar_from_u64(std::uint64_t v) {
  if constexpr (std::is_same_v<Scalar, DoubleDouble>) {
    return DoubleDouble::from_u64(v);
  } else {
    return static_cast<Scalar>(v);
  }
}

template <typename Scalar>
Scalar scalar_abs(const Scalar& x) {
  using std::abs;
  return abs(x);
}

template <typename Scalar>
Scalar max_abs(const Vec<Scalar>& v) {
  Scalar m(0.0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Scalar a = scalar_abs(v[i]);
    if (a > m) m = a;
  }
  return m;
}

// Exact Pascal triangle up to kMaxPolyDegree; C(64,32) < 2^64.
inline const std::array<std::array<std::uint64_t, kMaxPolyDegree + 1>, kMaxPolyDegree + 1>& binomials() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kMaxPolyDegree + 1>, kMaxPolyDegree + 1> t{};
    for (int n = 0; n <= kMaxPolyDegree; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

inline void check_degree(Eigen::Index degree) {
  if (degree > kMaxPolyDegree) {
    throw Error(ErrorKind::InvalidArgument, "polynomial degree " + std::to_string(degree) + " exceeds " +
                                                std::to_string(kMaxPolyDegree));
  }
}

}  // namespace detail

/// Monic polynomial y^n + a_{n-1} y^{n-1} + ... + a_0; only a_0..a_{n-1} are stored.
template <typename Scalar = double>
struct MonicPolynomial {
  Vec<Scalar> coeffs;

  MonicPolynomial() = default;
  explicit MonicPolynomial(Vec<Scalar> lower) : coeffs(std::move(lower)) {}

  Eigen::Index degree() const { return coeffs.size(); }

  /// Coefficients including the implicit leading one.
  Vec<Scalar> full() const {
    Vec<Scalar> out(coeffs.size() + 1);
    out.head(coeffs.size()) = coeffs;
    out[coeffs.size()] = Scalar(1.0);
    return out;
  }

  Scalar operator()(const Scalar& y) const {
    Scalar acc(1.0);
    for (Eigen::Index k = coeffs.size() - 1; k >= 0; --k) acc = acc * y + coeffs[k];
    return acc;
  }
};

/// Chebyshev series sum_k b_k T_k(x) on [-1, 1].
template <typename Scalar = double>
struct ChebyshevPoly1D {
  Vec<Scalar> coeffs;

  ChebyshevPoly1D() = default;
  explicit ChebyshevPoly1D(Vec<Scalar> c) : coeffs(std::move(c)) {}

  Eigen::Index degree() const { return coeffs.size() - 1; }
};

template <typename Scalar>
Scalar horner_eval(const Vec<Scalar>& coeffs, const Scalar& x) {
  Scalar acc(0.0);
  for (Eigen::Index k = coeffs.size() - 1; k >= 0; --k) acc = acc * x + coeffs[k];
  return acc;
}

/// Backward Clenshaw recurrence without the domain check.
template <typename Scalar>
Scalar clenshaw_sum(const Vec<Scalar>& c, const Scalar& x) {
  const Eigen::Index n = c.size();
  if (n == 0) return Scalar(0.0);
  if (n == 1) return c[0];
  Scalar b1(0.0), b2(0.0);
  const Scalar two_x = Scalar(2.0) * x;
  for (Eigen::Index k = n - 1; k >= 1; --k) {
    const Scalar b0 = c[k] + two_x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + x * b1 - b2;
}

template <typename Scalar>
Scalar clenshaw_eval(const ChebyshevPoly1D<Scalar>& p, const Scalar& x) {
  if (detail::scalar_abs(x) > Scalar(1.0 + tolerance::kDomain)) {
    throw Error(ErrorKind::DomainViolation, "Chebyshev evaluation outside [-1, 1]");
  }
  return clenshaw_sum(p.coeffs, x);
}

template <typename Scalar>
Vec<Scalar> poly_derivative(const Vec<Scalar>& p) {
  if (p.size() <= 1) return Vec<Scalar>::Zero(1);
  Vec<Scalar> d(p.size() - 1);
  for (Eigen::Index k = 0; k + 1 < p.size(); ++k) d[k] = Scalar(static_cast<double>(k + 1)) * p[k + 1];
  return d;
}

template <typename Scalar>
struct DivMod {
  Vec<Scalar> quotient;
  Vec<Scalar> remainder;
};

/// Euclidean division num = quotient * den + remainder.
///
/// With `trim` set, trailing remainder coefficients at or below
/// kTrim * |num|_inf are dropped (at least one coefficient is kept). Without it
/// the remainder always has exactly deg(den) coefficients, which is what the
/// Schmeisser recurrence needs to read its leading term.
template <typename Scalar>
DivMod<Scalar> poly_divmod(const Vec<Scalar>& num, const Vec<Scalar>& den, bool trim = true) {
  if (num.size() == 0) throw Error(ErrorKind::EmptyInput, "empty numerator");
  Eigen::Index dlen = den.size();
  while (dlen > 0 && detail::scalar_abs(den[dlen - 1]) <= Scalar(tolerance::kLeading)) --dlen;
  if (dlen == 0) throw Error(ErrorKind::ZeroDivisor, "divisor is numerically zero");

  const Scalar lead = den[dlen - 1];
  DivMod<Scalar> out;
  Vec<Scalar> rem = num;
  if (num.size() < dlen) {
    out.quotient = Vec<Scalar>::Zero(1);
  } else {
    const Eigen::Index qlen = num.size() - dlen + 1;
    out.quotient.resize(qlen);
    for (Eigen::Index i = qlen - 1; i >= 0; --i) {
      const Scalar q = rem[i + dlen - 1] / lead;
      out.quotient[i] = q;
      for (Eigen::Index j = 0; j < dlen; ++j) rem[i + j] -= q * den[j];
      rem[i + dlen - 1] = Scalar(0.0);
    }
  }

  const Eigen::Index rlen = std::max<Eigen::Index>(1, std::min<Eigen::Index>(dlen - 1, num.size()));
  out.remainder = dlen == 1 ? Vec<Scalar>(Vec<Scalar>::Zero(1)) : Vec<Scalar>(rem.head(rlen));

  if (trim) {
    const Scalar threshold = Scalar(tolerance::kTrim) * detail::max_abs(num);
    Eigen::Index len = out.remainder.size();
    while (len > 1 && detail::scalar_abs(out.remainder[len - 1]) <= threshold) --len;
    if (len == 1 && detail::scalar_abs(out.remainder[0]) <= threshold) out.remainder[0] = Scalar(0.0);
    out.remainder.conservativeResize(len);
  }
  return out;
}

/// gamma(j, k): coefficient of T_k in the Chebyshev expansion of x^j.
/// Built from exact integer binomials and scaled by a power of two at the end.
template <typename Scalar = double>
Mat<Scalar> monomial_chebyshev_table(int degree) {
  detail::check_degree(degree);
  const auto& binom = detail::binomials();
  Mat<Scalar> gamma = Mat<Scalar>::Zero(degree + 1, degree + 1);
  for (int j = 0; j <= degree; ++j) {
    for (int k = j % 2; k <= j; k += 2) {
      const int exponent = k == 0 ? -j : 1 - j;
      gamma(j, k) = detail::scalar_from_u64<Scalar>(binom[j][(j - k) / 2]) * Scalar(std::ldexp(1.0, exponent));
    }
  }
  return gamma;
}

template <typename Scalar>
ChebyshevPoly1D<Scalar> monomial_to_chebyshev(const Vec<Scalar>& coeffs) {
  if (coeffs.size() == 0) return ChebyshevPoly1D<Scalar>(Vec<Scalar>::Zero(1));
  const int degree = static_cast<int>(coeffs.size()) - 1;
  const Mat<Scalar> gamma = monomial_chebyshev_table<Scalar>(degree);
  Vec<Scalar> out = Vec<Scalar>::Zero(degree + 1);
  for (int j = 0; j <= degree; ++j) {
    for (int k = j % 2; k <= j; k += 2) out[k] += coeffs[j] * gamma(j, k);
  }
  return ChebyshevPoly1D<Scalar>(std::move(out));
}

template <typename Scalar>
Vec<Scalar> chebyshev_to_monomial(const ChebyshevPoly1D<Scalar>& p) {
  const Eigen::Index n = p.coeffs.size();
  if (n == 0) return Vec<Scalar>::Zero(1);
  detail::check_degree(n - 1);
  Vec<Scalar> out = Vec<Scalar>::Zero(n);
  Vec<Scalar> prev = Vec<Scalar>::Zero(n);  // T_{k-1}
  Vec<Scalar> curr = Vec<Scalar>::Zero(n);  // T_k
  curr[0] = Scalar(1.0);
  out += p.coeffs[0] * curr;
  for (Eigen::Index k = 1; k < n; ++k) {
    Vec<Scalar> next = Vec<Scalar>::Zero(n);
    if (k == 1) {
      next[1] = Scalar(1.0);
    } else {
      for (Eigen::Index i = 0; i + 1 < n; ++i) next[i + 1] = Scalar(2.0) * curr[i];
      next -= prev;
    }
    out += p.coeffs[k] * next;
    prev = std::move(curr);
    curr = std::move(next);
  }
  return out;
}

/// Divides through by the leading coefficient so that it is exactly one.
template <typename Scalar>
ChebyshevPoly1D<Scalar> normalize_monic_chebyshev(const ChebyshevPoly1D<Scalar>& p) {
  if (p.coeffs.size() == 0) throw Error(ErrorKind::EmptyInput, "empty Chebyshev series");
  const Eigen::Index n = p.coeffs.size() - 1;
  const Scalar lead = p.coeffs[n];
  if (detail::scalar_abs(lead) <= Scalar(tolerance::kLeading)) {
    throw Error(ErrorKind::DegenerateLeading, "leading Chebyshev coefficient is numerically zero");
  }
  Vec<Scalar> c = p.coeffs / lead;
  c[n] = Scalar(1.0);
  return ChebyshevPoly1D<Scalar>(std::move(c));
}

}  // namespace invsurf
