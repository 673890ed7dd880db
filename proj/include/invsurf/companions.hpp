#pragma once

// Companion matrices for monic polynomials (Frobenius, Schmeisser) and for
// monic Chebyshev series (colleague), together with the perturbation bounds
// used to interpret their eigenvalues.

#include "invsurf/double_double.hpp"
#include "invsurf/errors.hpp"
#include "invsurf/polycore.hpp"
#include "invsurf/spectra.hpp"

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

namespace invsurf {

/// Frobenius companion: ones on the subdiagonal, -a_k in the last column.
template <typename Scalar>
UpperHessenberg<Scalar> build_frobenius(const MonicPolynomial<Scalar>& p) {
  const Eigen::Index n = p.degree();
  if (n < 1) throw Error(ErrorKind::DegreeTooSmall, "Frobenius companion needs degree >= 1");
  Mat<Scalar> a = Mat<Scalar>::Zero(n, n);
  if (n > 1) a.diagonal(-1).setOnes();
  a.col(n - 1) = -p.coeffs;
  return UpperHessenberg<Scalar>(std::move(a));
}

struct SchmeisserOptions {
  bool clamp_negative_offdiag = true;
  double negative_tolerance = 1e-10;
  double zero_remainder_tolerance = 1e-12;  // relative to |y_1|_inf
};

/// Smallest Schmeisser off-diagonal; it vanishes exactly at surface crossings.
struct CrossingDiagnostic {
  double min_offdiag = std::numeric_limits<double>::infinity();
  Eigen::Index offdiag_index = -1;
};

struct SchmeisserResult {
  SymTridiagonal<double> matrix;
  CrossingDiagnostic crossing;
};

namespace detail {

using DD = DoubleDouble;

// Euclidean-division chain y_k = (x - d_k) y_{k+1} - c_k y_{k+2} started from
// y_1 = p, y_2 = p'/n. A vanishing remainder means y_2 = gcd(p, p') up to
// round-off; the matrix then decouples and the chain restarts on y_2.
inline void schmeisser_chain(Vec<DD> y1, const SchmeisserOptions& opts, std::vector<DD>& diag,
                             std::vector<DD>& offdiag) {
  const Eigen::Index n = y1.size() - 1;
  if (n <= 0) return;
  Vec<DD> y2 = poly_derivative(y1) / DD(static_cast<double>(n));
  for (Eigen::Index k = 1; k <= n; ++k) {
    const DivMod<DD> qr = poly_divmod(y1, y2, /*trim=*/false);
    diag.push_back(-qr.quotient[0]);
    if (k == n) break;

    const Vec<DD>& r = qr.remainder;
    const DD y1_norm = max_abs(y1);
    const DD zero_level = DD(opts.zero_remainder_tolerance) * y1_norm;
    DD c = -r[r.size() - 1];

    if (c < DD(0.0) && max_abs(r) > zero_level) {
      if (!opts.clamp_negative_offdiag || c < DD(-opts.negative_tolerance)) {
        throw Error(ErrorKind::NegativeOffdiagonal,
                    "Schmeisser off-diagonal c_" + std::to_string(diag.size()) + " = " +
                        std::to_string(to_double(c)) + " is negative; the polynomial has non-real roots");
      }
      c = DD(0.0);
    }
    if (max_abs(r) <= zero_level || c <= zero_level) {
      offdiag.push_back(DD(0.0));
      schmeisser_chain(std::move(y2), opts, diag, offdiag);
      return;
    }
    offdiag.push_back(c);
    y1 = std::move(y2);
    y2 = r / r[r.size() - 1];
  }
}

}  // namespace detail

/// Symmetric tridiagonal companion with non-negative off-diagonal, built in
/// double-double arithmetic and rounded once at the end.
inline SchmeisserResult build_schmeisser(const MonicPolynomial<double>& p, const SchmeisserOptions& opts = {}) {
  if (opts.negative_tolerance < 0.0 || opts.zero_remainder_tolerance < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "Schmeisser tolerances must be non-negative");
  }
  const Eigen::Index n = p.degree();
  if (n < 1) throw Error(ErrorKind::DegreeTooSmall, "Schmeisser companion needs degree >= 1");

  Vec<detail::DD> y1(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) y1[i] = detail::DD(p.coeffs[i]);
  y1[n] = detail::DD(1.0);

  std::vector<detail::DD> diag, csq;
  detail::schmeisser_chain(std::move(y1), opts, diag, csq);

  SchmeisserResult out;
  Vec<double> d(n), e(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) d[i] = to_double(diag[i]);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    e[i] = std::sqrt(to_double(csq[i]));
    if (e[i] < out.crossing.min_offdiag) {
      out.crossing.min_offdiag = e[i];
      out.crossing.offdiag_index = i;
    }
  }
  out.matrix = SymTridiagonal<double>(std::move(d), std::move(e));
  return out;
}

/// Colleague matrix of T_n + sum_{j<n} b_j T_j: the symmetric three-term
/// recurrence matrix (1/2 off-diagonals, sqrt(2)/2 in the bottom corner pair)
/// minus (1/2) e_1 (b_{n-1}, ..., b_1, sqrt(2) b_0).
template <typename Scalar>
UpperHessenberg<Scalar> build_colleague(const ChebyshevPoly1D<Scalar>& p) {
  const Eigen::Index n = p.degree();
  if (n < 2) throw Error(ErrorKind::DegreeTooSmall, "colleague matrix needs degree >= 2; use -b_0 for degree 1");
  if (p.coeffs[n] != Scalar(1)) {
    throw Error(ErrorKind::InvalidArgument, "colleague matrix needs a monic Chebyshev series; normalize first");
  }
  const Scalar half(0.5);
  const Scalar root_half = std::numbers::sqrt2_v<Scalar> / Scalar(2);
  Mat<Scalar> a = Mat<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const Scalar v = (i + 2 == n) ? root_half : half;
    a(i, i + 1) = v;
    a(i + 1, i) = v;
  }
  for (Eigen::Index j = 0; j + 1 < n; ++j) a(0, j) -= half * p.coeffs[n - 1 - j];
  a(0, n - 1) -= half * std::numbers::sqrt2_v<Scalar> * p.coeffs[0];
  return UpperHessenberg<Scalar>(std::move(a));
}

namespace detail {

inline double root_shift_bound(Vec<double> full, double root, int multiplicity, double eps) {
  if (multiplicity < 1) throw Error(ErrorKind::InvalidArgument, "root multiplicity must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::InvalidArgument, "perturbation must lie in (0, 1)");
  double factorial = 1.0;
  for (int k = 1; k <= multiplicity; ++k) {
    full = poly_derivative(full);
    factorial *= k;
  }
  const double derivative = horner_eval(full, root);
  if (std::abs(derivative) <= tolerance::kLeading) {
    throw Error(ErrorKind::DegenerateDerivative, "derivative of order " + std::to_string(multiplicity) +
                                                     " vanishes at the root");
  }
  const double inv = 1.0 / multiplicity;
  return std::pow(eps, inv) * std::pow(std::abs(derivative / factorial), -inv);
}

}  // namespace detail

/// Leading-order shift of a root of multiplicity ell under a coefficient
/// perturbation eps: eps^(1/ell) |p^(ell)(r) / ell!|^(-1/ell).
inline double root_perturbation_bound(const MonicPolynomial<double>& p, double root, int multiplicity, double eps) {
  return detail::root_shift_bound(p.full(), root, multiplicity, eps);
}

inline double root_perturbation_bound(const ChebyshevPoly1D<double>& p, double root, int multiplicity, double eps) {
  return detail::root_shift_bound(chebyshev_to_monomial(p), root, multiplicity, eps);
}

/// [lambda_j - 3 eps_c, lambda_j + 3 eps_c] for every eigenvalue of T. Any
/// symmetric tridiagonal perturbation with entries bounded by eps_c keeps the
/// j-th eigenvalue inside the j-th interval.
inline std::vector<std::pair<double, double>> schmeisser_eig_interval(const SymTridiagonal<double>& t, double eps_c) {
  if (eps_c < 0.0) throw Error(ErrorKind::InvalidArgument, "eps_c must be non-negative");
  const Vec<double> eigs = eig_sym_tridiag(t);
  const double width = 3.0 * eps_c;
  std::vector<std::pair<double, double>> out;
  out.reserve(eigs.size());
  for (Eigen::Index j = 0; j < eigs.size(); ++j) out.emplace_back(eigs[j] - width, eigs[j] + width);
  return out;
}

/// First-order bound on the Chebyshev coefficient perturbation implied by
/// perturbations of the colleague matrix parts (symmetric part eps_H, e_1
/// direction eps_1, rank-one row eps_c).
inline double colleague_backward_bound(const Eigen::VectorXd& c, double eps_h, double eps_1, double eps_c, int n) {
  if (eps_h < 0.0 || eps_1 < 0.0 || eps_c < 0.0) throw Error(ErrorKind::InvalidArgument, "epsilons must be >= 0");
  const double cn = c.norm();
  const double rn = std::sqrt(static_cast<double>(n));
  return (6.0 * cn * eps_1 + 2.0 * rn * eps_c + (5.0 + 16.0 * rn * cn) * eps_h) * n * n;
}

}  // namespace invsurf
