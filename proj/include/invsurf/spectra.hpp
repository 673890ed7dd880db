#pragma once

// Small dense eigensolvers: implicit-shift QL for symmetric tridiagonal
// matrices and balanced Francis double-shift QR for upper Hessenberg ones.
// Sizes here are m x m with m the number of surfaces, so neither solver is
// blocked; both are deterministic and throw instead of returning partial results.

#include "invsurf/errors.hpp"
#include "invsurf/polycore.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

namespace invsurf {

template <typename Scalar>
using ComplexVec = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar = double>
struct SymTridiagonal {
  Vec<Scalar> diag;
  Vec<Scalar> offdiag;  // size n - 1

  SymTridiagonal() = default;
  SymTridiagonal(Vec<Scalar> d, Vec<Scalar> e) : diag(std::move(d)), offdiag(std::move(e)) {
    if (diag.size() == 0 ? offdiag.size() != 0 : offdiag.size() != diag.size() - 1) {
      throw Error(ErrorKind::ShapeMismatch, "tridiagonal off-diagonal must have n - 1 entries");
    }
  }

  Eigen::Index size() const { return diag.size(); }

  Mat<Scalar> dense() const {
    const Eigen::Index n = size();
    Mat<Scalar> a = Mat<Scalar>::Zero(n, n);
    a.diagonal() = diag;
    if (n > 1) {
      a.diagonal(1) = offdiag;
      a.diagonal(-1) = offdiag;
    }
    return a;
  }
};

template <typename Scalar = double>
class UpperHessenberg {
 public:
  UpperHessenberg() = default;
  explicit UpperHessenberg(Mat<Scalar> entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) throw Error(ErrorKind::ShapeMismatch, "Hessenberg matrix must be square");
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      for (Eigen::Index i = j + 2; i < entries_.rows(); ++i) {
        if (entries_(i, j) != Scalar(0)) {
          throw Error(ErrorKind::InvalidArgument, "nonzero entry below the first subdiagonal");
        }
      }
    }
  }

  const Mat<Scalar>& entries() const { return entries_; }
  Eigen::Index size() const { return entries_.rows(); }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

 private:
  Mat<Scalar> entries_;
};

/// Ascending eigenvalues by implicit QL with Wilkinson shifts.
template <typename Scalar>
Vec<Scalar> eig_sym_tridiag(const SymTridiagonal<Scalar>& t) {
  using std::abs;
  using std::hypot;
  const Eigen::Index n = t.size();
  Vec<Scalar> d = t.diag;
  if (n <= 1) return d;
  Vec<Scalar> e = Vec<Scalar>::Zero(n);
  e.head(n - 1) = t.offdiag;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  constexpr int kMaxIterations = 50;

  for (Eigen::Index l = 0; l < n; ++l) {
    int iterations = 0;
    Eigen::Index m;
    do {
      for (m = l; m < n - 1; ++m) {
        const Scalar dd = abs(d[m]) + abs(d[m + 1]);
        if (abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (iterations++ == kMaxIterations) {
        throw Error(ErrorKind::NoConvergence, "tridiagonal QL did not converge for eigenvalue " + std::to_string(l));
      }
      Scalar g = (d[l + 1] - d[l]) / (Scalar(2) * e[l]);
      Scalar r = hypot(g, Scalar(1));
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      Scalar s(1), c(1), p(0);
      bool underflow = false;
      for (Eigen::Index i = m - 1; i >= l; --i) {
        const Scalar f = s * e[i];
        const Scalar b = c * e[i];
        r = hypot(f, g);
        e[i + 1] = r;
        if (r == Scalar(0)) {
          d[i + 1] -= p;
          e[m] = Scalar(0);
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + Scalar(2) * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = Scalar(0);
    } while (m != l);
  }
  std::sort(d.data(), d.data() + n);
  return d;
}

namespace detail {

// Diagonal similarity scaling by powers of two (no permutations, so the
// Hessenberg zero pattern is preserved and the scaling is exact).
template <typename Scalar>
void balance(Mat<Scalar>& a) {
  using std::abs;
  constexpr Scalar radix = 2;
  const Scalar radix_sq = radix * radix;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      Scalar r(0), c(0);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs(a(j, i));
        r += abs(a(i, j));
      }
      if (c == Scalar(0) || r == Scalar(0)) continue;
      Scalar g = r / radix;
      Scalar f(1);
      const Scalar s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix_sq;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix_sq;
      }
      if ((c + r) / f < Scalar(0.95) * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

template <typename Scalar>
Scalar sign_of(Scalar magnitude, Scalar sign) {
  using std::abs;
  return sign >= Scalar(0) ? abs(magnitude) : -abs(magnitude);
}

}  // namespace detail

/// All eigenvalues of an upper Hessenberg matrix (balancing, then Francis
/// double-shift QR). Complex pairs come out of 2x2 blocks as x +- iy, so they
/// are exact conjugates. Order is unspecified.
template <typename Scalar>
ComplexVec<Scalar> eig_hessenberg(const UpperHessenberg<Scalar>& h) {
  using std::abs;
  using std::sqrt;
  using Complex = std::complex<Scalar>;
  const Eigen::Index n = h.size();
  if (n < 1) throw Error(ErrorKind::EmptyInput, "eigenvalues of an empty matrix");

  Mat<Scalar> a = h.entries();
  detail::balance(a);

  ComplexVec<Scalar> w(n);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  Scalar anorm(0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = std::max<Eigen::Index>(i - 1, 0); j < n; ++j) anorm += abs(a(i, j));

  const long max_total = 30L * static_cast<long>(n);
  long total = 0;
  Eigen::Index nn = n - 1;
  Scalar t(0);
  Scalar p(0), q(0), r(0), s(0), x(0), y(0), z(0), ww(0);
  while (nn >= 0) {
    int its = 0;
    Eigen::Index l;
    do {
      for (l = nn; l > 0; --l) {
        s = abs(a(l - 1, l - 1)) + abs(a(l, l));
        if (s == Scalar(0)) s = anorm;
        if (abs(a(l, l - 1)) <= eps * s) {
          a(l, l - 1) = Scalar(0);
          break;
        }
      }
      x = a(nn, nn);
      if (l == nn) {
        w[nn--] = Complex(x + t, Scalar(0));
      } else {
        y = a(nn - 1, nn - 1);
        ww = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          p = Scalar(0.5) * (y - x);
          q = p * p + ww;
          z = sqrt(abs(q));
          x += t;
          if (q >= Scalar(0)) {
            z = p + detail::sign_of(z, p);
            w[nn - 1] = w[nn] = Complex(x + z, Scalar(0));
            if (z != Scalar(0)) w[nn] = Complex(x - ww / z, Scalar(0));
          } else {
            w[nn] = Complex(x + p, -z);
            w[nn - 1] = std::conj(w[nn]);
          }
          nn -= 2;
        } else {
          if (++total > max_total) {
            throw Error(ErrorKind::NoConvergence, "Hessenberg QR exceeded " + std::to_string(max_total) + " iterations");
          }
          if (its == 10 || its == 20) {
            // Exceptional shift.
            t += x;
            for (Eigen::Index i = 0; i <= nn; ++i) a(i, i) -= x;
            s = abs(a(nn, nn - 1)) + abs(a(nn - 1, nn - 2));
            y = x = Scalar(0.75) * s;
            ww = Scalar(-0.4375) * s * s;
          }
          ++its;
          Eigen::Index m;
          for (m = nn - 2; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - ww) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = abs(p) + abs(q) + abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const Scalar u = abs(a(m, m - 1)) * (abs(q) + abs(r));
            const Scalar v = abs(p) * (abs(a(m - 1, m - 1)) + abs(z) + abs(a(m + 1, m + 1)));
            if (u <= eps * v) break;
          }
          for (Eigen::Index i = m; i < nn - 1; ++i) {
            a(i + 2, i) = Scalar(0);
            if (i != m) a(i + 2, i - 1) = Scalar(0);
          }
          for (Eigen::Index k = m; k < nn; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = Scalar(0);
              if (k + 1 != nn) r = a(k + 2, k - 1);
              if ((x = abs(p) + abs(q) + abs(r)) != Scalar(0)) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            if ((s = detail::sign_of(sqrt(p * p + q * q + r * r), p)) != Scalar(0)) {
              if (k == m) {
                if (l != m) a(k, k - 1) = -a(k, k - 1);
              } else {
                a(k, k - 1) = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (Eigen::Index j = k; j <= nn; ++j) {
                p = a(k, j) + q * a(k + 1, j);
                if (k + 1 != nn) {
                  p += r * a(k + 2, j);
                  a(k + 2, j) -= p * z;
                }
                a(k + 1, j) -= p * y;
                a(k, j) -= p * x;
              }
              const Eigen::Index mmin = nn < k + 3 ? nn : k + 3;
              for (Eigen::Index i = l; i <= mmin; ++i) {
                p = x * a(i, k) + y * a(i, k + 1);
                if (k + 1 != nn) {
                  p += z * a(i, k + 2);
                  a(i, k + 2) -= p * r;
                }
                a(i, k + 1) -= p * q;
                a(i, k) -= p;
              }
            }
          }
        }
      }
    } while (l + 1 < nn);
  }
  return w;
}

/// Closed-form spectrum of the n x n tridiagonal Toeplitz matrix with diagonal
/// a, superdiagonal b and subdiagonal c, indexed j = 1..n.
template <typename Scalar = double>
ComplexVec<Scalar> toeplitz_tridiag_eigs(Scalar a, Scalar b, Scalar c, int n) {
  using std::abs;
  using std::arg;
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Toeplitz size must be positive");
  const std::complex<Scalar> cb(b), cc(c);
  const Scalar radius = std::sqrt(abs(b * c));
  const std::complex<Scalar> phase = std::polar(Scalar(1), (arg(cc) + arg(cb)) / Scalar(2));
  ComplexVec<Scalar> out(n);
  for (int j = 1; j <= n; ++j) {
    const Scalar cosine = std::cos(Scalar(j) * std::numbers::pi_v<Scalar> / Scalar(n + 1));
    out[j - 1] = std::complex<Scalar>(a) + Scalar(2) * radius * phase * cosine;
  }
  return out;
}

/// max(|lambda_1|, |lambda_n|) of the Toeplitz spectrum above.
template <typename Scalar = double>
Scalar toeplitz_spectral_radius(Scalar a, Scalar b, Scalar c, int n) {
  const auto eigs = toeplitz_tridiag_eigs(a, b, c, n);
  return std::max(std::abs(eigs[0]), std::abs(eigs[n - 1]));
}

/// Smallest consecutive difference of an ascending sequence; +inf when fewer
/// than two entries.
template <typename Scalar>
Scalar min_eigen_gap(const Vec<Scalar>& sorted) {
  Scalar gap = std::numeric_limits<Scalar>::infinity();
  for (Eigen::Index i = 1; i < sorted.size(); ++i) gap = std::min(gap, sorted[i] - sorted[i - 1]);
  return gap;
}

}  // namespace invsurf
