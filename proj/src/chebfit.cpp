#include "invsurf/chebfit.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace invsurf {

namespace {

constexpr double kDomainSlack = 1e-12;
constexpr double kRankThreshold = 1e-10;

double clenshaw_strided(const double* c, int n, double u) {
  if (n == 0) return 0.0;
  if (n == 1) return c[0];
  double b1 = 0.0, b2 = 0.0;
  const double two_u = 2.0 * u;
  for (int k = n - 1; k >= 1; --k) {
    const double b0 = c[k] + two_u * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + u * b1 - b2;
}

}  // namespace

DomainBox::DomainBox(std::vector<std::pair<double, double>> bounds) : bounds_(std::move(bounds)) {
  if (bounds_.empty()) throw Error(ErrorKind::InvalidArgument, "domain box needs at least one dimension");
  for (std::size_t k = 0; k < bounds_.size(); ++k) {
    const auto [lo, hi] = bounds_[k];
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
      throw Error(ErrorKind::InvalidArgument, "domain dimension " + std::to_string(k) + " needs finite lo < hi");
    }
  }
}

Eigen::VectorXd DomainBox::map_point(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dims()) {
    throw Error(ErrorKind::DimensionMismatch,
                "point has " + std::to_string(x.size()) + " coordinates, domain has " + std::to_string(dims()));
  }
  Eigen::VectorXd u(dims());
  for (int k = 0; k < dims(); ++k) {
    u[k] = to_unit(k, x[k]);
    if (!(std::abs(u[k]) <= 1.0 + kDomainSlack)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "coordinate " << k << " = " << x[k] << " lies outside [" << lo(k) << ", " << hi(k) << "]";
      throw Error(ErrorKind::PointOutsideDomain, msg.str());
    }
    u[k] = std::clamp(u[k], -1.0, 1.0);
  }
  return u;
}

Truncation Truncation::tensor(std::vector<int> degrees) {
  if (degrees.empty()) throw Error(ErrorKind::InvalidArgument, "tensor truncation needs at least one dimension");
  for (int n : degrees) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "truncation degrees must be >= 0");
  }
  return Truncation(Kind::Tensor, std::move(degrees));
}

Truncation Truncation::total_degree(int dims, int n) {
  if (dims < 1) throw Error(ErrorKind::InvalidArgument, "total-degree truncation needs at least one dimension");
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "truncation degree must be >= 0");
  return Truncation(Kind::TotalDegree, std::vector<int>(static_cast<std::size_t>(dims), n));
}

bool Truncation::admits(const std::vector<int>& index) const {
  if (static_cast<int>(index.size()) != dims()) return false;
  int sum = 0;
  for (int k = 0; k < dims(); ++k) {
    if (index[k] < 0 || index[k] > degrees_[k]) return false;
    sum += index[k];
  }
  return kind_ == Kind::Tensor || sum <= degrees_[0];
}

std::vector<std::vector<int>> Truncation::multi_indices() const {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(dims()), 0);
  // Odometer over the bounding tensor, last dimension fastest, which is
  // lexicographic order; total-degree rows are filtered.
  while (true) {
    if (admits(idx)) out.push_back(idx);
    int k = dims() - 1;
    while (k >= 0 && idx[k] == degrees_[k]) idx[k--] = 0;
    if (k < 0) break;
    ++idx[k];
  }
  return out;
}

std::size_t Truncation::basis_size() const { return multi_indices().size(); }

std::string to_string(Truncation::Kind kind) { return kind == Truncation::Kind::Tensor ? "tensor" : "total"; }

ChebyshevSeriesND::ChebyshevSeriesND(DomainBox domain, Truncation truncation, Eigen::MatrixXi indices,
                                     Eigen::VectorXd coeffs)
    : domain_(std::move(domain)),
      truncation_(std::move(truncation)),
      indices_(std::move(indices)),
      coeffs_(std::move(coeffs)) {
  const int d = domain_.dims();
  if (truncation_.dims() != d) throw Error(ErrorKind::DimensionMismatch, "truncation and domain dimensions differ");
  if (indices_.cols() != d || indices_.rows() != coeffs_.size()) {
    throw Error(ErrorKind::ShapeMismatch, "series needs one index row of length d per coefficient");
  }
  extents_.resize(static_cast<std::size_t>(d));
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) {
    extents_[k] = truncation_.max_degree(k) + 1;
    total *= static_cast<std::size_t>(extents_[k]);
  }
  dense_.assign(total, 0.0);
  std::vector<int> idx(static_cast<std::size_t>(d));
  for (Eigen::Index t = 0; t < indices_.rows(); ++t) {
    std::size_t flat = 0;
    for (int k = 0; k < d; ++k) {
      idx[k] = indices_(t, k);
      flat = flat * static_cast<std::size_t>(extents_[k]) + static_cast<std::size_t>(idx[k]);
    }
    if (!truncation_.admits(idx)) throw Error(ErrorKind::InvalidArgument, "multi-index outside the truncation set");
    dense_[flat] += coeffs_[t];
  }
}

double ChebyshevSeriesND::coeff(const std::vector<int>& index) const {
  if (!truncation_.admits(index)) return 0.0;
  std::size_t flat = 0;
  for (int k = 0; k < dims(); ++k) flat = flat * static_cast<std::size_t>(extents_[k]) + static_cast<std::size_t>(index[k]);
  return dense_[flat];
}

double ChebyshevSeriesND::eval_unit(const Eigen::Ref<const Eigen::VectorXd>& u) const {
  const int d = dims();
  if (d == 1) return clenshaw_strided(dense_.data(), extents_[0], u[0]);
  std::vector<double> work = dense_;
  std::size_t len = work.size();
  for (int k = d - 1; k >= 0; --k) {
    const auto e = static_cast<std::size_t>(extents_[k]);
    const std::size_t outer = len / e;
    for (std::size_t p = 0; p < outer; ++p) work[p] = clenshaw_strided(work.data() + p * e, static_cast<int>(e), u[k]);
    len = outer;
  }
  return work[0];
}

double eval_nd(const ChebyshevSeriesND& s, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return s.eval_unit(s.domain().map_point(x));
}

void chebyshev_values(double u, int n, double* out) {
  out[0] = 1.0;
  if (n >= 1) out[1] = u;
  for (int k = 2; k <= n; ++k) out[k] = 2.0 * u * out[k - 1] - out[k - 2];
}

FitResult fit_lsq(const Eigen::MatrixXd& points, const Eigen::MatrixXd& values, const Truncation& truncation,
                  const DomainBox& domain) {
  const int d = domain.dims();
  if (truncation.dims() != d) throw Error(ErrorKind::DimensionMismatch, "truncation and domain dimensions differ");
  if (points.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch,
                "points have " + std::to_string(points.cols()) + " columns, domain has " + std::to_string(d));
  }
  if (values.rows() != points.rows()) throw Error(ErrorKind::ShapeMismatch, "one value row per point is required");
  const Eigen::Index n_points = points.rows();
  if (n_points == 0) throw Error(ErrorKind::EmptyInput, "no sample points to fit");

  const std::vector<std::vector<int>> basis = truncation.multi_indices();
  const auto n_basis = static_cast<Eigen::Index>(basis.size());
  FitResult result;
  if (n_points < n_basis) {
    throw Error(ErrorKind::RankDeficient, std::to_string(n_points) + " points cannot determine " +
                                              std::to_string(n_basis) + " basis functions");
  }
  if (n_points < 2 * n_basis) {
    result.warnings.push_back("only " + std::to_string(n_points) + " points for " + std::to_string(n_basis) +
                              " basis functions; fewer than 2x oversampling");
  }

  // Design matrix columns prod_k T_{i_k}(u_k), with T values from the recurrence.
  Eigen::MatrixXd design(n_points, n_basis);
  std::vector<std::vector<double>> tvals(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) tvals[k].resize(static_cast<std::size_t>(truncation.max_degree(k) + 1));
  for (Eigen::Index i = 0; i < n_points; ++i) {
    const Eigen::VectorXd u = domain.map_point(points.row(i).transpose());
    for (int k = 0; k < d; ++k) chebyshev_values(u[k], truncation.max_degree(k), tvals[k].data());
    for (Eigen::Index b = 0; b < n_basis; ++b) {
      double v = 1.0;
      for (int k = 0; k < d; ++k) v *= tvals[k][basis[b][k]];
      design(i, b) = v;
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(kRankThreshold);
  if (qr.rank() < n_basis) {
    throw Error(ErrorKind::RankDeficient, "design matrix has numerical rank " + std::to_string(qr.rank()) + " < " +
                                              std::to_string(n_basis) + " basis functions");
  }
  const Eigen::MatrixXd coeffs = qr.solve(values);
  const Eigen::MatrixXd residual = design * coeffs - values;

  Eigen::MatrixXi idx(n_basis, d);
  for (Eigen::Index b = 0; b < n_basis; ++b)
    for (int k = 0; k < d; ++k) idx(b, k) = basis[b][k];
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    result.series.emplace_back(domain, truncation, idx, coeffs.col(c));
    result.max_residual.push_back(residual.col(c).cwiseAbs().maxCoeff());
  }
  return result;
}

ChebyshevSeriesND fit_lsq(const Eigen::MatrixXd& points, const Eigen::VectorXd& values, const Truncation& truncation,
                          const DomainBox& domain, double* max_residual) {
  FitResult r = fit_lsq(points, Eigen::MatrixXd(values), truncation, domain);
  if (max_residual != nullptr) *max_residual = r.max_residual[0];
  return std::move(r.series[0]);
}

Eigen::VectorXd chebyshev_points_1d(int n, const DomainBox& domain) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "interpolation degree must be >= 0");
  if (domain.dims() != 1) throw Error(ErrorKind::DimensionMismatch, "1D interpolation needs a 1D domain");
  Eigen::VectorXd x(n + 1);
  if (n == 0) {
    x[0] = domain.from_unit(0, 0.0);
    return x;
  }
  for (int j = 0; j <= n; ++j) x[j] = domain.from_unit(0, std::cos(std::numbers::pi * j / n));
  return x;
}

ChebyshevSeriesND interpolate_cheb_points_1d(const std::function<double(double)>& f, int n, const DomainBox& domain) {
  const Eigen::VectorXd x = chebyshev_points_1d(n, domain);
  Eigen::VectorXd fx(n + 1);
  for (int j = 0; j <= n; ++j) fx[j] = f(x[j]);

  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  if (n == 0) {
    c[0] = fx[0];
  } else {
    // Discrete cosine relations on the extrema grid; end nodes and end
    // coefficients carry weight 1/2. cos(j k pi / n) is reduced mod 2n first.
    for (int k = 0; k <= n; ++k) {
      double acc = 0.0;
      for (int j = 0; j <= n; ++j) {
        const long phase = (static_cast<long>(j) * k) % (2L * n);
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        acc += w * fx[j] * std::cos(std::numbers::pi * static_cast<double>(phase) / n);
      }
      c[k] = 2.0 * acc / n;
    }
    c[0] *= 0.5;
    c[n] *= 0.5;
  }
  Eigen::MatrixXi idx(n + 1, 1);
  for (int k = 0; k <= n; ++k) idx(k, 0) = k;
  return ChebyshevSeriesND(domain, Truncation::tensor({n}), std::move(idx), std::move(c));
}

}  // namespace invsurf
