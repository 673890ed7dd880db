#pragma once

// Multivariate Chebyshev series on a box: least-squares fitting from scattered
// samples, evaluation by nested Clenshaw, and 1D interpolation at
// Chebyshev points of the second kind.

#include "invsurf/errors.hpp"

#include <Eigen/Core>

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace invsurf {

class DomainBox {
 public:
  DomainBox() = default;
  explicit DomainBox(std::vector<std::pair<double, double>> bounds);

  int dims() const { return static_cast<int>(bounds_.size()); }
  double lo(int k) const { return bounds_[k].first; }
  double hi(int k) const { return bounds_[k].second; }
  const std::vector<std::pair<double, double>>& bounds() const { return bounds_; }

  /// Affine map of coordinate k onto [-1, 1].
  double to_unit(int k, double x) const { return (2.0 * x - (lo(k) + hi(k))) / (hi(k) - lo(k)); }
  double from_unit(int k, double u) const { return 0.5 * (lo(k) + hi(k)) + 0.5 * (hi(k) - lo(k)) * u; }

  /// Maps a point to [-1, 1]^d; throws PointOutsideDomain beyond the 1e-12 slack.
  Eigen::VectorXd map_point(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  bool operator==(const DomainBox& other) const { return bounds_ == other.bounds_; }

 private:
  std::vector<std::pair<double, double>> bounds_;
};

class Truncation {
 public:
  enum class Kind { Tensor, TotalDegree };

  static Truncation tensor(std::vector<int> degrees);
  static Truncation total_degree(int dims, int n);

  Kind kind() const { return kind_; }
  int dims() const { return static_cast<int>(degrees_.size()); }
  /// Per-dimension maximum degree (for total degree every entry is n).
  const std::vector<int>& degrees() const { return degrees_; }
  int max_degree(int k) const { return degrees_[k]; }

  bool admits(const std::vector<int>& index) const;
  /// All admissible multi-indices in lexicographic order.
  std::vector<std::vector<int>> multi_indices() const;
  std::size_t basis_size() const;

  bool operator==(const Truncation& other) const { return kind_ == other.kind_ && degrees_ == other.degrees_; }

 private:
  Truncation(Kind kind, std::vector<int> degrees) : kind_(kind), degrees_(std::move(degrees)) {}
  Kind kind_ = Kind::TotalDegree;
  std::vector<int> degrees_;
};

std::string to_string(Truncation::Kind kind);

class ChebyshevSeriesND {
 public:
  ChebyshevSeriesND() = default;
  /// indices: one row per term; every row must be admitted by the truncation.
  ChebyshevSeriesND(DomainBox domain, Truncation truncation, Eigen::MatrixXi indices, Eigen::VectorXd coeffs);

  const DomainBox& domain() const { return domain_; }
  const Truncation& truncation() const { return truncation_; }
  const Eigen::MatrixXi& indices() const { return indices_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  int dims() const { return domain_.dims(); }

  /// Coefficient of the given multi-index (zero when absent).
  double coeff(const std::vector<int>& index) const;

  /// Evaluation at a point already mapped into [-1, 1]^d.
  double eval_unit(const Eigen::Ref<const Eigen::VectorXd>& u) const;

 private:
  DomainBox domain_;
  Truncation truncation_ = Truncation::total_degree(1, 0);
  Eigen::MatrixXi indices_;
  Eigen::VectorXd coeffs_;
  // Dense coefficient tensor, last dimension fastest, consumed by nested Clenshaw.
  std::vector<int> extents_;
  std::vector<double> dense_;
};

double eval_nd(const ChebyshevSeriesND& s, const Eigen::Ref<const Eigen::VectorXd>& x);

struct FitResult {
  std::vector<ChebyshevSeriesND> series;  // one per value column
  std::vector<double> max_residual;       // max |fit - data| over the samples, per column
  std::vector<std::string> warnings;
};

/// Least-squares fit of every column of `values` (N x r) over one shared
/// column-pivoted Householder QR of the N x B design matrix.
FitResult fit_lsq(const Eigen::MatrixXd& points, const Eigen::MatrixXd& values, const Truncation& truncation,
                  const DomainBox& domain);

ChebyshevSeriesND fit_lsq(const Eigen::MatrixXd& points, const Eigen::VectorXd& values, const Truncation& truncation,
                          const DomainBox& domain, double* max_residual = nullptr);

/// Degree-n interpolant of f at the n + 1 points lo + (hi - lo)(1 + cos(j pi / n)) / 2.
ChebyshevSeriesND interpolate_cheb_points_1d(const std::function<double(double)>& f, int n, const DomainBox& domain);

/// The interpolation nodes used by interpolate_cheb_points_1d, in domain units.
Eigen::VectorXd chebyshev_points_1d(int n, const DomainBox& domain);

/// T_0..T_n at u, by the three-term recurrence.
void chebyshev_values(double u, int n, double* out);

}  // namespace invsurf
