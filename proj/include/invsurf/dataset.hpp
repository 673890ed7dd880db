#pragma once

#include "invsurf/chebfit.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <string>

namespace invsurf {

/// Sample points in a box with m value-sorted surface values per point.
/// Rows are sorted on construction; the number of rows that arrived unsorted is kept.
class MultiSurfaceDataset {
 public:
  MultiSurfaceDataset() = default;
  MultiSurfaceDataset(Eigen::MatrixXd points, Eigen::MatrixXd values, DomainBox domain, std::string provenance = {});

  const Eigen::MatrixXd& points() const { return points_; }
  const Eigen::MatrixXd& values() const { return values_; }
  const DomainBox& domain() const { return domain_; }
  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  Eigen::Index size() const { return points_.rows(); }
  int dims() const { return static_cast<int>(points_.cols()); }
  int m() const { return static_cast<int>(values_.cols()); }
  std::size_t unsorted_rows() const { return unsorted_rows_; }

 private:
  Eigen::MatrixXd points_;
  Eigen::MatrixXd values_;
  DomainBox domain_;
  std::string provenance_;
  std::size_t unsorted_rows_ = 0;
};

/// Header x1..xd,f1..fm; `# domain: lo hi; lo hi` and `# provenance: ...`
/// comment lines; every number written with 17 significant digits.
void save_csv(const std::filesystem::path& path, const MultiSurfaceDataset& data);

/// Without a domain comment the bounding box of the points is used.
MultiSurfaceDataset load_csv(const std::filesystem::path& path);

/// Points only (no value columns), header x1..xd.
Eigen::MatrixXd load_points_csv(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace invsurf
