#pragma once

#include "invsurf/reconstruct.hpp"

#include <Eigen/Core>

namespace invsurf {

struct GapWeightedConfig {
  double eps_w = 5e-2;
};

struct Metrics {
  double max_abs = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
  double gap_weighted = 0.0;
  Eigen::Index points = 0;  // rows that entered the statistics
};

/// Errors over all surfaces and points. The gap-weighted error is
/// max over points and pairs i < j of |(a_j - a_i) - (t_j - t_i)| / (eps_w + |t_j - t_i|).
/// Rows with any non-finite approximate value are skipped.
Metrics metric_suite(const Eigen::MatrixXd& truth, const Eigen::MatrixXd& approx, const GapWeightedConfig& cfg = {});

Metrics metric_suite(const MultiSurfaceDataset& truth, const ReconstructionReport& approx,
                     const GapWeightedConfig& cfg = {});

}  // namespace invsurf
