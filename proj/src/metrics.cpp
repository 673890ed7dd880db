#include "invsurf/metrics.hpp"

#include <cmath>
#include <limits>

namespace invsurf {

Metrics metric_suite(const Eigen::MatrixXd& truth, const Eigen::MatrixXd& approx, const GapWeightedConfig& cfg) {
  if (!(cfg.eps_w > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps_w must be > 0");
  if (truth.rows() != approx.rows() || truth.cols() != approx.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "truth is " + std::to_string(truth.rows()) + "x" +
                                              std::to_string(truth.cols()) + ", approximation is " +
                                              std::to_string(approx.rows()) + "x" + std::to_string(approx.cols()));
  }
  Metrics out;
  double abs_sum = 0.0, sq_sum = 0.0;
  const Eigen::Index m = truth.cols();
  for (Eigen::Index p = 0; p < truth.rows(); ++p) {
    if (!approx.row(p).allFinite()) continue;
    ++out.points;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double e = std::abs(approx(p, i) - truth(p, i));
      out.max_abs = std::max(out.max_abs, e);
      abs_sum += e;
      sq_sum += e * e;
      for (Eigen::Index j = i + 1; j < m; ++j) {
        const double gap = truth(p, j) - truth(p, i);
        const double err = std::abs((approx(p, j) - approx(p, i)) - gap);
        out.gap_weighted = std::max(out.gap_weighted, err / (cfg.eps_w + std::abs(gap)));
      }
    }
  }
  if (out.points == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.max_abs = out.mae = out.rmse = out.gap_weighted = nan;
    return out;
  }
  const double count = static_cast<double>(out.points * m);
  out.mae = abs_sum / count;
  out.rmse = std::sqrt(sq_sum / count);
  return out;
}

Metrics metric_suite(const MultiSurfaceDataset& truth, const ReconstructionReport& approx, const GapWeightedConfig& cfg) {
  if (truth.size() != approx.size() || (approx.size() > 0 && truth.points() != approx.points)) {
    throw Error(ErrorKind::ShapeMismatch, "truth and reconstruction are on different point sets");
  }
  return metric_suite(truth.values(), approx.values, cfg);
}

}  // namespace invsurf
