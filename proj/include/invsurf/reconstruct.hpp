#pragma once

// Invariant-surrogate fitting and pointwise reconstruction of sorted surface
// values via Frobenius, Schmeisser or colleague eigenvalues, plus the direct
// baseline that fits the sorted entries themselves.

#include "invsurf/chebfit.hpp"
#include "invsurf/companions.hpp"
#include "invsurf/dataset.hpp"
#include "invsurf/invariants.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace invsurf {

enum class Method { Frobenius, Schmeisser, Colleague, Direct };
enum class Projection { RealPart, SignedMagnitude, Reject };

inline constexpr double kRejectImagTolerance = 1e-8;

std::string to_string(Method m);
std::string to_string(Projection p);
Method parse_method(const std::string& s);          // InvalidArgument on unknown names
Projection parse_projection(const std::string& s);  // real | magnitude | reject

/// Affine map from ESPs to monic-Chebyshev coefficients:
/// b = offset + linear * s, with b = (b_0, ..., b_{m-1}) and s = (s_1, ..., s_m).
struct EspToChebyshevMap {
  int m = 0;
  Eigen::VectorXd offset;
  Eigen::MatrixXd linear;

  Eigen::VectorXd apply(const Eigen::VectorXd& s) const { return offset + linear * s; }
};

EspToChebyshevMap symbolic_b_from_esp(int m);

struct ModelOptions {
  Method method = Method::Colleague;
  Projection projection = Projection::RealPart;
  SchmeisserOptions schmeisser;
  double value_margin = kDefaultValueMargin;
  // Uniform noise added to the per-point ESP samples (sorted values for
  // Direct) before fitting, in transformed value units.
  double invariant_noise = 0.0;
  std::uint64_t noise_seed = 0;
};

struct FittedModel {
  Method method = Method::Colleague;
  Projection projection = Projection::RealPart;
  SchmeisserOptions schmeisser;
  int m = 0;
  DomainBox domain;
  Truncation truncation = Truncation::total_degree(1, 0);
  ValueTransform transform;
  std::vector<ChebyshevSeriesND> series;  // s_1..s_m, b_0..b_{m-1}, or sorted entries
  std::vector<double> fit_residual;
  std::vector<std::string> warnings;

  int dims() const { return domain.dims(); }
};

/// Per-point invariant samples in transformed units: ESPs for the companion
/// methods, the sorted values themselves for Direct.
Eigen::MatrixXd invariant_samples(const Eigen::MatrixXd& working_values, Method method);

FittedModel fit_model(const MultiSurfaceDataset& data, const Truncation& truncation, const ModelOptions& options = {});

struct PointDiagnostics {
  double max_imag = 0.0;                                           // Frobenius / Colleague
  double min_offdiag = std::numeric_limits<double>::quiet_NaN();  // Schmeisser only
};

struct PointResult {
  Eigen::VectorXd values;  // ascending, original units
  PointDiagnostics diagnostics;
};

/// Reconstruction from invariant values already evaluated at a point
/// (transformed units in, original units out).
PointResult reconstruct_from_invariants(const Eigen::VectorXd& invariants, Method method, Projection projection,
                                        const SchmeisserOptions& schmeisser, const ValueTransform& transform);

PointResult reconstruct_point(const FittedModel& model, const Eigen::VectorXd& x);

struct ReconstructionReport {
  Eigen::MatrixXd points;
  Eigen::MatrixXd values;             // NaN rows where the point failed
  std::vector<std::string> failures;  // empty string where the point succeeded
  Eigen::VectorXd max_imag;
  Eigen::VectorXd min_offdiag;

  Eigen::Index size() const { return points.rows(); }
  bool ok(Eigen::Index i) const { return failures[static_cast<std::size_t>(i)].empty(); }
  Eigen::Index failed_count() const;
};

ReconstructionReport reconstruct_grid(const FittedModel& model, const Eigen::MatrixXd& points);

}  // namespace invsurf
