#include "invsurf/reconstruct.hpp"

#include "invsurf/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace invsurf {

std::string to_string(Method m) {
  switch (m) {
    case Method::Frobenius: return "frobenius";
    case Method::Schmeisser: return "schmeisser";
    case Method::Colleague: return "colleague";
    case Method::Direct: return "direct";
  }
  return "?";
}

std::string to_string(Projection p) {
  switch (p) {
    case Projection::RealPart: return "real";
    case Projection::SignedMagnitude: return "magnitude";
    case Projection::Reject: return "reject";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  for (Method m : {Method::Frobenius, Method::Schmeisser, Method::Colleague, Method::Direct}) {
    if (s == to_string(m)) return m;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown method '" + s + "'");
}

Projection parse_projection(const std::string& s) {
  for (Projection p : {Projection::RealPart, Projection::SignedMagnitude, Projection::Reject}) {
    if (s == to_string(p)) return p;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown projection '" + s + "'");
}

EspToChebyshevMap symbolic_b_from_esp(int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "surface count must be >= 1");
  // Monic y^m + sum_i (-1)^i s_i y^(m-i), converted row by row with the gamma
  // table and divided by gamma(m, m). All entries are dyadic rationals.
  const Mat<double> gamma = monomial_chebyshev_table<double>(m);
  const double lead = gamma(m, m);
  EspToChebyshevMap map;
  map.m = m;
  map.offset.resize(m);
  map.linear.resize(m, m);
  for (int j = 0; j < m; ++j) {
    map.offset[j] = gamma(m, j) / lead;
    for (int i = 1; i <= m; ++i) map.linear(j, i - 1) = (i % 2 == 0 ? 1.0 : -1.0) * gamma(m - i, j) / lead;
  }
  return map;
}

Eigen::MatrixXd invariant_samples(const Eigen::MatrixXd& working_values, Method method) {
  if (method == Method::Direct) return working_values;
  const Eigen::Index m = working_values.cols();
  Eigen::MatrixXd s(working_values.rows(), m);
  for (Eigen::Index i = 0; i < working_values.rows(); ++i) {
    s.row(i) = esp_from_values(working_values.row(i)).s.transpose();
  }
  return s;
}

namespace {

Eigen::MatrixXd esp_to_chebyshev(const Eigen::MatrixXd& s) {
  const EspToChebyshevMap map = symbolic_b_from_esp(static_cast<int>(s.cols()));
  Eigen::MatrixXd b = s * map.linear.transpose();
  b.rowwise() += map.offset.transpose();
  return b;
}

Eigen::VectorXd project(const ComplexVec<double>& eigs, Projection projection, PointDiagnostics& diag) {
  Eigen::VectorXd out(eigs.size());
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const double im = std::abs(eigs[i].imag());
    diag.max_imag = std::max(diag.max_imag, im);
    switch (projection) {
      case Projection::RealPart:
        out[i] = eigs[i].real();
        break;
      case Projection::SignedMagnitude:
        out[i] = std::copysign(std::abs(eigs[i]), eigs[i].real());
        break;
      case Projection::Reject:
        if (im > kRejectImagTolerance) {
          throw Error(ErrorKind::ComplexRootsRejected,
                      "eigenvalue with imaginary part " + std::to_string(im) + " under projection 'reject'");
        }
        out[i] = eigs[i].real();
        break;
    }
  }
  return out;
}

}  // namespace

FittedModel fit_model(const MultiSurfaceDataset& data, const Truncation& truncation, const ModelOptions& options) {
  if (data.size() == 0) throw Error(ErrorKind::EmptyInput, "cannot fit an empty dataset");
  FittedModel model;
  model.method = options.method;
  model.projection = options.projection;
  model.schmeisser = options.schmeisser;
  model.m = data.m();
  model.domain = data.domain();
  model.truncation = truncation;
  model.transform = fit_value_transform(data.values(), options.value_margin);

  const Eigen::MatrixXd working = model.transform.forward(data.values());
  Eigen::MatrixXd samples = invariant_samples(working, options.method);
  if (options.invariant_noise > 0.0) samples = add_noise(samples, options.invariant_noise, options.noise_seed);
  if (options.method == Method::Colleague) samples = esp_to_chebyshev(samples);

  FitResult fit = fit_lsq(data.points(), samples, truncation, data.domain());
  model.series = std::move(fit.series);
  model.fit_residual = std::move(fit.max_residual);
  model.warnings = std::move(fit.warnings);
  return model;
}

PointResult reconstruct_from_invariants(const Eigen::VectorXd& invariants, Method method, Projection projection,
                                        const SchmeisserOptions& schmeisser, const ValueTransform& transform) {
  const Eigen::Index m = invariants.size();
  if (m < 1) throw Error(ErrorKind::EmptyInput, "no invariants to reconstruct from");
  PointResult result;
  Eigen::VectorXd roots;
  switch (method) {
    case Method::Direct:
      roots = invariants;
      break;
    case Method::Frobenius: {
      const MonicPolynomial<double> p = monic_from_esp(EspVector<double>(invariants));
      roots = project(eig_hessenberg(build_frobenius(p)), projection, result.diagnostics);
      break;
    }
    case Method::Schmeisser: {
      const MonicPolynomial<double> p = monic_from_esp(EspVector<double>(invariants));
      const SchmeisserResult s = build_schmeisser(p, schmeisser);
      roots = eig_sym_tridiag(s.matrix);
      result.diagnostics.min_offdiag = s.crossing.min_offdiag;
      break;
    }
    case Method::Colleague: {
      if (m == 1) {
        roots = -invariants;
        break;
      }
      Vec<double> b(m + 1);
      b.head(m) = invariants;
      b[m] = 1.0;
      roots = project(eig_hessenberg(build_colleague(ChebyshevPoly1D<double>(std::move(b)))), projection,
                      result.diagnostics);
      break;
    }
  }
  std::sort(roots.begin(), roots.end());
  result.values = transform.inverse(roots);
  return result;
}

PointResult reconstruct_point(const FittedModel& model, const Eigen::VectorXd& x) {
  if (model.series.size() != static_cast<std::size_t>(model.m)) {
    throw Error(ErrorKind::ShapeMismatch, "model needs one series per surface");
  }
  const Eigen::VectorXd u = model.domain.map_point(x);
  Eigen::VectorXd inv(model.m);
  for (int j = 0; j < model.m; ++j) inv[j] = model.series[j].eval_unit(u);
  return reconstruct_from_invariants(inv, model.method, model.projection, model.schmeisser, model.transform);
}

Eigen::Index ReconstructionReport::failed_count() const {
  return static_cast<Eigen::Index>(std::count_if(failures.begin(), failures.end(), [](const std::string& f) {
    return !f.empty();
  }));
}

ReconstructionReport reconstruct_grid(const FittedModel& model, const Eigen::MatrixXd& points) {
  if (points.rows() > 0 && points.cols() != model.dims()) {
    throw Error(ErrorKind::DimensionMismatch, "points have " + std::to_string(points.cols()) +
                                                  " coordinates, model has " + std::to_string(model.dims()));
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ReconstructionReport report;
  report.points = points;
  report.values = Eigen::MatrixXd::Constant(points.rows(), model.m, nan);
  report.failures.assign(static_cast<std::size_t>(points.rows()), std::string());
  report.max_imag = Eigen::VectorXd::Constant(points.rows(), nan);
  report.min_offdiag = Eigen::VectorXd::Constant(points.rows(), nan);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    try {
      const PointResult r = reconstruct_point(model, points.row(i).transpose());
      report.values.row(i) = r.values.transpose();
      report.max_imag[i] = r.diagnostics.max_imag;
      report.min_offdiag[i] = r.diagnostics.min_offdiag;
    } catch (const Error& e) {
      report.failures[static_cast<std::size_t>(i)] = e.what();
    }
  }
  return report;
}

}  // namespace invsurf
