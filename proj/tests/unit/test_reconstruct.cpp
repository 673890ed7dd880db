#include <catch_amalgamated.hpp>

#include "invsurf/generators.hpp"
#include "invsurf/reconstruct.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

using namespace invsurf;
using Catch::Matchers::WithinAbs;

namespace {

Eigen::VectorXd v(std::initializer_list<double> xs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

// Invariants of `values` in the form each method consumes.
Eigen::VectorXd invariants_for(const Eigen::VectorXd& values, Method method) {
  if (method == Method::Direct) {
    Eigen::VectorXd s = values;
    std::sort(s.begin(), s.end());
    return s;
  }
  const std::vector<double> full = oracle::poly_from_roots(std::vector<double>(values.begin(), values.end()));
  Eigen::VectorXd esp(values.size());
  // a_{m-k} = (-1)^k s_k
  for (Eigen::Index k = 1; k <= values.size(); ++k) esp[k - 1] = (k % 2 ? -1.0 : 1.0) * full[values.size() - k];
  if (method == Method::Colleague) return symbolic_b_from_esp(static_cast<int>(values.size())).apply(esp);
  return esp;
}

PointResult run(const Eigen::VectorXd& invariants, Method method, Projection proj = Projection::RealPart) {
  return reconstruct_from_invariants(invariants, method, proj, SchmeisserOptions{}, ValueTransform{});
}

const std::array<Method, 4> kAllMethods{Method::Frobenius, Method::Schmeisser, Method::Colleague, Method::Direct};

MultiSurfaceDataset toy_dataset(Eigen::Index points, std::uint64_t seed) {
  SampleSpec spec;
  spec.points = points;
  spec.seed = seed;
  return gen_sinusoid_1d(spec);
}

double max_error_on(const FittedModel& model, const Generator& g, const Eigen::MatrixXd& pts) {
  const ReconstructionReport r = reconstruct_grid(model, pts);
  REQUIRE(r.failed_count() == 0);
  return (r.values - evaluate_sorted(g, pts)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("method and projection names", "[reconstruct]") {
  for (Method m : kAllMethods) CHECK(parse_method(to_string(m)) == m);
  for (Projection p : {Projection::RealPart, Projection::SignedMagnitude, Projection::Reject})
    CHECK(parse_projection(to_string(p)) == p);
  CHECK(kind_of([] { parse_method("qr"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { parse_projection("imag"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("symbolic_b_from_esp examples", "[reconstruct]") {
  auto map = symbolic_b_from_esp(1);
  CHECK(map.offset == v({0}));
  CHECK(map.linear(0, 0) == -1.0);

  map = symbolic_b_from_esp(2);
  CHECK(map.offset == v({1, 0}));
  Eigen::MatrixXd lin(2, 2);
  lin << 0, 2, -2, 0;
  CHECK(map.linear == lin);
  CHECK_THROWS_AS(symbolic_b_from_esp(0), Error);
}

TEST_CASE("symbolic map: sum b_j T_j is 2^(1-m) times the monic polynomial", "[reconstruct][property]") {
  oracle::Random rng(61);
  for (int m = 1; m <= 6; ++m) {
    const auto map = symbolic_b_from_esp(m);
    for (int trial = 0; trial < 100; ++trial) {
      const std::vector<double> roots = rng.vector(static_cast<std::size_t>(m), -1.0, 1.0);
      const Eigen::VectorXd b = invariants_for(Eigen::Map<const Eigen::VectorXd>(roots.data(), m), Method::Colleague);
      const double scale = std::ldexp(1.0, 1 - m);
      for (double y : {-0.9, -0.3, 0.2, 0.75, roots[0]}) {
        double cheb = oracle::chebyshev_t(m, y);
        for (int j = 0; j < m; ++j) cheb += b[j] * oracle::chebyshev_t(j, y);
        double mono = 1.0;
        for (double r : roots) mono *= (y - r);
        CHECK_THAT(cheb, WithinAbs(mono / scale, 1e-12));
      }
    }
  }
}

TEST_CASE("m = 3 colleague roots match the monomial roots", "[reconstruct]") {
  oracle::Random rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> roots = rng.vector(3, -1.0, 1.0);
    std::sort(roots.begin(), roots.end());
    if (roots[1] - roots[0] < 0.01 || roots[2] - roots[1] < 0.01) continue;
    const Eigen::VectorXd vals = Eigen::Map<const Eigen::VectorXd>(roots.data(), 3);
    const Eigen::VectorXd got = run(invariants_for(vals, Method::Colleague), Method::Colleague).values;
    for (int k = 0; k < 3; ++k) CHECK_THAT(got[k], WithinAbs(roots[static_cast<std::size_t>(k)], 1e-10));
  }
}

TEST_CASE("reconstruction at an exact crossing", "[reconstruct]") {
  const Eigen::VectorXd z = v({0, 0, 1});
  for (Method m : kAllMethods) {
    const Eigen::VectorXd got = run(invariants_for(z, m), m).values;
    CAPTURE(to_string(m));
    for (int k = 0; k < 3; ++k) CHECK_THAT(got[k], WithinAbs(z[k], 1e-7));
  }
}

TEST_CASE("perturbed double root projects onto the real axis", "[reconstruct]") {
  // y^2 + eps, ESPs (0, eps): roots +-i sqrt(eps)
  const double eps = 1e-11;
  const Eigen::VectorXd esp = v({0.0, eps});
  for (Method m : {Method::Frobenius, Method::Schmeisser}) {
    const auto r = run(esp, m);
    CHECK_THAT(r.values[0], WithinAbs(0.0, 1e-15));
    CHECK_THAT(r.values[1], WithinAbs(0.0, 1e-15));
  }
  const auto c = run(symbolic_b_from_esp(2).apply(esp), Method::Colleague);
  CHECK_THAT(c.values[0], WithinAbs(0.0, 1e-15));
  CHECK_THAT(c.values[1], WithinAbs(0.0, 1e-15));
  CHECK_THAT(c.diagnostics.max_imag, WithinAbs(std::sqrt(eps), 1e-12));

  const auto s = run(esp, Method::Schmeisser);
  CHECK(s.diagnostics.min_offdiag == 0.0);

  const auto mag = run(esp, Method::Frobenius, Projection::SignedMagnitude);
  CHECK_THAT(std::abs(mag.values[0]), WithinAbs(std::sqrt(eps), 1e-12));
  CHECK_THAT(std::abs(mag.values[1]), WithinAbs(std::sqrt(eps), 1e-12));

  CHECK(kind_of([&] { run(esp, Method::Frobenius, Projection::Reject); }) == ErrorKind::ComplexRootsRejected);
  CHECK_NOTHROW(run(v({0.0, 1e-18}), Method::Frobenius, Projection::Reject));
  CHECK(kind_of([&] { run(v({0.0, 1e-3}), Method::Schmeisser); }) == ErrorKind::NegativeOffdiagonal);
}

TEST_CASE("value transform is undone on output", "[reconstruct]") {
  const ValueTransform t{2.0, 5.0};
  const Eigen::VectorXd working = v({-0.5, 0.25});
  for (Method m : kAllMethods) {
    const auto r = reconstruct_from_invariants(invariants_for(working, m), m, Projection::RealPart, {}, t);
    CHECK_THAT(r.values[0], WithinAbs(4.0, 1e-14));
    CHECK_THAT(r.values[1], WithinAbs(5.5, 1e-14));
  }
}

TEST_CASE("toy problem at x = 0 gives (0, 0, 1)", "[reconstruct]") {
  const auto data = toy_dataset(1000, 7);
  for (Method m : kAllMethods) {
    ModelOptions opts;
    opts.method = m;
    const FittedModel model = fit_model(data, Truncation::total_degree(1, 40), opts);
    const auto r = reconstruct_point(model, v({0.0}));
    CAPTURE(to_string(m));
    const double tol = m == Method::Direct ? 1e-1 : 1e-6;
    CHECK_THAT(r.values[0], WithinAbs(0.0, tol));
    CHECK_THAT(r.values[1], WithinAbs(0.0, tol));
    CHECK_THAT(r.values[2], WithinAbs(1.0, tol));
  }
}

TEST_CASE("constant surfaces are reproduced everywhere", "[reconstruct]") {
  SampleSpec spec;
  spec.points = 60;
  spec.seed = 3;
  const DomainBox box({{-2.0, 1.0}, {0.0, 4.0}});
  Eigen::MatrixXd pts = sample_points(box, spec);
  Eigen::MatrixXd vals(pts.rows(), 2);
  vals.col(0).setConstant(-1.0);
  vals.col(1).setConstant(2.0);
  const MultiSurfaceDataset data(pts, vals, box);
  for (Method m : kAllMethods) {
    ModelOptions opts;
    opts.method = m;
    const FittedModel model = fit_model(data, Truncation::total_degree(2, 3), opts);
    for (const auto& x : {Eigen::Vector2d(-2.0, 0.0), Eigen::Vector2d(0.3, 3.3), Eigen::Vector2d(1.0, 4.0)}) {
      const auto r = reconstruct_point(model, x);
      CHECK_THAT(r.values[0], WithinAbs(-1.0, 1e-12));
      CHECK_THAT(r.values[1], WithinAbs(2.0, 1e-12));
    }
  }
}

TEST_CASE("toy problem: colleague reaches 1e-8, direct stalls above 1e-3", "[reconstruct]") {
  const auto data = toy_dataset(1000, 11);
  const Generator g = make_sinusoid_1d();
  SampleSpec dense;
  dense.kind = Sampling::Grid;
  dense.grid = {2001};
  const Eigen::MatrixXd pts = sample_points(g.default_domain, dense);

  ModelOptions opts;
  const FittedModel colleague = fit_model(data, Truncation::total_degree(1, 40), opts);
  CHECK(max_error_on(colleague, g, pts) <= 1e-8);

  opts.method = Method::Direct;
  const FittedModel direct = fit_model(data, Truncation::total_degree(1, 40), opts);
  CHECK(max_error_on(direct, g, pts) >= 1e-3);
}

TEST_CASE("fit_model rejects unusable data", "[reconstruct]") {
  CHECK(kind_of([] { fit_model(MultiSurfaceDataset(Eigen::MatrixXd(0, 1), Eigen::MatrixXd(0, 2), DomainBox({{0.0, 1.0}})),
                               Truncation::total_degree(1, 2)); }) == ErrorKind::EmptyInput);
  CHECK(kind_of([] { fit_model(toy_dataset(10, 1), Truncation::total_degree(1, 20)); }) == ErrorKind::RankDeficient);
  const FittedModel model = fit_model(toy_dataset(30, 1), Truncation::total_degree(1, 20));
  CHECK_FALSE(model.warnings.empty());
  CHECK(kind_of([&] { reconstruct_point(model, v({3.0})); }) == ErrorKind::PointOutsideDomain);
}

TEST_CASE("reconstruct_grid bookkeeping", "[reconstruct]") {
  const FittedModel model = fit_model(toy_dataset(300, 2), Truncation::total_degree(1, 20));
  const ReconstructionReport empty = reconstruct_grid(model, Eigen::MatrixXd(0, 1));
  CHECK(empty.size() == 0);
  CHECK(empty.failed_count() == 0);

  Eigen::MatrixXd pts(3, 1);
  pts << 0.5, 9.0, 1.5;
  const ReconstructionReport r = reconstruct_grid(model, pts);
  CHECK(r.ok(0));
  CHECK_FALSE(r.ok(1));
  CHECK(r.failed_count() == 1);
  CHECK(std::isnan(r.values(1, 0)));
  CHECK(r.failures[1].find("outside") != std::string::npos);

  // Order of evaluation does not matter.
  Eigen::MatrixXd rev = pts.colwise().reverse();
  const ReconstructionReport back = reconstruct_grid(model, rev);
  CHECK(back.values.row(0) == r.values.row(2));
}

TEST_CASE("training points are reproduced to the fit residual", "[reconstruct]") {
  // Well-separated polynomial surfaces lie inside the basis.
  SampleSpec spec;
  spec.points = 200;
  spec.seed = 5;
  const DomainBox box({{-1.0, 1.0}});
  const Eigen::MatrixXd pts = sample_points(box, spec);
  Eigen::MatrixXd vals(pts.rows(), 3);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    const double x = pts(i, 0);
    vals.row(i) << x * x - 3.0, 0.5 * x, 2.0 + x * x * x;
  }
  const MultiSurfaceDataset data(pts, vals, box);
  for (Method m : kAllMethods) {
    ModelOptions opts;
    opts.method = m;
    const FittedModel model = fit_model(data, Truncation::total_degree(1, 10), opts);
    const ReconstructionReport r = reconstruct_grid(model, data.points());
    const double residual = *std::max_element(model.fit_residual.begin(), model.fit_residual.end());
    const double err = (r.values - data.values()).cwiseAbs().maxCoeff() / model.transform.scale;
    CAPTURE(to_string(m), residual, err);
    // Root sensitivity stays O(1) for roots this far apart.
    CHECK(err <= 10.0 * residual + 1e-14);
  }
}

TEST_CASE("min_offdiag collapses at a crossing", "[reconstruct]") {
  ModelOptions opts;
  opts.method = Method::Schmeisser;
  const FittedModel model = fit_model(toy_dataset(1000, 4), Truncation::total_degree(1, 40), opts);
  // sin x = cos 2x at x = pi/6.
  const double xc = std::numbers::pi / 6.0;
  Eigen::MatrixXd pts(41, 1);
  for (int i = 0; i < 41; ++i) pts(i, 0) = xc + (i - 20) * 0.0025;
  const ReconstructionReport r = reconstruct_grid(model, pts);
  REQUIRE(r.failed_count() == 0);
  CHECK(r.min_offdiag[20] < 1e-5);
  CHECK(r.min_offdiag[0] > 100.0 * r.min_offdiag[20]);
  CHECK(r.min_offdiag[40] > 100.0 * r.min_offdiag[20]);
  for (int i = 1; i <= 20; ++i) CHECK(r.min_offdiag[i] <= r.min_offdiag[i - 1]);
}

TEST_CASE("companion methods agree on well-separated inputs", "[reconstruct][property]") {
  oracle::Random rng(63);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = rng.integer(2, 5);
    std::vector<double> vals = rng.vector(static_cast<std::size_t>(m), -1.0, 1.0);
    std::sort(vals.begin(), vals.end());
    bool separated = true;
    for (int i = 1; i < m; ++i) separated = separated && vals[i] - vals[i - 1] >= 0.05;
    if (!separated) continue;
    const Eigen::VectorXd z = Eigen::Map<const Eigen::VectorXd>(vals.data(), m);
    const Eigen::VectorXd f = run(invariants_for(z, Method::Frobenius), Method::Frobenius).values;
    const Eigen::VectorXd s = run(invariants_for(z, Method::Schmeisser), Method::Schmeisser).values;
    const Eigen::VectorXd c = run(invariants_for(z, Method::Colleague), Method::Colleague).values;
    CHECK((f - s).cwiseAbs().maxCoeff() <= 1e-7);
    CHECK((f - c).cwiseAbs().maxCoeff() <= 1e-7);
    CHECK((s - c).cwiseAbs().maxCoeff() <= 1e-7);
  }
}

TEST_CASE("output is ascending for every method", "[reconstruct][property]") {
  SampleSpec spec;
  spec.points = 600;
  spec.seed = 8;
  const auto data = gen_sinusoid_2d(spec);
  SampleSpec grid;
  grid.kind = Sampling::Grid;
  grid.grid = {25, 25};
  const Eigen::MatrixXd pts = sample_points(data.domain(), grid);
  for (Method m : kAllMethods) {
    ModelOptions opts;
    opts.method = m;
    const FittedModel model = fit_model(data, Truncation::total_degree(2, 12), opts);
    const ReconstructionReport r = reconstruct_grid(model, pts);
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      if (!r.ok(i)) continue;
      for (Eigen::Index k = 1; k < r.values.cols(); ++k) CHECK(r.values(i, k - 1) <= r.values(i, k));
    }
  }
}

TEST_CASE("shuffling values within rows changes nothing", "[reconstruct][property]") {
  const auto data = toy_dataset(400, 9);
  Eigen::MatrixXd shuffled = data.values();
  oracle::Random rng(64);
  for (Eigen::Index i = 0; i < shuffled.rows(); ++i) {
    Eigen::VectorXd row = shuffled.row(i).transpose();
    std::shuffle(row.begin(), row.end(), rng.engine());
    shuffled.row(i) = row.transpose();
  }
  const MultiSurfaceDataset mixed(data.points(), shuffled, data.domain());
  CHECK(mixed.unsorted_rows() > 0);
  CHECK(mixed.values() == data.values());
  for (Method m : kAllMethods) {
    ModelOptions opts;
    opts.method = m;
    const FittedModel a = fit_model(data, Truncation::total_degree(1, 20), opts);
    const FittedModel b = fit_model(mixed, Truncation::total_degree(1, 20), opts);
    for (std::size_t j = 0; j < a.series.size(); ++j) CHECK(a.series[j].coeffs() == b.series[j].coeffs());
  }
}

TEST_CASE("noise near a crossing of two surfaces leaves the third alone", "[reconstruct][property]") {
  // z = (x, -x, 0.8) crosses at x = 0; noise is added only at points with |x| <= 1e-4.
  const double eps = 1e-8;
  oracle::Random rng(65);
  for (Method m : {Method::Frobenius, Method::Colleague}) {
    CAPTURE(to_string(m));
    double near3 = 0.0, near12 = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double x = -1e-4 + 1e-6 * i;
      Eigen::VectorXd z = v({x, -x, 0.8});
      Eigen::VectorXd inv = invariants_for(z, m);
      for (Eigen::Index k = 0; k < inv.size(); ++k) inv[k] += rng.uniform(-eps, eps);
      std::sort(z.begin(), z.end());
      const Eigen::VectorXd got = run(inv, m).values;
      near3 = std::max(near3, std::abs(got[2] - z[2]));
      near12 = std::max({near12, std::abs(got[0] - z[0]), std::abs(got[1] - z[1])});
    }
    // The third root is simple: its shift is first order in eps.
    CHECK(near3 <= 20.0 * eps);
    // The crossing pair moves by sqrt(eps).
    CHECK(near12 >= 0.1 * std::sqrt(eps));
    CHECK(near12 <= 20.0 * std::sqrt(eps));

    // Away from the crossing the inputs are untouched, so surface 3 keeps its
    // unperturbed accuracy.
    double far3 = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = 0.1 + 0.006 * i;
      Eigen::VectorXd z = v({x, -x, 0.8});
      const Eigen::VectorXd got = run(invariants_for(z, m), m).values;
      std::sort(z.begin(), z.end());
      far3 = std::max(far3, std::abs(got[2] - z[2]));
    }
    CHECK(far3 <= 1e-14);
  }
}

TEST_CASE("errors near a double root scale like sqrt(eps)", "[reconstruct][property]") {
  for (Method m : {Method::Frobenius, Method::Colleague}) {
    CAPTURE(to_string(m));
    std::vector<double> epsilons, errors;
    oracle::Random rng(66);
    for (double eps = 1e-6; eps <= 1.01e-2; eps *= 10.0) {
      double err = 0.0;
      for (int i = 0; i < 200; ++i) {
        const double x = -1e-4 + 1e-6 * i;
        Eigen::VectorXd z = v({x, -x, 0.8});
        Eigen::VectorXd inv = invariants_for(z, m);
        for (Eigen::Index k = 0; k < inv.size(); ++k) inv[k] += rng.uniform(-eps, eps);
        std::sort(z.begin(), z.end());
        err = std::max(err, (run(inv, m).values - z).cwiseAbs().maxCoeff());
      }
      epsilons.push_back(eps);
      errors.push_back(err);
    }
    const double slope = oracle::loglog_slope(epsilons, errors);
    CHECK(slope >= 0.35);
    CHECK(slope <= 0.65);
  }
}
