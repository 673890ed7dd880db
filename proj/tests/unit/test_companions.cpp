#include <catch_amalgamated.hpp>

#include "invsurf/companions.hpp"
#include "invsurf/invariants.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>

using namespace invsurf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Eigen::VectorXd v(std::initializer_list<double> xs) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

MonicPolynomial<double> monic_with_roots(const std::vector<double>& roots) {
  const std::vector<double> full = oracle::poly_from_roots(roots);
  return MonicPolynomial<double>(Eigen::Map<const Eigen::VectorXd>(full.data(), static_cast<Eigen::Index>(roots.size())));
}

std::vector<double> sorted_real(const ComplexVec<double>& w) {
  std::vector<double> out;
  for (auto z : w) out.push_back(z.real());
  std::sort(out.begin(), out.end());
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

}  // namespace

TEST_CASE("build_frobenius examples", "[companions]") {
  Eigen::MatrixXd expect(2, 2);
  expect << 0, 1, 1, 0;
  CHECK(build_frobenius(MonicPolynomial<double>(v({-1, 0}))).entries() == expect);

  const auto f = build_frobenius(MonicPolynomial<double>(v({-6, 11, -6})));
  CHECK(f.entries().col(2) == v({6, -11, 6}));
  CHECK(f.entries()(1, 0) == 1.0);
  CHECK(f.entries()(2, 1) == 1.0);

  CHECK(build_frobenius(MonicPolynomial<double>(Eigen::VectorXd::Zero(4))).entries().col(3).isZero(0.0));
  CHECK(kind_of([] { build_frobenius(MonicPolynomial<double>(Eigen::VectorXd(0))); }) == ErrorKind::DegreeTooSmall);
}

TEST_CASE("build_schmeisser examples", "[companions]") {
  auto r = build_schmeisser(MonicPolynomial<double>(v({-1, 0})));
  CHECK(r.matrix.diag == v({0, 0}));
  CHECK(r.matrix.offdiag == v({1}));
  CHECK(r.crossing.min_offdiag == 1.0);
  CHECK(r.crossing.offdiag_index == 0);

  r = build_schmeisser(MonicPolynomial<double>(v({0, 0})));
  CHECK(r.matrix.diag == v({0, 0}));
  CHECK(r.matrix.offdiag == v({0}));
  CHECK(r.crossing.min_offdiag == 0.0);

  r = build_schmeisser(MonicPolynomial<double>(v({-6, 11, -6})));
  const Eigen::VectorXd e = eig_sym_tridiag(r.matrix);
  for (int k = 0; k < 3; ++k) CHECK_THAT(e[k], WithinAbs(k + 1.0, 1e-10));

  r = build_schmeisser(MonicPolynomial<double>(v({2.5})));
  CHECK(r.matrix.diag == v({-2.5}));
  CHECK(std::isinf(r.crossing.min_offdiag));
  CHECK(r.crossing.offdiag_index == -1);
}

TEST_CASE("build_schmeisser rejects complex roots and bad options", "[companions]") {
  // y^3 + y^2 + y + 1 = (y + 1)(y^2 + 1)
  const MonicPolynomial<double> p(v({1, 1, 1}));
  CHECK(kind_of([&] { build_schmeisser(p); }) == ErrorKind::NegativeOffdiagonal);
  SchmeisserOptions no_clamp;
  no_clamp.clamp_negative_offdiag = false;
  CHECK(kind_of([&] { build_schmeisser(p, no_clamp); }) == ErrorKind::NegativeOffdiagonal);

  CHECK(kind_of([] { build_schmeisser(MonicPolynomial<double>(v({-1, 0})), SchmeisserOptions{true, -1.0, 1e-12}); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { build_schmeisser(MonicPolynomial<double>(v({-1, 0})), SchmeisserOptions{true, 1e-10, -1.0}); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("small negative off-diagonals are clamped only when clamping is on", "[companions]") {
  // y^2 + 1e-11: raw c = -1e-11 sits inside the default tolerance.
  const MonicPolynomial<double> p(v({1e-11, 0}));
  const auto r = build_schmeisser(p);
  CHECK(r.matrix.offdiag[0] == 0.0);
  CHECK(r.crossing.min_offdiag == 0.0);

  SchmeisserOptions off;
  off.clamp_negative_offdiag = false;
  CHECK(kind_of([&] { build_schmeisser(p, off); }) == ErrorKind::NegativeOffdiagonal);

  // Past the tolerance the clamp no longer applies.
  CHECK(kind_of([] { build_schmeisser(MonicPolynomial<double>(v({1e-6, 0}))); }) == ErrorKind::NegativeOffdiagonal);
}

TEST_CASE("Schmeisser block-splits at a repeated root", "[companions]") {
  // (y - 1)^2 (y + 2)
  const auto r = build_schmeisser(monic_with_roots({1.0, 1.0, -2.0}));
  CHECK(r.crossing.min_offdiag == 0.0);
  const Eigen::VectorXd e = eig_sym_tridiag(r.matrix);
  CHECK_THAT(e[0], WithinAbs(-2.0, 1e-10));
  CHECK_THAT(e[1], WithinAbs(1.0, 1e-7));
  CHECK_THAT(e[2], WithinAbs(1.0, 1e-7));
}

TEST_CASE("build_colleague examples", "[companions]") {
  const auto h = build_colleague(ChebyshevPoly1D<double>(v({-1, 0, 1})));
  Eigen::MatrixXd expect(2, 2);
  expect << 0, std::sqrt(2.0), std::sqrt(2.0) / 2.0, 0;
  CHECK((h.entries() - expect).cwiseAbs().maxCoeff() <= 1e-15);
  auto w = sorted_real(eig_hessenberg(h));
  CHECK_THAT(w[0], WithinAbs(-1.0, 1e-14));
  CHECK_THAT(w[1], WithinAbs(1.0, 1e-14));

  w = sorted_real(eig_hessenberg(build_colleague(ChebyshevPoly1D<double>(v({0, 0, 1})))));
  CHECK_THAT(w[0], WithinAbs(-std::sqrt(2.0) / 2.0, 1e-14));
  CHECK_THAT(w[1], WithinAbs(std::sqrt(2.0) / 2.0, 1e-14));

  w = sorted_real(eig_hessenberg(build_colleague(ChebyshevPoly1D<double>(v({0, 0, 0, 1})))));
  CHECK_THAT(w[0], WithinAbs(-std::sqrt(3.0) / 2.0, 1e-14));
  CHECK_THAT(w[1], WithinAbs(0.0, 1e-14));
  CHECK_THAT(w[2], WithinAbs(std::sqrt(3.0) / 2.0, 1e-14));
}

TEST_CASE("build_colleague preconditions", "[companions]") {
  CHECK(kind_of([] { build_colleague(ChebyshevPoly1D<double>(v({0.3, 1}))); }) == ErrorKind::DegreeTooSmall);
  CHECK(kind_of([] { build_colleague(ChebyshevPoly1D<double>(v({0, 0, 2}))); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("root_perturbation_bound examples", "[companions]") {
  const double eps = 1e-6;
  CHECK_THAT(root_perturbation_bound(MonicPolynomial<double>(v({0, 0})), 0.0, 2, eps), WithinRel(std::sqrt(eps), 1e-14));
  CHECK_THAT(root_perturbation_bound(MonicPolynomial<double>(v({0})), 0.0, 1, eps), WithinRel(eps, 1e-14));
  CHECK_THAT(root_perturbation_bound(MonicPolynomial<double>(v({1, -2})), 1.0, 2, 1e-4), WithinRel(1e-2, 1e-14));
  // Same polynomial y^2 in Chebyshev form: (T_0 + T_2) / 2.
  CHECK_THAT(root_perturbation_bound(ChebyshevPoly1D<double>(v({0.5, 0, 0.5})), 0.0, 2, eps),
             WithinRel(std::sqrt(eps), 1e-14));
}

TEST_CASE("root_perturbation_bound errors", "[companions]") {
  CHECK(kind_of([] { root_perturbation_bound(MonicPolynomial<double>(v({0, 0})), 0.0, 1, 1e-6); }) ==
        ErrorKind::DegenerateDerivative);
  CHECK(kind_of([] { root_perturbation_bound(MonicPolynomial<double>(v({0})), 0.0, 1, 1.5); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { root_perturbation_bound(MonicPolynomial<double>(v({0})), 0.0, 0, 1e-3); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("perturbing a double root moves it by the bound", "[companions]") {
  // y^2 + eps has roots +-i sqrt(eps).
  for (double eps : {1e-4, 1e-8, 1e-12}) {
    const auto w = eig_hessenberg(build_frobenius(MonicPolynomial<double>(v({eps, 0}))));
    const double bound = root_perturbation_bound(MonicPolynomial<double>(v({0, 0})), 0.0, 2, eps);
    for (auto z : w) CHECK_THAT(std::abs(z), WithinRel(bound, 1e-6));
  }
}

TEST_CASE("schmeisser_eig_interval examples", "[companions]") {
  const SymTridiagonal<double> t(v({0, 0}), v({1}));
  auto iv = schmeisser_eig_interval(t, 0.0);
  CHECK(iv[0].first == iv[0].second);
  CHECK_THAT(iv[0].first, WithinAbs(-1.0, 1e-15));

  iv = schmeisser_eig_interval(t, 0.01);
  CHECK_THAT(iv[0].first, WithinAbs(-1.03, 1e-14));
  CHECK_THAT(iv[0].second, WithinAbs(-0.97, 1e-14));
  CHECK_THAT(iv[1].first, WithinAbs(0.97, 1e-14));
  CHECK_THAT(iv[1].second, WithinAbs(1.03, 1e-14));
  CHECK_THROWS_AS(schmeisser_eig_interval(t, -1.0), Error);
}

TEST_CASE("colleague_backward_bound examples", "[companions]") {
  CHECK(colleague_backward_bound(v({0.3, -0.2}), 0.0, 0.0, 0.0, 2) == 0.0);
  for (int n : {2, 3, 7}) {
    CHECK_THAT(colleague_backward_bound(v({1, 2, 3}), 0.0, 0.0, 1e-9, n), WithinRel(2.0 * std::pow(n, 2.5) * 1e-9, 1e-14));
  }
  CHECK_THAT(colleague_backward_bound(v({1, 0}), 1e-16, 0.0, 0.0, 2),
             WithinRel(4.0 * (5.0 + 16.0 * std::sqrt(2.0)) * 1e-16, 1e-14));
  CHECK_THROWS_AS(colleague_backward_bound(v({1}), -1.0, 0.0, 0.0, 2), Error);
}

TEST_CASE("all three companions recover real roots", "[companions][property]") {
  oracle::Random rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> roots = rng.vector(static_cast<std::size_t>(rng.integer(2, 6)), -1.0, 1.0);
    std::sort(roots.begin(), roots.end());
    const MonicPolynomial<double> p = monic_with_roots(roots);
    // A cluster of nearby roots makes every method ill-conditioned; the tolerances
    // below presume roots that are resolvable in double precision.
    double gap = 1.0;
    for (std::size_t i = 1; i < roots.size(); ++i) gap = std::min(gap, roots[i] - roots[i - 1]);
    if (gap < 0.02) continue;

    const std::vector<double> frob = sorted_real(eig_hessenberg(build_frobenius(p)));
    const Eigen::VectorXd schm = eig_sym_tridiag(build_schmeisser(p).matrix);
    const auto cheb = normalize_monic_chebyshev(monomial_to_chebyshev(p.full()));
    const std::vector<double> coll = sorted_real(eig_hessenberg(build_colleague(cheb)));
    for (std::size_t i = 0; i < roots.size(); ++i) {
      CHECK_THAT(frob[i], WithinAbs(roots[i], 1e-7));
      CHECK_THAT(schm[static_cast<Eigen::Index>(i)], WithinAbs(roots[i], 1e-8));
      CHECK_THAT(coll[i], WithinAbs(roots[i], 1e-9));
    }
  }
}

TEST_CASE("perturbed Schmeisser eigenvalues stay inside the 3 eps_c intervals", "[companions][property]") {
  oracle::Random rng(42);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> roots = rng.vector(static_cast<std::size_t>(rng.integer(2, 6)), -1.0, 1.0);
    const auto t = build_schmeisser(monic_with_roots(roots)).matrix;
    const double eps_c = std::array<double, 3>{1e-8, 1e-4, 1e-2}[trial % 3];
    SymTridiagonal<double> pert = t;
    for (Eigen::Index i = 0; i < pert.diag.size(); ++i) pert.diag[i] += rng.uniform(-eps_c, eps_c);
    for (Eigen::Index i = 0; i < pert.offdiag.size(); ++i) pert.offdiag[i] += rng.uniform(-eps_c, eps_c);
    const auto iv = schmeisser_eig_interval(t, eps_c);
    const Eigen::VectorXd e = eig_sym_tridiag(pert);
    for (Eigen::Index j = 0; j < e.size(); ++j) {
      if (e[j] < iv[j].first || e[j] > iv[j].second) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("crossing indicator separates double from simple roots", "[companions][property]") {
  oracle::Random rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const double r = rng.uniform(-0.5, 0.5);
    std::vector<double> roots{r, r, rng.uniform(0.7, 1.0)};
    CHECK(build_schmeisser(monic_with_roots(roots)).crossing.min_offdiag == 0.0);

    std::vector<double> simple{-0.8, -0.8 + rng.uniform(0.2, 0.5), 0.9};
    const auto res = build_schmeisser(monic_with_roots(simple));
    CHECK(res.crossing.min_offdiag > 0.0);
    CHECK(res.crossing.min_offdiag == res.matrix.offdiag.minCoeff());
  }
}
