#include "invsurf/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace invsurf {

namespace {

using std::numbers::pi;

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

double grid_coordinate(const DomainBox& domain, int k, int i, int count, Sampling kind) {
  const double lo = domain.lo(k), hi = domain.hi(k);
  if (kind == Sampling::CellGrid) return lo + (hi - lo) * (i + 0.5) / count;
  if (count == 1) return 0.5 * (lo + hi);
  return i == count - 1 ? hi : lo + (hi - lo) * i / (count - 1);
}

}  // namespace

Eigen::MatrixXd sample_points(const DomainBox& domain, const SampleSpec& spec) {
  const int d = domain.dims();
  if (spec.kind == Sampling::Random) {
    if (spec.points < 0) throw Error(ErrorKind::InvalidArgument, "point count must be >= 0");
    Rng rng(spec.seed);
    Eigen::MatrixXd p(spec.points, d);
    for (Eigen::Index i = 0; i < spec.points; ++i)
      for (int k = 0; k < d; ++k) p(i, k) = rng.uniform(domain.lo(k), domain.hi(k));
    return p;
  }
  if (static_cast<int>(spec.grid.size()) != d) {
    throw Error(ErrorKind::DimensionMismatch, "grid needs " + std::to_string(d) + " counts for this domain");
  }
  Eigen::Index total = 1;
  for (int c : spec.grid) {
    if (c < 1) throw Error(ErrorKind::InvalidArgument, "grid counts must be >= 1");
    total *= c;
  }
  Eigen::MatrixXd p(total, d);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (Eigen::Index row = 0; row < total; ++row) {
    for (int k = 0; k < d; ++k) p(row, k) = grid_coordinate(domain, k, idx[k], spec.grid[k], spec.kind);
    for (int k = d - 1; k >= 0; --k) {
      if (++idx[k] < spec.grid[k]) break;
      idx[k] = 0;
    }
  }
  return p;
}

Generator make_sinusoid_1d() {
  return {"sinusoid1d", "sin(x), cos(2x), sin(2x) on [0, 2]", DomainBox({{0.0, 2.0}}), 3,
          [](const Eigen::VectorXd& p) {
            const double x = p[0];
            return vec({std::sin(x), std::cos(2.0 * x), std::sin(2.0 * x)});
          }};
}

Generator make_sinusoid_2d() {
  return {"sinusoid2d", "2 sin(6(x+y)/5), 2/3 - cos(x-y), 1 on [0, 2]^2", DomainBox({{0.0, 2.0}, {0.0, 2.0}}), 3,
          [](const Eigen::VectorXd& p) {
            const double x = p[0], y = p[1];
            return vec({2.0 * std::sin(6.0 * (x + y) / 5.0), 2.0 / 3.0 - std::cos(x - y), 1.0});
          }};
}

Generator make_sinh_conical(double a, double b) {
  if (a == 0.0 || b == 0.0) throw Error(ErrorKind::ZeroAxis, "sinh-conical axes a and b must be nonzero");
  std::ostringstream desc;
  desc.precision(17);
  desc << "+-sinh(sqrt(a^2 y^2 + b^2 x^2) / (a b)) on [-1, 1]^2, a = " << a << ", b = " << b;
  return {"sinh-conical", desc.str(), DomainBox({{-1.0, 1.0}, {-1.0, 1.0}}), 2, [a, b](const Eigen::VectorXd& p) {
            const double r = std::sqrt(a * a * p[1] * p[1] + b * b * p[0] * p[0]) / (a * b);
            return vec({std::sinh(r), std::sinh(-r)});
          }};
}

Generator make_conical(double a, double b) {
  if (a == 0.0 || b == 0.0) throw Error(ErrorKind::ZeroAxis, "conical axes a and b must be nonzero");
  return {"conical", "+-sqrt(a^2 y^2 + b^2 x^2) / (a b) on [-1, 1]^2", DomainBox({{-1.0, 1.0}, {-1.0, 1.0}}), 2,
          [a, b](const Eigen::VectorXd& p) {
            const double r = std::sqrt(a * a * p[1] * p[1] + b * b * p[0] * p[0]) / (a * b);
            return vec({r, -r});
          }};
}

Generator make_stacked() {
  return {"stacked", "lowest three of sin(x), cos(2x), sin(2x), 1/3 + cos(2x/3) on [0, 2]", DomainBox({{0.0, 2.0}}), 3,
          [](const Eigen::VectorXd& p) {
            const double x = p[0];
            std::array<double, 4> z{std::sin(x), std::cos(2.0 * x), std::sin(2.0 * x), 1.0 / 3.0 + std::cos(2.0 * x / 3.0)};
            std::sort(z.begin(), z.end());
            return vec({z[0], z[1], z[2]});
          }};
}

Eigen::Vector2d graphene_k_point() { return {4.0 * pi / (3.0 * kGrapheneA), 0.0}; }

Generator make_graphene() {
  const double kx_hi = 8.0 * pi / (3.0 * kGrapheneA);
  const double ky = 2.0 * pi / (std::sqrt(3.0) * kGrapheneA);
  return {"graphene", "tight-binding bands +-gamma0 sqrt(1 + 4cos^2(a kx/2) + 4cos(a kx/2)cos(sqrt3 a ky/2)), eV",
          DomainBox({{0.0, kx_hi}, {-ky, ky}}), 2, [](const Eigen::VectorXd& p) {
            const double cx = std::cos(kGrapheneA * p[0] / 2.0);
            const double cy = std::cos(std::sqrt(3.0) * kGrapheneA * p[1] / 2.0);
            const double e = kGrapheneGamma0 * std::sqrt(std::max(0.0, 1.0 + 4.0 * cx * cx + 4.0 * cx * cy));
            return vec({e, -e});
          }};
}

Generator make_synthetic_3d() {
  return {"synthetic3d", "three crossing smooth surfaces on [-1, 1]^3", DomainBox({{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}),
          3, [](const Eigen::VectorXd& p) {
            const double x = p[0], y = p[1], z = p[2];
            return vec({std::sin(x + y) - 0.5 * z, 0.5 * x * y + std::cos(z), 0.25 + 0.5 * x * z - 0.3 * y});
          }};
}

Generator find_generator(const std::string& name) {
  if (name == "sinusoid1d") return make_sinusoid_1d();
  if (name == "sinusoid2d") return make_sinusoid_2d();
  if (name == "sinh-conical") return make_sinh_conical();
  if (name == "conical") return make_conical();
  if (name == "stacked") return make_stacked();
  if (name == "graphene") return make_graphene();
  if (name == "synthetic3d") return make_synthetic_3d();
  throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + name + "'");
}

std::vector<std::string> generator_names() {
  return {"sinusoid1d", "sinusoid2d", "sinh-conical", "conical", "stacked", "graphene", "synthetic3d"};
}

Eigen::MatrixXd evaluate_sorted(const Generator& g, const Eigen::MatrixXd& points) {
  Eigen::MatrixXd out(points.rows(), g.m);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    Eigen::VectorXd v = g.surfaces(points.row(i).transpose());
    std::sort(v.begin(), v.end());
    out.row(i) = v.transpose();
  }
  return out;
}

MultiSurfaceDataset generate(const Generator& g, const SampleSpec& spec) {
  const DomainBox domain = spec.domain.value_or(g.default_domain);
  Eigen::MatrixXd points = sample_points(domain, spec);
  Eigen::MatrixXd values = evaluate_sorted(g, points);
  std::ostringstream prov;
  prov << "generator=" << g.name << " sampling=" << to_string(spec.kind);
  if (spec.kind == Sampling::Random) {
    prov << " points=" << spec.points << " rng=mt19937_64 seed=" << spec.seed;
  } else {
    prov << " grid=";
    for (std::size_t k = 0; k < spec.grid.size(); ++k) prov << (k ? "x" : "") << spec.grid[k];
  }
  return MultiSurfaceDataset(std::move(points), std::move(values), domain, prov.str());
}

MultiSurfaceDataset gen_sinusoid_1d(const SampleSpec& spec) { return generate(make_sinusoid_1d(), spec); }
MultiSurfaceDataset gen_sinusoid_2d(const SampleSpec& spec) { return generate(make_sinusoid_2d(), spec); }
MultiSurfaceDataset gen_sinh_conical(const SampleSpec& spec, double a, double b) {
  return generate(make_sinh_conical(a, b), spec);
}
MultiSurfaceDataset gen_stacked(const SampleSpec& spec) { return generate(make_stacked(), spec); }
MultiSurfaceDataset gen_graphene(const SampleSpec& spec) { return generate(make_graphene(), spec); }

Eigen::MatrixXd add_noise(const Eigen::MatrixXd& invariants, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0)) throw Error(ErrorKind::InvalidArgument, "noise scale must be >= 0");
  Eigen::MatrixXd out = invariants;
  if (eps == 0.0) return out;
  Rng rng(seed);
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j) out(i, j) += rng.uniform(-eps, eps);
  return out;
}

MultiSurfaceDataset add_noise(const MultiSurfaceDataset& data, double eps, std::uint64_t seed) {
  Eigen::MatrixXd values = add_noise(data.values(), eps, seed);
  std::string prov = data.provenance();
  if (eps > 0.0) {
    std::ostringstream extra;
    extra.precision(17);
    extra << (prov.empty() ? "" : " ") << "noise=" << eps << " noise_target=surface noise_seed=" << seed;
    prov += extra.str();
  }
  // The constructor re-sorts the rows.
  return MultiSurfaceDataset(data.points(), std::move(values), data.domain(), std::move(prov));
}

std::string to_string(Sampling s) {
  switch (s) {
    case Sampling::Random: return "random";
    case Sampling::Grid: return "grid";
    case Sampling::CellGrid: return "cellgrid";
  }
  return "?";
}

std::string to_string(NoiseTarget t) { return t == NoiseTarget::SurfaceValues ? "surface" : "invariants"; }

}  // namespace invsurf
