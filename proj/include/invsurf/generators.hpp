#pragma once

// Test-problem generators, sampling and noise injection.

#include "invsurf/chebfit.hpp"
#include "invsurf/dataset.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace invsurf {

/// Uniform doubles in [0, 1) from the top 53 bits of mt19937_64, so streams
/// are identical on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

enum class Sampling { Random, Grid, CellGrid };

/// Random: i.i.d. uniform over the box. Grid: endpoints included.
/// CellGrid: cell midpoints, (i + 1/2) h.
struct SampleSpec {
  Sampling kind = Sampling::Random;
  Eigen::Index points = 1000;
  std::vector<int> grid;  // per-dimension counts for Grid / CellGrid
  std::uint64_t seed = 0;
  std::optional<DomainBox> domain;  // overrides the generator default
};

Eigen::MatrixXd sample_points(const DomainBox& domain, const SampleSpec& spec);

/// Unsorted surface values at one point.
using SurfaceFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct Generator {
  std::string name;
  std::string description;
  DomainBox default_domain;
  int m = 0;
  SurfaceFn surfaces;
};

inline constexpr double kGrapheneGamma0 = 2.8;  // eV
inline constexpr double kGrapheneA = 2.46;      // Angstrom
inline constexpr double kSinhConicalA = 4.0 / 3.0;
inline constexpr double kSinhConicalB = 12.0 / 5.0;

Generator make_sinusoid_1d();
Generator make_sinusoid_2d();
Generator make_sinh_conical(double a = kSinhConicalA, double b = kSinhConicalB);
Generator make_conical(double a = kSinhConicalA, double b = kSinhConicalB);
Generator make_stacked();
Generator make_graphene();
Generator make_synthetic_3d();

/// Throws UnknownGenerator.
Generator find_generator(const std::string& name);
std::vector<std::string> generator_names();

/// Sorted surface values at every row of `points`.
Eigen::MatrixXd evaluate_sorted(const Generator& g, const Eigen::MatrixXd& points);

MultiSurfaceDataset generate(const Generator& g, const SampleSpec& spec);

MultiSurfaceDataset gen_sinusoid_1d(const SampleSpec& spec);
MultiSurfaceDataset gen_sinusoid_2d(const SampleSpec& spec);
MultiSurfaceDataset gen_sinh_conical(const SampleSpec& spec, double a = kSinhConicalA, double b = kSinhConicalB);
MultiSurfaceDataset gen_stacked(const SampleSpec& spec);
MultiSurfaceDataset gen_graphene(const SampleSpec& spec);

/// K = (4 pi / (3a), 0), the Dirac point at the centre of the default graphene box.
Eigen::Vector2d graphene_k_point();

enum class NoiseTarget { SurfaceValues, Invariants };

/// Independent uniform noise in [-eps, eps] on every value; rows are re-sorted.
MultiSurfaceDataset add_noise(const MultiSurfaceDataset& data, double eps, std::uint64_t seed);

/// Same noise stream applied to per-point invariant samples (no re-sorting).
Eigen::MatrixXd add_noise(const Eigen::MatrixXd& invariants, double eps, std::uint64_t seed);

std::string to_string(Sampling s);
std::string to_string(NoiseTarget t);

}  // namespace invsurf
