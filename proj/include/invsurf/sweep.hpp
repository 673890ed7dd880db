#pragma once

#include "invsurf/generators.hpp"
#include "invsurf/metrics.hpp"
#include "invsurf/reconstruct.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace invsurf {

/// One row per (method, degree, noise) in spec order.
struct SweepSpec {
  std::string generator = "sinusoid1d";
  std::string dataset;  // CSV path; replaces the generator, metrics are then taken on the training points
  std::vector<Method> methods;
  std::vector<int> degrees;
  std::vector<double> noises{0.0};
  NoiseTarget noise_target = NoiseTarget::Invariants;
  Eigen::Index train_points = 1000;
  std::vector<int> train_grid;  // inclusive grid instead of random points when set
  std::vector<int> eval_grid;   // cell-centred held-out grid; empty selects the default size
  bool eval_on_training = false;
  Truncation::Kind truncation = Truncation::Kind::TotalDegree;
  Projection projection = Projection::RealPart;
  SchmeisserOptions schmeisser;
  double eps_w = 5e-2;
  std::uint64_t seed = 0;
};

struct SweepRow {
  Method method = Method::Colleague;
  int degree = 0;
  double noise = 0.0;
  Metrics metrics;
  std::string status;  // ok | partial:<failed points> | failed:<error kind>
};

/// 2000 points in 1D, 100 per axis in 2D, 20 per axis in 3D and beyond.
std::vector<int> default_eval_grid(int dims);

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

/// Metadata sidecar: resolved spec, seed, start/finish timestamps, library version.
void write_sweep_json(const std::filesystem::path& path, const SweepSpec& spec, const std::vector<SweepRow>& rows,
                      const std::string& started, const std::string& finished);

std::string sweep_spec_json(const SweepSpec& spec);
/// Keys mirror the CLI flags; unknown keys are rejected with InvalidArgument.
SweepSpec parse_sweep_spec(const std::string& json_text, SweepSpec base = {});

std::string utc_timestamp();

}  // namespace invsurf
