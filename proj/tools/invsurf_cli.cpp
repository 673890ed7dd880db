// invsurf: generate datasets, fit invariant models, reconstruct and sweep.
//
// Exit codes: 0 success, 2 usage, 3 io, 4 numeric failure, 5 data format.

#include "invsurf/dataset.hpp"
#include "invsurf/generators.hpp"
#include "invsurf/metrics.hpp"
#include "invsurf/model_io.hpp"
#include "invsurf/reconstruct.hpp"
#include "invsurf/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace invsurf;
using nlohmann::json;

enum ExitCode { kOk = 0, kUsage = 2, kIo = 3, kNumeric = 4, kDataFormat = 5 };

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::UnknownGenerator:
    case ErrorKind::ZeroAxis:
      return kUsage;
    case ErrorKind::IoError:
      return kIo;
    case ErrorKind::ParseError:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::EmptyInput:
    case ErrorKind::PointOutsideDomain:
      return kDataFormat;
    case ErrorKind::ZeroDivisor:
    case ErrorKind::DegenerateLeading:
    case ErrorKind::DomainViolation:
    case ErrorKind::NoConvergence:
    case ErrorKind::DegreeTooSmall:
    case ErrorKind::DegenerateDerivative:
    case ErrorKind::NegativeOffdiagonal:
    case ErrorKind::RankDeficient:
    case ErrorKind::ComplexRootsRejected:
      return kNumeric;
  }
  return kNumeric;
}

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, 'x')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || part.empty() || v < 1) {
      throw Error(ErrorKind::InvalidArgument, "grid must look like 150x150, got '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid specification");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void print_config(const json& cfg) { std::cerr << "# config " << cfg.dump() << '\n'; }

std::filesystem::path sidecar(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".json");
  return p;
}

struct GenArgs {
  std::string generator;
  Eigen::Index points = 1000;
  std::string grid;
  bool cell = false;
  double noise = 0.0;
  std::vector<double> axes;
};

struct FitArgs {
  std::string dataset;
  std::string method = "colleague";
  std::string projection = "real";
  int degree = 20;
  bool tensor = false;
  bool clamp = true;
  double margin = kDefaultValueMargin;
};

struct EvalArgs {
  std::string model;
  std::string points_file;
  std::string grid;
  std::string truth;
  std::string generator;
  double eps_w = 0.05;
};

struct SweepArgs {
  std::string spec_file;
  std::string generator;
  std::string dataset;
  std::vector<std::string> methods;
  std::vector<int> degrees;
  std::vector<double> noises;
  std::string noise_target;
  Eigen::Index points = -1;
  std::string train_grid;
  std::string grid;
  bool eval_training = false;
  std::string projection;
  bool clamp = true;
  double eps_w = -1.0;
  std::string truncation;
};

int run_gen(const GenArgs& a, std::uint64_t seed, const std::string& out) {
  Generator g = find_generator(a.generator);
  if (!a.axes.empty()) {
    if (a.axes.size() != 2) throw Error(ErrorKind::InvalidArgument, "--axes takes two values a,b");
    if (a.generator == "sinh-conical") g = make_sinh_conical(a.axes[0], a.axes[1]);
    else if (a.generator == "conical") g = make_conical(a.axes[0], a.axes[1]);
    else throw Error(ErrorKind::InvalidArgument, "--axes only applies to the conical generators");
  }
  SampleSpec spec;
  spec.seed = seed;
  if (!a.grid.empty()) {
    spec.kind = a.cell ? Sampling::CellGrid : Sampling::Grid;
    spec.grid = parse_grid(a.grid);
  } else {
    spec.kind = Sampling::Random;
    spec.points = a.points;
  }
  json cfg = {{"command", "gen"}, {"generator", g.name}, {"sampling", to_string(spec.kind)}, {"seed", seed},
              {"noise", a.noise}, {"output", out}};
  if (spec.kind == Sampling::Random) cfg["points"] = spec.points;
  else cfg["grid"] = spec.grid;
  print_config(cfg);

  MultiSurfaceDataset data = generate(g, spec);
  if (a.noise > 0.0) data = add_noise(data, a.noise, seed + 1);
  save_csv(out, data);
  json prov = {{"generator", g.name},
               {"description", g.description},
               {"sampling", to_string(spec.kind)},
               {"seed", seed},
               {"rng", "mt19937_64"},
               {"noise", a.noise},
               {"rows", data.size()},
               {"m", data.m()},
               {"provenance", data.provenance()}};
  std::ofstream side(sidecar(out), std::ios::binary);
  if (!side) throw Error(ErrorKind::IoError, "cannot write " + sidecar(out).string());
  side << prov.dump(2) << '\n';
  std::cout << "wrote " << data.size() << " rows to " << out << '\n';
  return kOk;
}

int run_fit(const FitArgs& a, const std::string& out) {
  const MultiSurfaceDataset data = load_csv(a.dataset);
  ModelOptions opts;
  opts.method = parse_method(a.method);
  opts.projection = parse_projection(a.projection);
  opts.schmeisser.clamp_negative_offdiag = a.clamp;
  opts.value_margin = a.margin;
  const Truncation trunc = a.tensor ? Truncation::tensor(std::vector<int>(static_cast<std::size_t>(data.dims()), a.degree))
                                    : Truncation::total_degree(data.dims(), a.degree);
  print_config({{"command", "fit"}, {"dataset", a.dataset}, {"method", a.method}, {"projection", a.projection},
                {"degree", a.degree}, {"truncation", a.tensor ? "tensor" : "total"}, {"clamp", a.clamp},
                {"margin", a.margin}, {"output", out}});
  if (data.unsorted_rows() > 0) std::cerr << "warning: " << data.unsorted_rows() << " rows were not sorted and have been sorted\n";

  const FittedModel model = fit_model(data, trunc, opts);
  for (const auto& w : model.warnings) std::cerr << "warning: " << w << '\n';
  save_model(out, model);
  std::cout << "basis " << trunc.basis_size() << " terms, " << model.m << " series\n";
  std::cout << "value transform scale " << format_double(model.transform.scale) << " shift "
            << format_double(model.transform.shift) << '\n';
  for (std::size_t j = 0; j < model.fit_residual.size(); ++j) {
    std::cout << "residual[" << j << "] " << format_double(model.fit_residual[j]) << '\n';
  }
  return kOk;
}

int run_eval(const EvalArgs& a, const std::string& out) {
  const FittedModel model = load_model(a.model);
  MultiSurfaceDataset truth_data;
  const bool have_truth_file = !a.truth.empty();
  if (have_truth_file) truth_data = load_csv(a.truth);

  Eigen::MatrixXd points;
  if (!a.points_file.empty()) {
    points = load_points_csv(a.points_file);
  } else if (!a.grid.empty()) {
    SampleSpec s;
    s.kind = Sampling::CellGrid;
    s.grid = parse_grid(a.grid);
    points = sample_points(model.domain, s);
  } else if (have_truth_file) {
    points = truth_data.points();
  } else {
    throw Error(ErrorKind::InvalidArgument, "eval needs --points-file, --grid or --truth");
  }
  if (points.cols() != model.dims()) {
    throw Error(ErrorKind::DimensionMismatch, "points have " + std::to_string(points.cols()) +
                                                  " coordinates, model has " + std::to_string(model.dims()));
  }
  print_config({{"command", "eval"}, {"model", a.model}, {"method", to_string(model.method)},
                {"points_file", a.points_file}, {"grid", a.grid}, {"truth", a.truth}, {"generator", a.generator},
                {"eps_w", a.eps_w}, {"output", out}});

  const ReconstructionReport report = reconstruct_grid(model, points);
  std::ofstream csv(out, std::ios::binary);
  if (!csv) throw Error(ErrorKind::IoError, "cannot write " + out);
  for (int k = 0; k < model.dims(); ++k) csv << (k ? "," : "") << 'x' << k + 1;
  for (int j = 0; j < model.m; ++j) csv << ",f" << j + 1;
  csv << ",max_imag,min_offdiag,status\n";
  for (Eigen::Index i = 0; i < report.size(); ++i) {
    for (int k = 0; k < model.dims(); ++k) csv << (k ? "," : "") << format_double(points(i, k));
    for (int j = 0; j < model.m; ++j) csv << ',' << format_double(report.values(i, j));
    std::string status = report.ok(i) ? "ok" : report.failures[static_cast<std::size_t>(i)];
    const auto colon = status.find(':');
    if (colon != std::string::npos) status = status.substr(0, colon);
    csv << ',' << format_double(report.max_imag[i]) << ',' << format_double(report.min_offdiag[i]) << ',' << status
        << '\n';
  }
  std::cout << "evaluated " << report.size() << " points, " << report.failed_count() << " failed\n";

  Eigen::MatrixXd truth;
  if (!a.generator.empty()) {
    truth = evaluate_sorted(find_generator(a.generator), points);
  } else if (have_truth_file) {
    if (truth_data.points() != points) {
      throw Error(ErrorKind::ShapeMismatch, "truth file points differ from the evaluation points");
    }
    truth = truth_data.values();
  }
  if (truth.size() > 0) {
    if (truth.cols() != model.m) throw Error(ErrorKind::ShapeMismatch, "truth has a different surface count");
    const Metrics mt = metric_suite(truth, report.values, GapWeightedConfig{a.eps_w});
    std::cout << "max_abs " << format_double(mt.max_abs) << '\n'
              << "mae " << format_double(mt.mae) << '\n'
              << "rmse " << format_double(mt.rmse) << '\n'
              << "gap_weighted " << format_double(mt.gap_weighted) << '\n';
  }
  return report.failed_count() == report.size() && report.size() > 0 ? kNumeric : kOk;
}

int run_sweep_cmd(const SweepArgs& a, std::uint64_t seed, bool seed_given, const std::string& out) {
  SweepSpec spec;
  spec.seed = seed;
  if (!a.spec_file.empty()) spec = parse_sweep_spec(read_file(a.spec_file), spec);
  if (seed_given) spec.seed = seed;
  if (!a.generator.empty()) spec.generator = a.generator;
  if (!a.dataset.empty()) spec.dataset = a.dataset;
  if (!a.methods.empty()) {
    spec.methods.clear();
    for (const auto& m : a.methods) spec.methods.push_back(parse_method(m));
  }
  if (!a.degrees.empty()) spec.degrees = a.degrees;
  if (!a.noises.empty()) spec.noises = a.noises;
  if (!a.noise_target.empty()) {
    if (a.noise_target != "surface" && a.noise_target != "invariants") {
      throw Error(ErrorKind::InvalidArgument, "--noise-target is surface|invariants");
    }
    spec.noise_target = a.noise_target == "surface" ? NoiseTarget::SurfaceValues : NoiseTarget::Invariants;
  }
  if (a.points > 0) spec.train_points = a.points;
  if (!a.train_grid.empty()) spec.train_grid = parse_grid(a.train_grid);
  if (!a.grid.empty()) spec.eval_grid = parse_grid(a.grid);
  if (a.eval_training) spec.eval_on_training = true;
  if (!a.projection.empty()) spec.projection = parse_projection(a.projection);
  if (!a.clamp) spec.schmeisser.clamp_negative_offdiag = false;
  if (a.eps_w > 0.0) spec.eps_w = a.eps_w;
  if (!a.truncation.empty()) {
    if (a.truncation != "total" && a.truncation != "tensor") throw Error(ErrorKind::InvalidArgument, "--truncation is total|tensor");
    spec.truncation = a.truncation == "tensor" ? Truncation::Kind::Tensor : Truncation::Kind::TotalDegree;
  }
  if (spec.methods.empty() || spec.degrees.empty()) {
    throw Error(ErrorKind::InvalidArgument, "sweep needs at least one method and one degree");
  }
  std::cerr << "# config " << json::parse(sweep_spec_json(spec)).dump() << '\n';

  const std::string started = utc_timestamp();
  const std::vector<SweepRow> rows = run_sweep(spec);
  const std::string finished = utc_timestamp();
  write_sweep_csv(out, rows);
  write_sweep_json(sidecar(out), spec, rows, started, finished);

  std::size_t succeeded = 0;
  for (const SweepRow& r : rows) {
    const bool ok = r.status.rfind("failed", 0) != 0;
    succeeded += ok ? 1 : 0;
    std::cout << to_string(r.method) << " degree " << r.degree << " noise " << format_double(r.noise) << " max_abs "
              << format_double(r.metrics.max_abs) << ' ' << r.status << '\n';
  }
  return succeeded > 0 ? kOk : kNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstruct intersecting surfaces from value-sorted samples"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(INVSURF_VERSION));

  std::uint64_t seed = 0;
  std::string output;
  int verbosity = 0;
  auto* seed_opt = app.add_option("--seed", seed, "64-bit RNG seed")->capture_default_str();
  app.add_option("-o,--output", output, "Output path");
  app.add_flag("-v,--verbose", verbosity, "More diagnostics on stderr");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a dataset CSV");
  gen_cmd->add_option("generator", gen.generator, "Generator name")->required();
  auto* points_opt = gen_cmd->add_option("--points", gen.points, "Random sample count")->capture_default_str();
  gen_cmd->add_option("--grid", gen.grid, "Grid AxB (endpoints included)")->excludes(points_opt);
  gen_cmd->add_flag("--cell", gen.cell, "Use cell-centred grid points");
  gen_cmd->add_option("--noise", gen.noise, "Uniform noise on the surface values");
  gen_cmd->add_option("--axes", gen.axes, "Axes a,b for the conical generators")->delimiter(',');

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model to a dataset CSV");
  fit_cmd->add_option("dataset", fit.dataset, "Dataset CSV")->required();
  fit_cmd->add_option("--method", fit.method, "frobenius|schmeisser|colleague|direct")->capture_default_str();
  fit_cmd->add_option("--projection", fit.projection, "real|magnitude|reject")->capture_default_str();
  fit_cmd->add_option("--degree", fit.degree, "Truncation degree")->capture_default_str();
  fit_cmd->add_flag("--tensor", fit.tensor, "Tensor truncation instead of total degree");
  fit_cmd->add_flag("--clamp,!--no-clamp", fit.clamp, "Clamp small negative Schmeisser off-diagonals");
  fit_cmd->add_option("--margin", fit.margin, "Value-axis margin in (0, 0.5)")->capture_default_str();

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Reconstruct surfaces from a model");
  eval_cmd->add_option("model", ev.model, "Model file")->required();
  eval_cmd->add_option("--points-file", ev.points_file, "CSV with x1..xd columns");
  eval_cmd->add_option("--grid", ev.grid, "Cell-centred grid AxB over the model domain");
  eval_cmd->add_option("--truth", ev.truth, "Dataset CSV with the true values");
  eval_cmd->add_option("--generator", ev.generator, "Generator providing the true values");
  eval_cmd->add_option("--eps-w", ev.eps_w, "Gap-weighted error offset")->capture_default_str();

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a degree or noise sweep");
  sweep_cmd->add_option("--spec", sw.spec_file, "JSON spec file (keys mirror the flags)");
  sweep_cmd->add_option("--generator", sw.generator, "Generator name");
  sweep_cmd->add_option("--dataset", sw.dataset, "Dataset CSV instead of a generator");
  sweep_cmd->add_option("--method,--methods", sw.methods, "Methods")->delimiter(',');
  sweep_cmd->add_option("--degree,--degrees", sw.degrees, "Degrees")->delimiter(',');
  sweep_cmd->add_option("--noise,--noises", sw.noises, "Noise levels")->delimiter(',');
  sweep_cmd->add_option("--noise-target", sw.noise_target, "invariants|surface");
  sweep_cmd->add_option("--points", sw.points, "Random training points");
  sweep_cmd->add_option("--train-grid", sw.train_grid, "Training grid AxB instead of random points");
  sweep_cmd->add_option("--grid", sw.grid, "Held-out evaluation grid AxB");
  sweep_cmd->add_flag("--eval-training", sw.eval_training, "Measure errors on the training points");
  sweep_cmd->add_option("--projection", sw.projection, "real|magnitude|reject");
  sweep_cmd->add_flag("--clamp,!--no-clamp", sw.clamp, "Clamp small negative Schmeisser off-diagonals");
  sweep_cmd->add_option("--eps-w", sw.eps_w, "Gap-weighted error offset");
  sweep_cmd->add_option("--truncation", sw.truncation, "total|tensor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (output.empty()) throw Error(ErrorKind::InvalidArgument, "-o/--output is required");
    if (verbosity > 0) std::cerr << "# invsurf " << INVSURF_VERSION << '\n';
    if (gen_cmd->parsed()) return run_gen(gen, seed, output);
    if (fit_cmd->parsed()) return run_fit(fit, output);
    if (eval_cmd->parsed()) return run_eval(ev, output);
    if (sweep_cmd->parsed()) return run_sweep_cmd(sw, seed, seed_opt->count() > 0, output);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {  // filesystem and stream failures
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
