#include "invsurf/sweep.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>

#ifndef INVSURF_VERSION
#define INVSURF_VERSION "unknown"
#endif

namespace invsurf {

namespace {

using nlohmann::json;

Truncation make_truncation(Truncation::Kind kind, int dims, int degree) {
  if (kind == Truncation::Kind::Tensor) return Truncation::tensor(std::vector<int>(static_cast<std::size_t>(dims), degree));
  return Truncation::total_degree(dims, degree);
}

std::uint64_t noise_seed(std::uint64_t seed, std::size_t noise_index) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (noise_index + 1));
}

SweepRow failed_row(Method method, int degree, double noise, const std::string& kind) {
  SweepRow row;
  row.method = method;
  row.degree = degree;
  row.noise = noise;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.metrics.max_abs = row.metrics.mae = row.metrics.rmse = row.metrics.gap_weighted = nan;
  row.status = "failed:" + kind;
  return row;
}

}  // namespace

std::vector<int> default_eval_grid(int dims) {
  if (dims == 1) return {2000};
  if (dims == 2) return {100, 100};
  return std::vector<int>(static_cast<std::size_t>(dims), 20);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  if (spec.methods.empty()) return rows;
  if (spec.degrees.empty()) throw Error(ErrorKind::InvalidArgument, "sweep needs at least one degree");
  const std::vector<double> noises = spec.noises.empty() ? std::vector<double>{0.0} : spec.noises;

  MultiSurfaceDataset train;
  Eigen::MatrixXd eval_points;
  Eigen::MatrixXd truth;
  if (!spec.dataset.empty()) {
    train = load_csv(spec.dataset);
    eval_points = train.points();
    truth = train.values();
  } else {
    const Generator gen = find_generator(spec.generator);
    SampleSpec sample;
    sample.seed = spec.seed;
    if (spec.train_grid.empty()) {
      sample.kind = Sampling::Random;
      sample.points = spec.train_points;
    } else {
      sample.kind = Sampling::Grid;
      sample.grid = spec.train_grid;
    }
    train = generate(gen, sample);
    if (spec.eval_on_training) {
      eval_points = train.points();
    } else {
      SampleSpec eval;
      eval.kind = Sampling::CellGrid;
      eval.grid = spec.eval_grid.empty() ? default_eval_grid(train.dims()) : spec.eval_grid;
      eval_points = sample_points(train.domain(), eval);
    }
    truth = evaluate_sorted(gen, eval_points);
  }

  for (Method method : spec.methods) {
    for (int degree : spec.degrees) {
      for (std::size_t ni = 0; ni < noises.size(); ++ni) {
        const double noise = noises[ni];
        try {
          ModelOptions opts;
          opts.method = method;
          opts.projection = spec.projection;
          opts.schmeisser = spec.schmeisser;
          MultiSurfaceDataset data = train;
          if (noise > 0.0) {
            if (spec.noise_target == NoiseTarget::SurfaceValues) {
              data = add_noise(train, noise, noise_seed(spec.seed, ni));
            } else {
              opts.invariant_noise = noise;
              opts.noise_seed = noise_seed(spec.seed, ni);
            }
          }
          const FittedModel model = fit_model(data, make_truncation(spec.truncation, data.dims(), degree), opts);
          const ReconstructionReport report = reconstruct_grid(model, eval_points);
          SweepRow row;
          row.method = method;
          row.degree = degree;
          row.noise = noise;
          row.metrics = metric_suite(truth, report.values, GapWeightedConfig{spec.eps_w});
          const Eigen::Index failed = report.failed_count();
          row.status = failed == 0 ? "ok" : (failed == report.size() ? "failed:AllPoints" : "partial:" + std::to_string(failed));
          rows.push_back(row);
        } catch (const Error& e) {
          rows.push_back(failed_row(method, degree, noise, to_string(e.kind())));
        }
      }
    }
  }
  return rows;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << "method,degree,noise,max_abs,mae,rmse,gap_weighted,status\n";
  for (const SweepRow& r : rows) {
    out << to_string(r.method) << ',' << r.degree << ',' << format_double(r.noise) << ','
        << format_double(r.metrics.max_abs) << ',' << format_double(r.metrics.mae) << ','
        << format_double(r.metrics.rmse) << ',' << format_double(r.metrics.gap_weighted) << ',' << r.status << '\n';
  }
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

namespace {

json spec_to_json(const SweepSpec& spec) {
  json j;
  j["generator"] = spec.generator;
  j["dataset"] = spec.dataset;
  json methods = json::array();
  for (Method m : spec.methods) methods.push_back(to_string(m));
  j["methods"] = methods;
  j["degrees"] = spec.degrees;
  j["noises"] = spec.noises;
  j["noise_target"] = to_string(spec.noise_target);
  j["points"] = spec.train_points;
  j["train_grid"] = spec.train_grid;
  j["eval_grid"] = spec.eval_grid;
  j["eval_on_training"] = spec.eval_on_training;
  j["truncation"] = to_string(spec.truncation);
  j["projection"] = to_string(spec.projection);
  j["clamp"] = spec.schmeisser.clamp_negative_offdiag;
  j["negative_tolerance"] = spec.schmeisser.negative_tolerance;
  j["zero_remainder_tolerance"] = spec.schmeisser.zero_remainder_tolerance;
  j["eps_w"] = spec.eps_w;
  j["seed"] = spec.seed;
  return j;
}

}  // namespace

std::string sweep_spec_json(const SweepSpec& spec) { return spec_to_json(spec).dump(2); }

void write_sweep_json(const std::filesystem::path& path, const SweepSpec& spec, const std::vector<SweepRow>& rows,
                      const std::string& started, const std::string& finished) {
  json j;
  j["spec"] = spec_to_json(spec);
  j["seed"] = spec.seed;
  j["started"] = started;
  j["finished"] = finished;
  j["library_version"] = INVSURF_VERSION;
  j["rows"] = rows.size();
  std::size_t failed = 0;
  for (const SweepRow& r : rows) failed += r.status.rfind("failed", 0) == 0 ? 1 : 0;
  j["failed_rows"] = failed;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

SweepSpec parse_sweep_spec(const std::string& json_text, SweepSpec base) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("sweep spec: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, "sweep spec must be a JSON object");
  static const std::set<std::string> known = {"generator", "dataset",    "methods",          "degrees",
                                              "noises",    "noise_target", "points",         "train_grid",
                                              "eval_grid", "eval_on_training", "truncation", "projection",
                                              "clamp",     "negative_tolerance", "zero_remainder_tolerance",
                                              "eps_w",     "seed"};
  SweepSpec s = std::move(base);
  try {
    for (const auto& [key, value] : j.items()) {
      if (!known.count(key)) throw Error(ErrorKind::InvalidArgument, "unknown sweep spec key '" + key + "'");
      if (key == "generator") s.generator = value.get<std::string>();
      else if (key == "dataset") s.dataset = value.get<std::string>();
      else if (key == "methods") {
        s.methods.clear();
        for (const auto& m : value) s.methods.push_back(parse_method(m.get<std::string>()));
      } else if (key == "degrees") s.degrees = value.get<std::vector<int>>();
      else if (key == "noises") s.noises = value.get<std::vector<double>>();
      else if (key == "noise_target") {
        const auto t = value.get<std::string>();
        if (t != "surface" && t != "invariants") throw Error(ErrorKind::InvalidArgument, "noise_target is surface|invariants");
        s.noise_target = t == "surface" ? NoiseTarget::SurfaceValues : NoiseTarget::Invariants;
      } else if (key == "points") s.train_points = value.get<Eigen::Index>();
      else if (key == "train_grid") s.train_grid = value.get<std::vector<int>>();
      else if (key == "eval_grid") s.eval_grid = value.get<std::vector<int>>();
      else if (key == "eval_on_training") s.eval_on_training = value.get<bool>();
      else if (key == "truncation") {
        const auto t = value.get<std::string>();
        if (t != "total" && t != "tensor") throw Error(ErrorKind::InvalidArgument, "truncation is total|tensor");
        s.truncation = t == "tensor" ? Truncation::Kind::Tensor : Truncation::Kind::TotalDegree;
      } else if (key == "projection") s.projection = parse_projection(value.get<std::string>());
      else if (key == "clamp") s.schmeisser.clamp_negative_offdiag = value.get<bool>();
      else if (key == "negative_tolerance") s.schmeisser.negative_tolerance = value.get<double>();
      else if (key == "zero_remainder_tolerance") s.schmeisser.zero_remainder_tolerance = value.get<double>();
      else if (key == "eps_w") s.eps_w = value.get<double>();
      else if (key == "seed") s.seed = value.get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("sweep spec: ") + e.what());
  }
  return s;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace invsurf
