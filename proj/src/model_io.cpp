#include "invsurf/model_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace invsurf {

namespace {

void put_u8(std::ostream& out, std::uint8_t v) { out.put(static_cast<char>(v)); }

void put_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xffU));
}

void put_u64(std::ostream& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xffU));
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_bytes(std::istream& in, int n) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), n)) throw Error(ErrorKind::ParseError, "model file is truncated");
  std::uint64_t v = 0;
  for (int i = n - 1; i >= 0; --i) v = (v << 8) | buf[i];
  return v;
}

std::uint8_t get_u8(std::istream& in) { return static_cast<std::uint8_t>(get_bytes(in, 1)); }
std::uint32_t get_u32(std::istream& in) { return static_cast<std::uint32_t>(get_bytes(in, 4)); }
std::uint64_t get_u64(std::istream& in) { return get_bytes(in, 8); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

template <typename Enum>
Enum checked_enum(std::uint32_t v, std::uint32_t count, const char* what) {
  if (v >= count) throw Error(ErrorKind::ParseError, std::string("invalid ") + what + " code " + std::to_string(v));
  return static_cast<Enum>(v);
}

}  // namespace

void write_model(std::ostream& out, const FittedModel& model) {
  const int d = model.dims();
  out.write(kModelMagic, sizeof kModelMagic);
  put_u32(out, kModelVersion);
  put_u32(out, static_cast<std::uint32_t>(model.method));
  put_u32(out, static_cast<std::uint32_t>(model.projection));
  put_u32(out, static_cast<std::uint32_t>(model.m));
  put_u32(out, static_cast<std::uint32_t>(d));
  put_u32(out, static_cast<std::uint32_t>(model.truncation.kind()));
  for (int k = 0; k < d; ++k) put_u32(out, static_cast<std::uint32_t>(model.truncation.max_degree(k)));
  for (int k = 0; k < d; ++k) {
    put_f64(out, model.domain.lo(k));
    put_f64(out, model.domain.hi(k));
  }
  put_f64(out, model.transform.scale);
  put_f64(out, model.transform.shift);
  put_u8(out, model.schmeisser.clamp_negative_offdiag ? 1 : 0);
  put_f64(out, model.schmeisser.negative_tolerance);
  put_f64(out, model.schmeisser.zero_remainder_tolerance);
  for (std::size_t j = 0; j < model.series.size(); ++j) {
    const ChebyshevSeriesND& s = model.series[j];
    put_f64(out, j < model.fit_residual.size() ? model.fit_residual[j] : 0.0);
    put_u64(out, static_cast<std::uint64_t>(s.coeffs().size()));
    for (Eigen::Index t = 0; t < s.coeffs().size(); ++t) {
      for (int k = 0; k < d; ++k) put_u32(out, static_cast<std::uint32_t>(s.indices()(t, k)));
      put_f64(out, s.coeffs()[t]);
    }
  }
  if (!out) throw Error(ErrorKind::IoError, "failed to write model");
}

FittedModel read_model(std::istream& in) {
  char magic[sizeof kModelMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kModelMagic, sizeof magic) != 0) {
    throw Error(ErrorKind::ParseError, "not a model file (bad magic)");
  }
  const std::uint32_t version = get_u32(in);
  if (version != kModelVersion) {
    throw Error(ErrorKind::ParseError, "unsupported model version " + std::to_string(version));
  }
  FittedModel model;
  model.method = checked_enum<Method>(get_u32(in), 4, "method");
  model.projection = checked_enum<Projection>(get_u32(in), 3, "projection");
  model.m = static_cast<int>(get_u32(in));
  const auto d = static_cast<int>(get_u32(in));
  if (model.m < 1 || model.m > 1024 || d < 1 || d > 64) throw Error(ErrorKind::ParseError, "implausible model shape");
  const auto kind = checked_enum<Truncation::Kind>(get_u32(in), 2, "truncation");
  std::vector<int> degrees(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) degrees[k] = static_cast<int>(get_u32(in));
  if (kind == Truncation::Kind::Tensor) {
    model.truncation = Truncation::tensor(degrees);
  } else {
    model.truncation = Truncation::total_degree(d, degrees[0]);
  }
  std::vector<std::pair<double, double>> bounds(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    bounds[k].first = get_f64(in);
    bounds[k].second = get_f64(in);
  }
  model.domain = DomainBox(std::move(bounds));
  model.transform.scale = get_f64(in);
  model.transform.shift = get_f64(in);
  model.schmeisser.clamp_negative_offdiag = get_u8(in) != 0;
  model.schmeisser.negative_tolerance = get_f64(in);
  model.schmeisser.zero_remainder_tolerance = get_f64(in);
  for (int j = 0; j < model.m; ++j) {
    model.fit_residual.push_back(get_f64(in));
    const std::uint64_t terms = get_u64(in);
    if (terms > (1ULL << 26)) throw Error(ErrorKind::ParseError, "implausible term count");
    Eigen::MatrixXi idx(static_cast<Eigen::Index>(terms), d);
    Eigen::VectorXd coeffs(static_cast<Eigen::Index>(terms));
    for (Eigen::Index t = 0; t < coeffs.size(); ++t) {
      for (int k = 0; k < d; ++k) idx(t, k) = static_cast<int>(get_u32(in));
      coeffs[t] = get_f64(in);
    }
    model.series.emplace_back(model.domain, model.truncation, std::move(idx), std::move(coeffs));
  }
  if (in.peek() != std::char_traits<char>::eof()) throw Error(ErrorKind::ParseError, "trailing bytes after model");
  return model;
}

void save_model(const std::filesystem::path& path, const FittedModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  write_model(out, model);
}

FittedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return read_model(in);
}

}  // namespace invsurf
