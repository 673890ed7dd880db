#include "invsurf/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace invsurf {

namespace {

struct Table {
  int x_cols = 0;
  int f_cols = 0;
  std::vector<std::vector<double>> rows;
  std::string domain_line;
  std::string provenance;
  std::size_t domain_line_no = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(s);
  while (std::getline(in, field, sep)) out.push_back(trim(field));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& field, std::size_t line_no) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (!field.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": '" + field + "' is not a number");
  }
  return v;
}

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  Table t;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string body = trim(line);
    if (body.empty()) continue;
    if (body[0] == '#') {
      const std::string text = trim(body.substr(1));
      if (text.rfind("domain:", 0) == 0) {
        t.domain_line = trim(text.substr(7));
        t.domain_line_no = line_no;
      } else if (text.rfind("provenance:", 0) == 0) {
        t.provenance = trim(text.substr(11));
      }
      continue;
    }
    const std::vector<std::string> fields = split(body, ',');
    if (!have_header) {
      for (const auto& name : fields) {
        const bool is_x = name.size() > 1 && name[0] == 'x';
        const bool is_f = name.size() > 1 && name[0] == 'f';
        if (is_x && t.f_cols == 0) {
          ++t.x_cols;
        } else if (is_f) {
          ++t.f_cols;
        } else {
          throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": header must be x1,...,xd,f1,...,fm");
        }
      }
      if (t.x_cols == 0) throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": no x columns");
      have_header = true;
      continue;
    }
    if (static_cast<int>(fields.size()) != t.x_cols + t.f_cols) {
      throw Error(ErrorKind::DimensionMismatch, "line " + std::to_string(line_no) + ": expected " +
                                                    std::to_string(t.x_cols + t.f_cols) + " fields, found " +
                                                    std::to_string(fields.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) row[i] = parse_number(fields[i], line_no);
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw Error(ErrorKind::ParseError, path.string() + ": missing header line");
  return t;
}

DomainBox parse_domain(const Table& t) {
  std::vector<std::pair<double, double>> bounds;
  for (const std::string& part : split(t.domain_line, ';')) {
    if (part.empty()) continue;
    std::istringstream in(part);
    std::string lo, hi, extra;
    in >> lo >> hi;
    if (hi.empty() || (in >> extra)) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(t.domain_line_no) + ": domain entries are 'lo hi'");
    }
    bounds.emplace_back(parse_number(lo, t.domain_line_no), parse_number(hi, t.domain_line_no));
  }
  if (static_cast<int>(bounds.size()) != t.x_cols) {
    throw Error(ErrorKind::DimensionMismatch, "line " + std::to_string(t.domain_line_no) + ": domain has " +
                                                  std::to_string(bounds.size()) + " dimensions, header has " +
                                                  std::to_string(t.x_cols));
  }
  return DomainBox(std::move(bounds));
}

}  // namespace

MultiSurfaceDataset::MultiSurfaceDataset(Eigen::MatrixXd points, Eigen::MatrixXd values, DomainBox domain,
                                         std::string provenance)
    : points_(std::move(points)),
      values_(std::move(values)),
      domain_(std::move(domain)),
      provenance_(std::move(provenance)) {
  if (points_.rows() != values_.rows()) throw Error(ErrorKind::ShapeMismatch, "points and values differ in row count");
  if (points_.cols() != domain_.dims()) {
    throw Error(ErrorKind::DimensionMismatch, "points have " + std::to_string(points_.cols()) +
                                                  " coordinates, domain has " + std::to_string(domain_.dims()));
  }
  if (values_.cols() < 1) throw Error(ErrorKind::EmptyInput, "dataset needs at least one surface");
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    domain_.map_point(points_.row(i).transpose());
    auto row = values_.row(i);
    if (!std::is_sorted(row.begin(), row.end())) {
      std::sort(row.begin(), row.end());
      ++unsorted_rows_;
    }
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void save_csv(const std::filesystem::path& path, const MultiSurfaceDataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << "# domain:";
  for (int k = 0; k < data.dims(); ++k) {
    out << (k == 0 ? " " : "; ") << format_double(data.domain().lo(k)) << ' ' << format_double(data.domain().hi(k));
  }
  out << '\n';
  if (!data.provenance().empty()) out << "# provenance: " << data.provenance() << '\n';
  for (int k = 0; k < data.dims(); ++k) out << (k ? "," : "") << 'x' << k + 1;
  for (int j = 0; j < data.m(); ++j) out << ",f" << j + 1;
  out << '\n';
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    for (int k = 0; k < data.dims(); ++k) out << (k ? "," : "") << format_double(data.points()(i, k));
    for (int j = 0; j < data.m(); ++j) out << ',' << format_double(data.values()(i, j));
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

MultiSurfaceDataset load_csv(const std::filesystem::path& path) {
  const Table t = read_table(path);
  if (t.f_cols == 0) throw Error(ErrorKind::ParseError, path.string() + ": no f columns in header");
  if (t.rows.empty()) throw Error(ErrorKind::EmptyInput, path.string() + ": no data rows");
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  Eigen::MatrixXd points(n, t.x_cols), values(n, t.f_cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 0; k < t.x_cols; ++k) points(i, k) = t.rows[i][k];
    for (int j = 0; j < t.f_cols; ++j) values(i, j) = t.rows[i][t.x_cols + j];
  }
  DomainBox domain;
  if (!t.domain_line.empty()) {
    domain = parse_domain(t);
  } else {
    std::vector<std::pair<double, double>> bounds;
    for (int k = 0; k < t.x_cols; ++k) {
      double lo = points.col(k).minCoeff(), hi = points.col(k).maxCoeff();
      if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
      }
      bounds.emplace_back(lo, hi);
    }
    domain = DomainBox(std::move(bounds));
  }
  return MultiSurfaceDataset(std::move(points), std::move(values), std::move(domain), t.provenance);
}

Eigen::MatrixXd load_points_csv(const std::filesystem::path& path) {
  const Table t = read_table(path);
  Eigen::MatrixXd points(static_cast<Eigen::Index>(t.rows.size()), t.x_cols);
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (int k = 0; k < t.x_cols; ++k) points(static_cast<Eigen::Index>(i), k) = t.rows[i][k];
  return points;
}

}  // namespace invsurf
