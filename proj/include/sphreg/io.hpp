#ifndef SPHREG_IO_HPP
#define SPHREG_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sphreg/frontier.hpp"
#include "sphreg/scaling.hpp"
#include "sphreg/sht.hpp"
#include "sphreg/simulate.hpp"

namespace sphreg {

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 17 significant digits: enough for bit-faithful double round trips.
inline std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  return in;
}

inline std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

inline double parse_double(const std::string& s, const std::filesystem::path& path,
                           std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError(path.string() + ":" + std::to_string(line_no) +
                      ": not a number: '" + s + "'");
  }
}

inline long parse_long(const std::string& s, const std::filesystem::path& path,
                       std::size_t line_no) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError(path.string() + ":" + std::to_string(line_no) +
                      ": not an integer: '" + s + "'");
  }
}

inline void expect_header(std::ifstream& in, const std::string& expected,
                          const std::filesystem::path& path, std::size_t& line_no) {
  std::string line;
  if (!std::getline(in, line))
    throw FormatError(path.string() + ": empty file, expected header '" + expected + "'");
  ++line_no;
  if (strip_cr(line) != expected)
    throw FormatError(path.string() + ": expected header '" + expected + "', got '" +
                      strip_cr(line) + "'");
}

}  // namespace detail

/// Coefficient CSV: header ell,m,re,im, one row per (l, m) in flat order.
inline void write_coefficients(const std::filesystem::path& path,
                               const CoefficientSet& a) {
  auto out = detail::open_output(path);
  out << "ell,m,re,im\n";
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const auto [l, m] = degree_order(i);
    out << l << ',' << m << ',' << format_double(a.entries()[i].real()) << ','
        << format_double(a.entries()[i].imag()) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

inline CoefficientSet read_coefficients(const std::filesystem::path& path,
                                        bool require_real = false) {
  auto in = detail::open_input(path);
  std::size_t line_no = 0;
  detail::expect_header(in, "ell,m,re,im", path, line_no);

  std::vector<std::complex<double>> entries;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_cr(line);
    if (line.empty()) continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != 4)
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 4 fields, got " + std::to_string(fields.size()));
    const long l = detail::parse_long(fields[0], path, line_no);
    const long m = detail::parse_long(fields[1], path, line_no);
    const auto [expected_l, expected_m] =
        degree_order(static_cast<Eigen::Index>(entries.size()));
    if (l != expected_l || m != expected_m)
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": rows must follow the flat (ell, m) order; expected (" +
                        std::to_string(expected_l) + "," + std::to_string(expected_m) +
                        "), got (" + std::to_string(l) + "," + std::to_string(m) + ")");
    entries.emplace_back(detail::parse_double(fields[2], path, line_no),
                         detail::parse_double(fields[3], path, line_no));
  }

  const auto count = static_cast<Eigen::Index>(entries.size());
  if (count == 0) throw FormatError(path.string() + ": no coefficient rows");
  const int band_limit = degree_order(count - 1).first;
  if (CoefficientSet::coefficient_count(band_limit) != count)
    throw FormatError(path.string() + ": incomplete coefficient set (" +
                      std::to_string(count) + " rows is not a full band)");

  CoefficientSet a(band_limit,
                   Eigen::Map<const ComplexVector<double>>(entries.data(), count));
  if (require_real && !a.satisfies_conjugate_symmetry(1e-12))
    throw FormatError(path.string() + ": coefficients violate the real-field symmetry");
  a.set_real_field(a.satisfies_conjugate_symmetry(0.0));
  return a;
}

/// Weights CSV: header ell,beta, one row per degree, ascending and complete.
inline void write_weights(const std::filesystem::path& path, const DegreeWeights& beta) {
  auto out = detail::open_output(path);
  out << "ell,beta\n";
  for (int l = 0; l <= beta.band_limit(); ++l)
    out << l << ',' << format_double(beta[l]) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

inline DegreeWeights read_weights(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::size_t line_no = 0;
  detail::expect_header(in, "ell,beta", path, line_no);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_cr(line);
    if (line.empty()) continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != 2)
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 2 fields");
    if (detail::parse_long(fields[0], path, line_no) !=
        static_cast<long>(values.size()))
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": degrees must be 0,1,2,... without gaps");
    values.push_back(detail::parse_double(fields[1], path, line_no));
  }
  if (values.empty()) throw FormatError(path.string() + ": no weight rows");
  return DegreeWeights(Eigen::Map<const RealVector<double>>(
      values.data(), static_cast<Eigen::Index>(values.size())));
}

/// Spectrum CSV: header ell,C.
inline void write_spectrum(const std::filesystem::path& path, const PowerSpectrum& c) {
  auto out = detail::open_output(path);
  out << "ell,C\n";
  for (int l = 0; l <= c.band_limit(); ++l)
    out << l << ',' << format_double(c[l]) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

inline PowerSpectrum read_spectrum(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::size_t line_no = 0;
  detail::expect_header(in, "ell,C", path, line_no);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_cr(line);
    if (line.empty()) continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != 2)
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 2 fields");
    if (detail::parse_long(fields[0], path, line_no) !=
        static_cast<long>(values.size()))
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": degrees must be 0,1,2,... without gaps");
    values.push_back(detail::parse_double(fields[1], path, line_no));
  }
  if (values.empty()) throw FormatError(path.string() + ": no spectrum rows");
  return PowerSpectrum(Eigen::Map<const RealVector<double>>(
      values.data(), static_cast<Eigen::Index>(values.size())));
}

/// Frontier CSV: lambda,discrepancy,hybrid_norm,l0_count, ascending in
/// lambda. Each segment contributes its endpoints plus samples_per_segment
/// interior points so the quadratic pieces are visible in plots.
inline void write_frontier_csv(const std::filesystem::path& path, const Frontier& frontier,
                               int samples_per_segment = 1) {
  if (samples_per_segment < 0)
    throw std::domain_error("samples_per_segment must be >= 0");
  auto out = detail::open_output(path);
  out << "lambda,discrepancy,hybrid_norm,l0_count\n";
  const auto emit = [&](double lambda) {
    const auto point = frontier.evaluate(lambda);
    out << format_double(lambda) << ',' << format_double(point.discrepancy) << ','
        << format_double(point.hybrid_norm) << ',' << point.active_degrees << '\n';
  };
  emit(0.0);
  for (const auto& seg : frontier.segments()) {
    for (int s = 1; s <= samples_per_segment; ++s) {
      const double t = static_cast<double>(s) / (samples_per_segment + 1);
      emit(seg.lambda_lo + t * (seg.lambda_hi - seg.lambda_lo));
    }
    emit(seg.lambda_hi);
  }
  if (!out) throw IoError("write failed: " + path.string());
}

/// L0 staircase CSV: one row per knot interval.
inline void write_l0_csv(const std::filesystem::path& path, const L0Frontier& staircase) {
  auto out = detail::open_output(path);
  out << "lambda_lo,lambda_hi,discrepancy_lo,discrepancy_hi,l0_count\n";
  for (const auto& step : staircase.steps) {
    out << format_double(step.lambda_lo) << ',' << format_double(step.lambda_hi) << ','
        << format_double(step.discrepancy_lo) << ','
        << format_double(step.discrepancy_hi) << ',' << step.active_degrees << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

/// Scaling curve CSV: gamma,discrepancy,marker with a uniform sweep over
/// [0, 2 gamma_norm] plus marker rows for gamma_norm and gamma_opt.
inline void write_scaling_csv(const std::filesystem::path& path, const ScalingReport& report,
                              int samples = 100) {
  if (samples < 2) throw std::domain_error("scaling sweep needs at least 2 samples");
  struct Row {
    double gamma;
    std::string marker;
  };
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(samples) + 2);
  for (int i = 0; i < samples; ++i)
    rows.push_back({2.0 * report.gamma_norm * i / (samples - 1), ""});
  rows.push_back({report.gamma_norm, "gamma_norm"});
  rows.push_back({report.gamma_opt, "gamma_opt"});
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.gamma < b.gamma; });

  auto out = detail::open_output(path);
  out << "gamma,discrepancy,marker\n";
  for (const auto& row : rows)
    out << format_double(row.gamma) << ','
        << format_double(report.discrepancy_at(row.gamma)) << ',' << row.marker << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

/// Grid field CSV: a comment line with the grid parameters, then
/// theta,phi,value rows in grid row-major order. Real fields only.
inline void write_grid_field(const std::filesystem::path& path, const GridField& field) {
  double scale = 0.0;
  for (Eigen::Index i = 0; i < field.values.size(); ++i)
    scale = std::max(scale, std::abs(field.values[i]));
  if (field.max_abs_imag() > 1e-8 * scale)
    throw NumericError("grid field has a significant imaginary part; not a real field");

  auto out = detail::open_output(path);
  const auto& grid = field.grid;
  out << "# gridfield band_limit=" << grid.band_limit() << " n_theta=" << grid.n_theta()
      << " n_phi=" << grid.n_phi() << '\n';
  out << "theta,phi,value\n";
  for (int j = 0; j < grid.n_theta(); ++j)
    for (int k = 0; k < grid.n_phi(); ++k)
      out << format_double(grid.colatitudes()[j]) << ',' << format_double(grid.phi(k))
          << ',' << format_double(field.values[grid.index(j, k)].real()) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

inline bool looks_like_grid_field(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::string line;
  if (!std::getline(in, line)) return false;
  return detail::strip_cr(line).rfind("# gridfield", 0) == 0;
}

inline GridField read_grid_field(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::size_t line_no = 0;
  std::string line;
  if (!std::getline(in, line))
    throw FormatError(path.string() + ": empty grid field file");
  ++line_no;
  line = detail::strip_cr(line);
  int band_limit = -1;
  if (std::sscanf(line.c_str(), "# gridfield band_limit=%d", &band_limit) != 1 ||
      band_limit < 0)
    throw FormatError(path.string() + ": missing '# gridfield band_limit=...' header");
  detail::expect_header(in, "theta,phi,value", path, line_no);

  QuadratureGrid grid(band_limit);
  ComplexVector<double> values(grid.size());
  Eigen::Index index = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = detail::strip_cr(line);
    if (line.empty()) continue;
    if (index >= grid.size())
      throw FormatError(path.string() + ": more rows than grid points");
    const auto fields = detail::split_csv(line);
    if (fields.size() != 3)
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": expected 3 fields");
    const double theta = detail::parse_double(fields[0], path, line_no);
    const double phi = detail::parse_double(fields[1], path, line_no);
    const int j = static_cast<int>(index / grid.n_phi());
    const int k = static_cast<int>(index % grid.n_phi());
    if (std::abs(theta - grid.colatitudes()[j]) > 1e-9 ||
        std::abs(phi - grid.phi(k)) > 1e-9)
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                        ": grid point does not match the quadrature grid");
    values[index++] = detail::parse_double(fields[2], path, line_no);
  }
  if (index != grid.size())
    throw FormatError(path.string() + ": expected " + std::to_string(grid.size()) +
                      " grid rows, got " + std::to_string(index));
  return GridField(std::move(grid), std::move(values));
}

/// Key-value summary: one 'key = value' line each.
inline void write_summary(const std::filesystem::path& path,
                          const std::vector<std::pair<std::string, std::string>>& items) {
  auto out = detail::open_output(path);
  for (const auto& [key, value] : items) out << key << " = " << value << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

inline std::map<std::string, std::string> read_summary(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::map<std::string, std::string> items;
  std::string line;
  while (std::getline(in, line)) {
    line = detail::strip_cr(line);
    const auto pos = line.find(" = ");
    if (pos == std::string::npos) continue;
    items[line.substr(0, pos)] = line.substr(pos + 3);
  }
  return items;
}

inline const char* to_string(ShrinkageKind kind) {
  return kind == ShrinkageKind::degree_block ? "degree_block" : "per_coefficient";
}

inline const char* to_string(ConstraintStatus status) {
  switch (status) {
    case ConstraintStatus::active: return "active";
    case ConstraintStatus::inactive_all_zero: return "inactive_all_zero";
    case ConstraintStatus::inactive_identity: return "inactive_identity";
  }
  return "unknown";
}

inline void write_isotropy_report(const std::filesystem::path& path,
                                  const IsotropyReport& report) {
  auto out = detail::open_output(path);
  out << "isotropy test report\n";
  out << "seed = " << report.seed << '\n';
  out << "realizations = " << report.realizations << '\n';
  out << "band_limit = " << report.band_limit << '\n';
  out << "lambda = " << format_double(report.lambda) << '\n';
  out << "shrinkage = " << to_string(report.shrinkage) << '\n';
  out << "rotation_zyz = " << format_double(report.rotation.alpha) << ' '
      << format_double(report.rotation.beta) << ' '
      << format_double(report.rotation.gamma) << '\n';
  out << "significance = " << format_double(report.significance) << '\n';
  out << "tests = " << report.test_count << '\n';
  if (report.test_count > 0)
    out << "bonferroni_alpha = "
        << format_double(report.significance / report.test_count) << '\n';
  for (std::size_t p = 0; p < report.probes.size(); ++p)
    out << "probe_" << p << " = " << format_double(report.probes[p].theta) << ' '
        << format_double(report.probes[p].phi) << '\n';
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const auto& check = report.checks[i];
    out << "check_" << i << " = " << check.label
        << " | statistic=" << format_double(check.statistic)
        << " p_value=" << format_double(check.p_value)
        << " verdict=" << (check.pass ? "pass" : "fail") << '\n';
  }
  out << "result = " << (report.skipped ? "SKIPPED" : (report.passed ? "PASS" : "FAIL"))
      << '\n';
  out << "notes = " << report.notes << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

/// Config echo: the exact command-line arguments, one per line, without the
/// output directory. Re-running them with a fresh --out reproduces every
/// artifact bitwise.
inline void write_config_echo(const std::filesystem::path& path,
                              const std::vector<std::string>& args) {
  auto out = detail::open_output(path);
  for (const auto& arg : args) out << arg << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

inline std::vector<std::string> read_config_echo(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::vector<std::string> args;
  std::string line;
  while (std::getline(in, line)) {
    line = detail::strip_cr(line);
    if (!line.empty()) args.push_back(line);
  }
  return args;
}

}  // namespace sphreg

#endif  // SPHREG_IO_HPP
