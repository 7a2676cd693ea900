#include "bergwave/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "bergwave/errors.hpp"

namespace bergwave {

namespace {

constexpr const char* kGridMagic = "# bergwave grid v1";
constexpr const char* kSystemMagic = "# bergwave system v1";
constexpr const char* kSamplesMagic = "# bergwave samples v1";
constexpr const char* kCoeffsMagic = "# bergwave coefficients v1";
constexpr const char* kReportMagic = "# bergwave report v1";

std::ifstream open_input(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path + " for reading");
  return is;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path + " for writing");
  return os;
}

void finish_output(std::ostream& os, const std::string& what) {
  os.flush();
  if (!os) throw IoError("write failure while emitting " + what);
}

// Line-oriented reader that tracks position for error messages and
// skips "# columns"-style annotation lines inside data sections.
class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  bool next(std::string& line) {
    while (std::getline(is_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    return false;
  }

  bool next_data(std::string& line) {
    while (next(line)) {
      if (line.empty()) continue;
      if (line[0] == '#') continue;
      return true;
    }
    return false;
  }

  int line_no() const { return line_no_; }

 private:
  std::istream& is_;
  int line_no_ = 0;
};

[[noreturn]] void parse_fail(const LineReader& reader, const std::string& msg) {
  throw ParseError("line " + std::to_string(reader.line_no()) + ": " + msg);
}

void expect_magic(LineReader& reader, const std::string& magic) {
  std::string line;
  if (!reader.next(line) || line != magic) {
    throw ParseError("expected header '" + magic + "'");
  }
}

double parse_double(const std::string& tok, const LineReader& reader) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0') {
    parse_fail(reader, "bad number '" + tok + "'");
  }
  return v;
}

long parse_int(const std::string& tok, const LineReader& reader) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0') {
    parse_fail(reader, "bad integer '" + tok + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

// Header lines of the form "# key v1 v2 ...".
std::vector<std::string> header_fields(LineReader& reader,
                                       const std::string& key) {
  std::string line;
  if (!reader.next(line)) parse_fail(reader, "missing header '" + key + "'");
  std::vector<std::string> toks = split(line);
  if (toks.size() < 2 || toks[0] != "#" || toks[1] != key) {
    parse_fail(reader, "expected header '# " + key + " ...'");
  }
  return {toks.begin() + 2, toks.end()};
}

void write_config_header(std::ostream& os, const GridConfig& cfg) {
  os << "# a_base " << format_double(cfg.a_base) << "\n";
  os << "# levels " << cfg.levels << "\n";
  os << "# p " << format_double(cfg.p) << "\n";
  os << "# schedule";
  for (int n : cfg.schedule) os << ' ' << n;
  os << "\n";
}

GridConfig read_config_header(LineReader& reader) {
  GridConfig cfg;
  auto a = header_fields(reader, "a_base");
  if (a.size() != 1) parse_fail(reader, "a_base takes one value");
  cfg.a_base = parse_double(a[0], reader);
  auto lv = header_fields(reader, "levels");
  if (lv.size() != 1) parse_fail(reader, "levels takes one value");
  cfg.levels = static_cast<int>(parse_int(lv[0], reader));
  auto p = header_fields(reader, "p");
  if (p.size() != 1) parse_fail(reader, "p takes one value");
  cfg.p = parse_double(p[0], reader);
  auto sched = header_fields(reader, "schedule");
  cfg.schedule.clear();
  for (const std::string& tok : sched) {
    cfg.schedule.push_back(static_cast<int>(parse_int(tok, reader)));
  }
  return cfg;
}

void write_node_rows(std::ostream& os, const Grid& grid) {
  os << "# columns m k l re_z im_z\n";
  for (int m = 1; m <= grid.size(); ++m) {
    const auto [k, l, z] = grid.node_of(m);
    os << m << ' ' << k << ' ' << l << ' ' << format_double(z.real()) << ' '
       << format_double(z.imag()) << "\n";
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// -- grid --------------------------------------------------------------------

void write_grid_file(std::ostream& os, const Grid& grid) {
  os << kGridMagic << "\n";
  write_config_header(os, grid.config());
  write_node_rows(os, grid);
  finish_output(os, "grid table");
}

void write_grid_file(const std::string& path, const Grid& grid) {
  auto os = open_output(path);
  write_grid_file(os, grid);
}

Grid read_grid_file(std::istream& is) {
  LineReader reader(is);
  expect_magic(reader, kGridMagic);
  const GridConfig cfg = read_config_header(reader);
  Grid grid(cfg);
  std::string line;
  int seen = 0;
  while (reader.next_data(line)) {
    const auto toks = split(line);
    if (toks.size() != 5) parse_fail(reader, "node row needs 5 fields");
    const int m = static_cast<int>(parse_int(toks[0], reader));
    const int k = static_cast<int>(parse_int(toks[1], reader));
    const int l = static_cast<int>(parse_int(toks[2], reader));
    if (m < 1 || m > grid.size() || grid.linear_index(k, l) != m) {
      parse_fail(reader, "node row does not match the canonical order");
    }
    const cplx z(parse_double(toks[3], reader), parse_double(toks[4], reader));
    if (std::abs(z - grid.nodes()[m - 1]) > 1e-12) {
      parse_fail(reader, "node value disagrees with the stated parameters");
    }
    ++seen;
  }
  if (seen != grid.size()) {
    throw ParseError("grid table lists " + std::to_string(seen) + " of " +
                     std::to_string(grid.size()) + " nodes");
  }
  return grid;
}

Grid read_grid_file(const std::string& path) {
  auto is = open_input(path);
  return read_grid_file(is);
}

// -- system cache ------------------------------------------------------------

void write_system_file(std::ostream& os, const OrthonormalSystem& system) {
  os << kSystemMagic << "\n";
  write_config_header(os, system.config);
  os << "# size " << system.size() << "\n";
  os << "# reorthogonalized " << (system.reorthogonalized ? 1 : 0) << "\n";
  // Coefficient components are written as leading/trailing double pairs
  // so the stored values carry the full working precision of the
  // construction (roughly 32 significant digits per component).
  os << "# columns nodes: m re_z im_z / coeffs: m j re re_lo im im_lo\n";
  os << "nodes\n";
  for (int m = 0; m < system.size(); ++m) {
    os << (m + 1) << ' ' << format_double(system.nodes[m].real()) << ' '
       << format_double(system.nodes[m].imag()) << "\n";
  }
  os << "coeffs\n";
  for (int m = 0; m < system.size(); ++m) {
    for (int j = 0; j <= m; ++j) {
      const detail::ddcplx& c = system.coeffs(m, j);
      os << (m + 1) << ' ' << (j + 1) << ' ' << format_double(c.re.hi) << ' '
         << format_double(c.re.lo) << ' ' << format_double(c.im.hi) << ' '
         << format_double(c.im.lo) << "\n";
    }
  }
  finish_output(os, "system cache");
}

void write_system_file(const std::string& path,
                       const OrthonormalSystem& system) {
  auto os = open_output(path);
  write_system_file(os, system);
}

OrthonormalSystem read_system_file(std::istream& is) {
  LineReader reader(is);
  expect_magic(reader, kSystemMagic);
  OrthonormalSystem sys;
  sys.config = read_config_header(reader);
  sys.config.validate();
  auto size_fields = header_fields(reader, "size");
  if (size_fields.size() != 1) parse_fail(reader, "size takes one value");
  const int m_total = static_cast<int>(parse_int(size_fields[0], reader));
  auto reorth = header_fields(reader, "reorthogonalized");
  if (reorth.size() != 1) parse_fail(reader, "reorthogonalized takes one value");
  sys.reorthogonalized = parse_int(reorth[0], reader) != 0;

  sys.level_offsets.assign(1, 0);
  for (int n : sys.config.schedule) {
    sys.level_offsets.push_back(sys.level_offsets.back() + n);
  }
  if (sys.level_offsets.back() != m_total) {
    throw ParseError("system size does not match the schedule");
  }

  std::string line;
  if (!reader.next_data(line) || line != "nodes") {
    parse_fail(reader, "expected 'nodes' section");
  }
  sys.nodes.resize(m_total);
  for (int m = 0; m < m_total; ++m) {
    if (!reader.next_data(line)) parse_fail(reader, "truncated nodes section");
    const auto toks = split(line);
    if (toks.size() != 3) parse_fail(reader, "node row needs 3 fields");
    if (parse_int(toks[0], reader) != m + 1) {
      parse_fail(reader, "nodes out of order");
    }
    sys.nodes[m] = cplx(parse_double(toks[1], reader),
                        parse_double(toks[2], reader));
  }
  if (!reader.next_data(line) || line != "coeffs") {
    parse_fail(reader, "expected 'coeffs' section");
  }
  sys.coeffs = DDMatrix(m_total, m_total);
  for (int m = 0; m < m_total; ++m) {
    for (int j = 0; j <= m; ++j) {
      if (!reader.next_data(line)) {
        parse_fail(reader, "truncated coeffs section");
      }
      const auto toks = split(line);
      if (toks.size() != 6) parse_fail(reader, "coeff row needs 6 fields");
      if (parse_int(toks[0], reader) != m + 1 ||
          parse_int(toks[1], reader) != j + 1) {
        parse_fail(reader, "coeffs out of packed lower-triangular order");
      }
      sys.coeffs(m, j) = detail::ddcplx(
          detail::dd(parse_double(toks[2], reader),
                     parse_double(toks[3], reader)),
          detail::dd(parse_double(toks[4], reader),
                     parse_double(toks[5], reader)));
    }
  }
  if (reader.next_data(line)) parse_fail(reader, "trailing data");

  // Pivots and nodal values are derived data: the diagonal coefficient
  // is 1/sqrt(pivot), and basis values come from kernel sums.
  sys.pivots.resize(m_total);
  for (int m = 0; m < m_total; ++m) {
    const detail::dd diag = sys.coeffs(m, m).re;
    if (!(detail::to_double(diag) > 0.0)) {
      throw ParseError("coefficient diagonal must be real positive");
    }
    sys.pivots[m] =
        detail::to_double(detail::dd(1.0) / (diag * diag));
  }
  sys.basis_at_nodes = DDMatrix(m_total, m_total);
  for (int m = 0; m < m_total; ++m) {
    for (int j = 0; j < m_total; ++j) {
      sys.basis_at_nodes(m, j) = sys.evaluate_basis_dd(m, sys.nodes[j]);
    }
  }
  return sys;
}

OrthonormalSystem read_system_file(const std::string& path) {
  auto is = open_input(path);
  return read_system_file(is);
}

// -- samples -----------------------------------------------------------------

void write_samples_file(std::ostream& os, const Grid& grid,
                        std::span<const cplx> samples) {
  if (static_cast<int>(samples.size()) != grid.size()) {
    throw LengthMismatch("sample count does not match grid size");
  }
  os << kSamplesMagic << "\n";
  os << "# columns k l re im\n";
  for (int m = 1; m <= grid.size(); ++m) {
    const auto [k, l, z] = grid.node_of(m);
    (void)z;
    os << k << ' ' << l << ' ' << format_double(samples[m - 1].real()) << ' '
       << format_double(samples[m - 1].imag()) << "\n";
  }
  finish_output(os, "samples table");
}

void write_samples_file(const std::string& path, const Grid& grid,
                        std::span<const cplx> samples) {
  auto os = open_output(path);
  write_samples_file(os, grid, samples);
}

std::vector<cplx> read_samples_file(std::istream& is, const Grid& grid) {
  LineReader reader(is);
  expect_magic(reader, kSamplesMagic);
  std::vector<cplx> samples(grid.size());
  std::vector<bool> seen(grid.size(), false);
  std::string line;
  while (reader.next_data(line)) {
    const auto toks = split(line);
    if (toks.size() != 4) parse_fail(reader, "sample row needs 4 fields");
    const int k = static_cast<int>(parse_int(toks[0], reader));
    const int l = static_cast<int>(parse_int(toks[1], reader));
    const int m = grid.linear_index(k, l);
    if (seen[m - 1]) {
      parse_fail(reader, "repeated sample for node (" + std::to_string(k) +
                             ", " + std::to_string(l) + ")");
    }
    seen[m - 1] = true;
    samples[m - 1] = cplx(parse_double(toks[2], reader),
                          parse_double(toks[3], reader));
  }
  for (int m = 1; m <= grid.size(); ++m) {
    if (!seen[m - 1]) {
      const auto [k, l, z] = grid.node_of(m);
      (void)z;
      throw LengthMismatch("missing sample for node (" + std::to_string(k) +
                           ", " + std::to_string(l) + ")");
    }
  }
  return samples;
}

std::vector<cplx> read_samples_file(const std::string& path,
                                    const Grid& grid) {
  auto is = open_input(path);
  return read_samples_file(is, grid);
}

// -- coefficients ------------------------------------------------------------

void write_coefficients_file(std::ostream& os, const Grid& grid,
                             const WaveletCoefficients& coeffs) {
  if (coeffs.size() != grid.size()) {
    throw LengthMismatch("coefficient count does not match grid size");
  }
  os << kCoeffsMagic << "\n";
  os << "# columns m k l re im\n";
  for (int m = 1; m <= grid.size(); ++m) {
    const auto [k, l, z] = grid.node_of(m);
    (void)z;
    const cplx b = coeffs.values[m - 1];
    os << m << ' ' << k << ' ' << l << ' ' << format_double(b.real()) << ' '
       << format_double(b.imag()) << "\n";
  }
  finish_output(os, "coefficient table");
}

void write_coefficients_file(const std::string& path, const Grid& grid,
                             const WaveletCoefficients& coeffs) {
  auto os = open_output(path);
  write_coefficients_file(os, grid, coeffs);
}

WaveletCoefficients read_coefficients_file(std::istream& is,
                                           const Grid& grid) {
  LineReader reader(is);
  expect_magic(reader, kCoeffsMagic);
  WaveletCoefficients out;
  out.level_offsets = grid.level_offsets();
  out.values.assign(grid.size(), cplx(0.0));
  std::vector<bool> seen(grid.size(), false);
  std::string line;
  while (reader.next_data(line)) {
    const auto toks = split(line);
    if (toks.size() != 5) parse_fail(reader, "coefficient row needs 5 fields");
    const int m = static_cast<int>(parse_int(toks[0], reader));
    const int k = static_cast<int>(parse_int(toks[1], reader));
    const int l = static_cast<int>(parse_int(toks[2], reader));
    if (m < 1 || m > grid.size() || grid.linear_index(k, l) != m) {
      parse_fail(reader, "coefficient row indices disagree");
    }
    if (seen[m - 1]) parse_fail(reader, "repeated coefficient row");
    seen[m - 1] = true;
    out.values[m - 1] = cplx(parse_double(toks[3], reader),
                             parse_double(toks[4], reader));
  }
  for (int m = 1; m <= grid.size(); ++m) {
    if (!seen[m - 1]) {
      throw LengthMismatch("missing coefficient for position " +
                           std::to_string(m));
    }
  }
  return out;
}

WaveletCoefficients read_coefficients_file(const std::string& path,
                                           const Grid& grid) {
  auto is = open_input(path);
  return read_coefficients_file(is, grid);
}

// -- error report ------------------------------------------------------------

void write_report_file(std::ostream& os,
                       const std::vector<LevelResidual>& report) {
  os << kReportMagic << "\n";
  os << "# columns n m_n residual\n";
  for (const LevelResidual& row : report) {
    os << row.level << ' ' << row.node_count << ' '
       << format_double(row.residual) << "\n";
  }
  finish_output(os, "residual report");
}

void write_report_file(const std::string& path,
                       const std::vector<LevelResidual>& report) {
  auto os = open_output(path);
  write_report_file(os, report);
}

// -- function literals ---------------------------------------------------------

namespace {

cplx json_complex(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ParseError("complex values must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

ModelFunction parse_function_literal(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("function literal: ") + e.what());
  }
  if (!j.is_object() || j.size() != 1) {
    throw ParseError("function literal must have exactly one of "
                     "'taylor' or 'kernels'");
  }
  if (j.contains("taylor")) {
    const auto& arr = j["taylor"];
    if (!arr.is_array() || arr.empty()) {
      throw ParseError("'taylor' must be a nonempty array of [re, im]");
    }
    std::vector<cplx> coeffs;
    for (const auto& item : arr) coeffs.push_back(json_complex(item));
    return TaylorFunction(std::move(coeffs));
  }
  if (j.contains("kernels")) {
    const auto& arr = j["kernels"];
    if (!arr.is_array() || arr.empty()) {
      throw ParseError("'kernels' must be a nonempty array of terms");
    }
    std::vector<KernelTerm> terms;
    for (const auto& item : arr) {
      if (!item.is_object() || !item.contains("node") ||
          !item.contains("coeff")) {
        throw ParseError("kernel terms need 'node' and 'coeff'");
      }
      terms.push_back({json_complex(item["node"]), json_complex(item["coeff"])});
    }
    return KernelExpansion(std::move(terms));
  }
  throw ParseError("function literal must have 'taylor' or 'kernels'");
}

ModelFunction read_function_file(const std::string& path) {
  auto is = open_input(path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_function_literal(ss.str());
}

}  // namespace bergwave
