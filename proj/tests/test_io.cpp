#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "bergwave/errors.hpp"
#include "bergwave/io.hpp"
#include "test_support.hpp"

using namespace bergwave;

namespace {

const Grid& small_grid() {
  static const Grid grid(GridConfig::sqrt2_base(1));  // 9 nodes
  return grid;
}

const OrthonormalSystem& small_system() {
  static const OrthonormalSystem sys = orthonormalize(small_grid());
  return sys;
}

}  // namespace

TEST_CASE("grid file round trip is byte identical") {
  const Grid& grid = small_grid();
  std::ostringstream first;
  write_grid_file(first, grid);

  std::istringstream in(first.str());
  const Grid back = read_grid_file(in);
  CHECK(back.size() == grid.size());
  for (int m = 0; m < grid.size(); ++m) {
    CHECK(back.nodes()[m] == grid.nodes()[m]);
  }

  std::ostringstream second;
  write_grid_file(second, back);
  CHECK(first.str() == second.str());
}

TEST_CASE("grid file rejects corruption") {
  std::ostringstream os;
  write_grid_file(os, small_grid());
  std::string text = os.str();

  {
    std::istringstream in(std::string("junk\n") + text);
    CHECK_THROWS_AS(read_grid_file(in), ParseError);
  }
  {
    // truncate the node table
    std::istringstream in(text.substr(0, text.size() - 40));
    CHECK_THROWS_AS(read_grid_file(in), ParseError);
  }
  {
    // tamper with a node value
    std::string bad = text;
    bad.replace(bad.rfind("0.3333333333333333"), 18, "0.9999999999999999");
    std::istringstream in(bad);
    CHECK_THROWS_AS(read_grid_file(in), ParseError);
  }
}

TEST_CASE("system cache round trip") {
  const OrthonormalSystem& sys = small_system();
  std::ostringstream first;
  write_system_file(first, sys);

  std::istringstream in(first.str());
  const OrthonormalSystem back = read_system_file(in);
  REQUIRE(back.size() == sys.size());
  CHECK(back.reorthogonalized == sys.reorthogonalized);
  for (int m = 0; m < sys.size(); ++m) {
    CHECK(std::abs(back.pivots[m] - sys.pivots[m]) <=
          1e-13 * sys.pivots[m]);
    for (int j = 0; j <= m; ++j) {
      CHECK(detail::abs_double(back.coeffs(m, j) - sys.coeffs(m, j)) == 0.0);
    }
  }
  // nodal values are recomputed on load from the stored coefficients
  for (int m = 0; m < sys.size(); ++m) {
    for (int j = 0; j < sys.size(); ++j) {
      CHECK(std::abs(back.basis_value(m, j) - sys.basis_value(m, j)) < 1e-12);
    }
  }

  std::ostringstream second;
  write_system_file(second, back);
  CHECK(first.str() == second.str());
}

TEST_CASE("sample files resolve node order") {
  const Grid& grid = small_grid();
  std::vector<cplx> samples(grid.size());
  for (int m = 0; m < grid.size(); ++m) {
    samples[m] = cplx(m + 0.25, -m * 0.5);
  }
  std::ostringstream os;
  write_samples_file(os, grid, samples);

  // canonical order reads back
  {
    std::istringstream in(os.str());
    CHECK(read_samples_file(in, grid) == samples);
  }

  // shuffled rows read back the same (order-insensitive format)
  {
    std::istringstream lines(os.str());
    std::vector<std::string> header, rows;
    std::string line;
    while (std::getline(lines, line)) {
      (line.empty() || line[0] == '#' ? header : rows).push_back(line);
    }
    std::string shuffled;
    for (const std::string& h : header) shuffled += h + "\n";
    for (std::size_t i = rows.size(); i-- > 0;) shuffled += rows[i] + "\n";
    std::istringstream in(shuffled);
    CHECK(read_samples_file(in, grid) == samples);
  }

  // a missing node is named in the error
  {
    std::string text = os.str();
    const auto cut = text.rfind("\n", text.size() - 2);
    std::istringstream in(text.substr(0, cut + 1));
    try {
      read_samples_file(in, grid);
      FAIL("expected LengthMismatch");
    } catch (const LengthMismatch& e) {
      CHECK(std::string(e.what()).find("(1, 7)") != std::string::npos);
    }
  }

  // repeated rows are rejected
  {
    std::string text = os.str();
    text += "0 0 1 0\n";
    std::istringstream in(text);
    CHECK_THROWS_AS(read_samples_file(in, grid), ParseError);
  }
}

TEST_CASE("coefficient files round trip") {
  const Grid& grid = small_grid();
  WaveletCoefficients coeffs;
  coeffs.level_offsets = grid.level_offsets();
  for (int m = 0; m < grid.size(); ++m) {
    coeffs.values.push_back(cplx(std::sqrt(2.0) * m, -1.0 / (m + 1)));
  }
  std::ostringstream first;
  write_coefficients_file(first, grid, coeffs);
  std::istringstream in(first.str());
  const WaveletCoefficients back = read_coefficients_file(in, grid);
  CHECK(back.values == coeffs.values);
  std::ostringstream second;
  write_coefficients_file(second, grid, back);
  CHECK(first.str() == second.str());
}

TEST_CASE("report files") {
  std::vector<LevelResidual> rows{{0, 1, 0.5}, {1, 9, 0.125}};
  std::ostringstream os;
  write_report_file(os, rows);
  const std::string text = os.str();
  CHECK(text.find("# bergwave report v1") == 0);
  CHECK(text.find("0 1 0.5") != std::string::npos);
  CHECK(text.find("1 9 0.125") != std::string::npos);
}

TEST_CASE("function literals") {
  const ModelFunction f =
      parse_function_literal(R"({"taylor": [[1, 0], [0.5, -0.25]]})");
  const auto& taylor = std::get<TaylorFunction>(f);
  REQUIRE(taylor.degree() == 1);
  CHECK(taylor.coeffs()[1] == cplx(0.5, -0.25));

  const ModelFunction g = parse_function_literal(
      R"({"kernels": [{"node": [0.3, 0.0], "coeff": [1.0, 0.0]},
                      {"node": [0.0, -0.5], "coeff": [0.0, 2.0]}]})");
  const auto& kernels = std::get<KernelExpansion>(g);
  REQUIRE(kernels.terms().size() == 2);
  CHECK(kernels.terms()[0].node == cplx(0.3, 0.0));
  CHECK(kernels.terms()[1].coeff == cplx(0.0, 2.0));

  CHECK_THROWS_AS(parse_function_literal("not json"), ParseError);
  CHECK_THROWS_AS(parse_function_literal(R"({"taylor": []})"), ParseError);
  CHECK_THROWS_AS(parse_function_literal(R"({"taylor": [[1]]})"), ParseError);
  CHECK_THROWS_AS(parse_function_literal(R"({"other": 1})"), ParseError);
  CHECK_THROWS_AS(
      parse_function_literal(R"({"taylor": [[1,0]], "kernels": []})"),
      ParseError);
  CHECK_THROWS_AS(parse_function_literal(R"({"kernels": [{"node": [0.3, 0]}]})"),
                  ParseError);
}
