#ifndef BERGWAVE_IO_HPP
#define BERGWAVE_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "bergwave/grid.hpp"
#include "bergwave/ortho.hpp"
#include "bergwave/transform.hpp"

namespace bergwave {

// Plain-text tabular formats with a one-line versioned header and fixed
// formatting (17 significant digits), so identical inputs produce
// byte-identical files and every format round-trips exactly.

void write_grid_file(std::ostream& os, const Grid& grid);
void write_grid_file(const std::string& path, const Grid& grid);
Grid read_grid_file(std::istream& is);
Grid read_grid_file(const std::string& path);

void write_system_file(std::ostream& os, const OrthonormalSystem& system);
void write_system_file(const std::string& path,
                       const OrthonormalSystem& system);
// Rebuilds pivots and nodal basis values from the stored coefficients.
OrthonormalSystem read_system_file(std::istream& is);
OrthonormalSystem read_system_file(const std::string& path);

// Sample rows are (k, l, Re f, Im f), order-insensitive; a missing node
// raises LengthMismatch naming the node, a repeated one ParseError.
void write_samples_file(std::ostream& os, const Grid& grid,
                        std::span<const cplx> samples);
void write_samples_file(const std::string& path, const Grid& grid,
                        std::span<const cplx> samples);
std::vector<cplx> read_samples_file(std::istream& is, const Grid& grid);
std::vector<cplx> read_samples_file(const std::string& path, const Grid& grid);

void write_coefficients_file(std::ostream& os, const Grid& grid,
                             const WaveletCoefficients& coeffs);
void write_coefficients_file(const std::string& path, const Grid& grid,
                             const WaveletCoefficients& coeffs);
WaveletCoefficients read_coefficients_file(std::istream& is, const Grid& grid);
WaveletCoefficients read_coefficients_file(const std::string& path,
                                           const Grid& grid);

void write_report_file(std::ostream& os,
                       const std::vector<LevelResidual>& report);
void write_report_file(const std::string& path,
                       const std::vector<LevelResidual>& report);

// Function literals: {"taylor": [[re, im], ...]} or
// {"kernels": [{"node": [re, im], "coeff": [re, im]}, ...]}.
ModelFunction parse_function_literal(const std::string& json_text);
ModelFunction read_function_file(const std::string& path);

std::string format_double(double x);  // %.17g

}  // namespace bergwave

#endif  // BERGWAVE_IO_HPP
