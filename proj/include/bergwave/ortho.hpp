#ifndef BERGWAVE_ORTHO_HPP
#define BERGWAVE_ORTHO_HPP

#include <span>
#include <vector>

#include "bergwave/bergman.hpp"
#include "bergwave/dd.hpp"
#include "bergwave/grid.hpp"
#include "bergwave/matrix.hpp"

namespace bergwave {

// Gram matrix of the kernel functions at the given nodes:
// G(i, j) = <K(., a_j), K(., a_i)> = K(a_i, a_j). Hermitian positive
// definite for distinct nodes; throws DuplicateNode otherwise.
CMatrix gram_matrix(std::span<const cplx> nodes);

// The orthonormal kernel system over a grid's node list: basis function
// m is sum_{j <= m} coeffs(m, j) K(., a_j), vanishes at nodes 0..m-1,
// and takes the real positive value sqrt(pivots[m]) at node m; pivots[m]
// is the diagonal of the residual kernel after removing nodes 0..m-1.
//
// Coefficients and nodal values are stored in double-double: adjacent
// kernels on a ring are nearly dependent, the expansion coefficients
// grow accordingly (1e5 and beyond on the stock grids), and plain
// double storage alone would inject more error into downstream sums
// than the contracts allow.
struct OrthonormalSystem {
  GridConfig config;
  std::vector<int> level_offsets;   // copied from the grid, with sentinel
  std::vector<cplx> nodes;
  DDMatrix coeffs;                  // lower triangular
  std::vector<double> pivots;
  DDMatrix basis_at_nodes;          // (m, j) -> basis function m at node j
  bool reorthogonalized = false;

  int size() const { return static_cast<int>(nodes.size()); }
  int levels() const { return config.levels; }
  // Number of basis functions through ring n.
  int count_through_level(int n) const;
  // Ring of the node at 0-based position m.
  int level_of(int m) const;

  cplx coeff(int m, int j) const;
  cplx basis_value(int m, int j) const;

  // sum_{j <= m} coeffs(m, j) K(z, a_j).
  detail::ddcplx evaluate_basis_dd(int m, cplx z) const;
  cplx evaluate_basis(int m, cplx z) const;
  KernelExpansion basis_function(int m) const;  // double snapshot
};

// Working precision of the construction. Quad is the production
// default: the stock grids carry expansion coefficients so large that
// double-double already bottoms out near 1e-7 in the orthonormality
// audit. double_double remains for quick runs on big grids where that
// floor is acceptable.
enum class WorkingPrecision { quad, double_double };

// Production path: modified Gram-Schmidt on the Gram matrix in
// kernel-coefficient coordinates, with reorthogonalization sweeps while
// the orthonormality defect exceeds 1e-10 (at most three sweeps).
// Throws DegeneratePivot when a pivot falls below 1e-25 K(a_m, a_m).
OrthonormalSystem orthonormalize(
    const Grid& grid, WorkingPrecision precision = WorkingPrecision::quad);

// Verification path: the residual-kernel downdate
//   K_{m+1}(z, w) = K_m(z, w) - K_m(z, a) K_m(a, w) / K_m(a, a)
// applied simultaneously to the nodal values and to the
// kernel-coefficient expansion. Same math as the Gram-Schmidt path,
// different elimination order in quad-double arithmetic (the
// coefficient propagation loses accuracy like the squared condition
// number). Oracle use on small grids only.
OrthonormalSystem orthonormalize_residual_recursion(const Grid& grid);

// Reproducing kernel of the subspace vanishing at the first `removed`
// nodes: K(z, w) - sum_{i < removed} psi_i(z) conj(psi_i(w)).
cplx residual_kernel(const OrthonormalSystem& system, int removed, cplx z,
                     cplx w);

// Back-substitution on the triangular system formed by the basis values
// at nodes m, m-1, ..., 0: recovers the kernel-expansion coefficients
// of basis function m from nodal data alone. Independent oracle for
// row m of coeffs.
std::vector<detail::ddcplx> triangular_coefficients(
    const OrthonormalSystem& system, int m);

// max |C G C^H - I| over all entries; the orthonormality audit,
// accumulated in double-double.
double orthonormality_defect(const OrthonormalSystem& system);

// max pivot / min pivot; a conditioning report.
double pivot_ratio(const OrthonormalSystem& system);

}  // namespace bergwave

#endif  // BERGWAVE_ORTHO_HPP
