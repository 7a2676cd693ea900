#ifndef BERGWAVE_TRANSFORM_HPP
#define BERGWAVE_TRANSFORM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "bergwave/ortho.hpp"

namespace bergwave {

// Wavelet coefficients b_m = <f, psi_m>, aligned with the grid's linear
// node order; level_offsets slices the per-ring blocks.
struct WaveletCoefficients {
  std::vector<cplx> values;
  std::vector<int> level_offsets;

  int size() const { return static_cast<int>(values.size()); }
};

// Coefficients of the best approximant from point samples alone:
// b_m = sum_{j <= m} conj(coeffs(m, j)) f(a_j). Exact, no quadrature.
WaveletCoefficients analyze(std::span<const cplx> samples,
                            const OrthonormalSystem& system);

// Same transform with the samples taken from a known function model,
// evaluated in extended precision; the testing-grade path.
WaveletCoefficients analyze_function(const ModelFunction& f,
                                     const OrthonormalSystem& system);

// Pointwise synthesis sum_m b_m psi_m(z), accumulated in extended
// precision through the kernel-expansion collapse.
cplx synthesize(const WaveletCoefficients& coeffs,
                const OrthonormalSystem& system, cplx z);

// Batch synthesis: the kernel-expansion collapse happens once, each
// point costs O(M).
std::vector<cplx> synthesize_many(const WaveletCoefficients& coeffs,
                                  const OrthonormalSystem& system,
                                  std::span<const cplx> points);

// sum_m b_m psi_m collapsed to a single kernel expansion over the grid
// nodes (double snapshot; for export and plotting). truncate_m < 0
// keeps every coefficient, otherwise only the first truncate_m.
KernelExpansion synthesize_expansion(const WaveletCoefficients& coeffs,
                                     const OrthonormalSystem& system,
                                     int truncate_m = -1);

// Kernel of the projection onto the span of the first `count` basis
// functions: sum_{m < count} psi_m(z) conj(psi_m(xi)). Agrees with
// K(z, xi) minus the residual kernel after `count` nodes.
cplx projection_kernel(const OrthonormalSystem& system, int count, cplx z,
                       cplx xi);

// Detail operator at level n: synthesis restricted to the ring-(n+1)
// block, so projection(n+1) = projection(n) + detail(n). Vanishes at
// every node of rings 0..n.
cplx detail_component(const WaveletCoefficients& coeffs,
                      const OrthonormalSystem& system, int level, cplx z);

struct LevelResidual {
  int level = 0;
  int node_count = 0;     // basis functions through this ring
  double residual = 0.0;  // || f - P_n f ||
};

// Per-ring Pythagorean residuals ||f||^2 - sum_{m <= M_n} |b_m|^2 from
// exact samples of f; nonincreasing in the ring index. The whole chain
// runs in extended precision: the captured energy cancels against the
// norm to many more digits than double can carry when f lies in a
// resolution space.
std::vector<LevelResidual> error_report(const ModelFunction& f,
                                        const OrthonormalSystem& system);

// || f - sum_{m < upto_m} b_m psi_m ||^2 computed through the Gram
// quadratic form and the reproducing property, not through Parseval;
// the independent cross-check for error_report.
double projection_residual_norm_squared(const ModelFunction& f,
                                        const OrthonormalSystem& system,
                                        int upto_m);

// Randomized minimal-norm certificate: for `trials` perturbations
// h = c psi_m with node m deeper than ring `level` (so h vanishes on
// all interpolation nodes), checks via the kernel Gram form that
// ||P_n f + h||^2 = ||P_n f||^2 + |c|^2 strictly exceeds ||P_n f||^2.
// Perturbations that fail to vanish on the interpolation nodes are
// skipped, not counted.
bool minimal_norm_check(const ModelFunction& f,
                        const OrthonormalSystem& system, int level, int trials,
                        std::uint64_t seed);

}  // namespace bergwave

#endif  // BERGWAVE_TRANSFORM_HPP
