#include "bergwave/ortho.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "bergwave/errors.hpp"
#include "qd.hpp"

namespace bergwave {

using detail::dd;
using detail::ddcplx;
using detail::qd;
using detail::qdcplx;
using detail::to_double;

namespace {

// Deep rings of the stock grids reach relative pivots near 1e-15; the
// extended-precision construction keeps ample headroom below that, so
// only genuine (near-)duplicates trip the floor.
constexpr double kPivotFloor = 1e-25;
constexpr double kReorthTrigger = 1e-10;
constexpr int kMaxSweeps = 3;

void check_distinct(std::span<const cplx> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i] == nodes[j]) {
        throw DuplicateNode("duplicate node at positions " +
                            std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
}

void check_pivot(double pivot, double diag, int m) {
  if (!(pivot > kPivotFloor * diag)) {
    throw DegeneratePivot("pivot " + std::to_string(pivot) + " at node " +
                          std::to_string(m) +
                          " signals numerically dependent kernels");
  }
}

void check_pole(cplx z, cplx w) {
  if (std::abs(1.0 - std::conj(w) * z) < 1e-14) {
    throw NearSingular("evaluation within 1e-14 of a kernel pole");
  }
}

// The scalar kit abstracts over the two working precisions.
template <typename CT>
struct Kit;

template <>
struct Kit<ddcplx> {
  using real = dd;
  static ddcplx kernel(cplx z, cplx w) { return detail::kernel_dd(z, w); }
  static ddcplx to_store(const ddcplx& v) { return v; }
};

template <>
struct Kit<qdcplx> {
  using real = qd;
  static qdcplx kernel(cplx z, cplx w) { return detail::kernel_qd(z, w); }
  static ddcplx to_store(const qdcplx& v) { return v.to_ddcplx(); }
};

template <typename CT>
DenseMatrix<CT> gram_of(std::span<const cplx> nodes) {
  const int m = static_cast<int>(nodes.size());
  DenseMatrix<CT> gram(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) gram(i, j) = Kit<CT>::kernel(nodes[i], nodes[j]);
  }
  return gram;
}

// max |<psi_i, psi_j> - delta_ij| through the kernel Gram products:
// <psi_i, psi_j> = sum_{k,l} conj(C(i,k)) G(k,l) C(j,l) with
// G(k, l) = K(a_k, a_l). The conjugation side matters: the other
// orientation measures the norm of the conjugated combination, a
// wildly different quantity for these coefficient vectors.
template <typename CT>
double defect_of(const DenseMatrix<CT>& coeffs, const DenseMatrix<CT>& gram) {
  const int m_total = coeffs.rows();
  DenseMatrix<CT> t(m_total, m_total);
  for (int i = 0; i < m_total; ++i) {
    for (int k = 0; k <= i; ++k) {
      const CT c = conj(coeffs(i, k));
      const CT* grow = gram.row(k);
      CT* trow = t.row(i);
      for (int j = 0; j < m_total; ++j) trow[j] += c * grow[j];
    }
  }
  double worst = 0.0;
  for (int i = 0; i < m_total; ++i) {
    for (int j = 0; j < m_total; ++j) {
      CT acc;
      const CT* trow = t.row(i);
      const CT* crow = coeffs.row(j);
      for (int k = 0; k <= j; ++k) acc += trow[k] * crow[k];
      if (i == j) acc -= CT(1.0);
      worst = std::max(worst, std::sqrt(std::abs(to_double(abs_squared(acc)))));
    }
  }
  return worst;
}

// One Gram-Schmidt sweep in kernel-coefficient coordinates. Row m of
// `basis` enters with support 0..m and exits orthogonal to rows 0..m-1
// and normalized; `images` carries the nodal values of each basis row
// (the Gram image) so inner products against finished rows cost O(m).
template <typename CT>
void mgs_sweep(const DenseMatrix<CT>& gram, DenseMatrix<CT>& basis,
               DenseMatrix<CT>& images, std::vector<double>& pivots,
               bool first_pass) {
  using RT = typename Kit<CT>::real;
  const int m_total = basis.rows();
  for (int m = 0; m < m_total; ++m) {
    CT* x = basis.row(m);
    CT* y = images.row(m);
    for (int j = 0; j < m; ++j) {
      const CT* qj = basis.row(j);
      // <x, q_j> in the kernel Gram metric.
      CT s;
      for (int t = 0; t <= j; ++t) s += conj(qj[t]) * y[t];
      for (int t = 0; t <= j; ++t) x[t] -= s * qj[t];
      const CT* gj = images.row(j);
      for (int t = 0; t < m_total; ++t) y[t] -= s * gj[t];
    }
    RT dot;
    for (int t = 0; t <= m; ++t) dot += (conj(x[t]) * y[t]).re;
    const double d = to_double(dot);
    check_pivot(d, to_double(gram(m, m).re), m);
    if (first_pass) {
      pivots[m] = d;
    } else {
      pivots[m] *= d;  // later sweeps rescale by nearly 1
    }
    const RT inv = RT(1.0) / sqrt(dot);
    for (int t = 0; t <= m; ++t) x[t] = inv * x[t];
    for (int t = 0; t < m_total; ++t) y[t] = inv * y[t];
  }
}

// Recompute the maintained nodal values from scratch: y_m[i] =
// sum_t x_t K(a_i, a_t). The incremental updates drift relative to the
// heavy cancellation and would cap what later sweeps can recover.
template <typename CT>
void refresh_images(const DenseMatrix<CT>& gram, const DenseMatrix<CT>& basis,
                    DenseMatrix<CT>& images) {
  const int m_total = basis.rows();
  for (int m = 0; m < m_total; ++m) {
    CT* y = images.row(m);
    for (int i = 0; i < m_total; ++i) {
      CT acc;
      const CT* grow = gram.row(i);
      const CT* x = basis.row(m);
      for (int t = 0; t <= m; ++t) acc += x[t] * grow[t];
      y[i] = acc;
    }
  }
}

template <typename CT>
void run_mgs(OrthonormalSystem& sys) {
  const int m_total = sys.size();
  const DenseMatrix<CT> gram = gram_of<CT>(sys.nodes);

  DenseMatrix<CT> basis(m_total, m_total);
  DenseMatrix<CT> images(m_total, m_total);
  sys.pivots.assign(m_total, 0.0);
  for (int m = 0; m < m_total; ++m) {
    basis(m, m) = CT(1.0);
    for (int i = 0; i < m_total; ++i) images(m, i) = gram(i, m);
  }
  mgs_sweep(gram, basis, images, sys.pivots, /*first_pass=*/true);

  double defect = defect_of(basis, gram);
  int sweeps = 1;
  while (defect > kReorthTrigger && sweeps < kMaxSweeps) {
    refresh_images(gram, basis, images);
    mgs_sweep(gram, basis, images, sys.pivots, /*first_pass=*/false);
    ++sweeps;
    const double next = defect_of(basis, gram);
    const bool improving = next < 0.5 * defect;
    defect = next;
    if (!improving) break;
  }
  sys.reorthogonalized = sweeps > 1;

  sys.coeffs = DDMatrix(m_total, m_total);
  sys.basis_at_nodes = DDMatrix(m_total, m_total);
  refresh_images(gram, basis, images);
  for (int m = 0; m < m_total; ++m) {
    for (int j = 0; j <= m; ++j) sys.coeffs(m, j) = Kit<CT>::to_store(basis(m, j));
    for (int j = 0; j < m_total; ++j) {
      sys.basis_at_nodes(m, j) = Kit<CT>::to_store(images(m, j));
    }
  }
}

OrthonormalSystem make_system(const Grid& grid) {
  OrthonormalSystem sys;
  sys.config = grid.config();
  sys.level_offsets = grid.level_offsets();
  sys.nodes = grid.nodes();
  return sys;
}

}  // namespace

CMatrix gram_matrix(std::span<const cplx> nodes) {
  check_distinct(nodes);
  const int m = static_cast<int>(nodes.size());
  CMatrix gram(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) gram(i, j) = kernel(nodes[i], nodes[j]);
  }
  return gram;
}

int OrthonormalSystem::count_through_level(int n) const {
  if (n < 0 || n > config.levels) {
    throw LevelOutOfRange("level " + std::to_string(n) + " not in system");
  }
  return level_offsets[n + 1];
}

int OrthonormalSystem::level_of(int m) const {
  if (m < 0 || m >= size()) {
    throw IndexOutOfRange("basis index " + std::to_string(m) +
                          " not in [0, " + std::to_string(size()) + ")");
  }
  int k = 0;
  while (level_offsets[k + 1] <= m) ++k;
  return k;
}

cplx OrthonormalSystem::coeff(int m, int j) const {
  return coeffs(m, j).to_complex();
}

cplx OrthonormalSystem::basis_value(int m, int j) const {
  return basis_at_nodes(m, j).to_complex();
}

detail::ddcplx OrthonormalSystem::evaluate_basis_dd(int m, cplx z) const {
  if (m < 0 || m >= size()) {
    throw IndexOutOfRange("basis index " + std::to_string(m) +
                          " not in [0, " + std::to_string(size()) + ")");
  }
  ddcplx acc;
  const ddcplx* c = coeffs.row(m);
  for (int j = 0; j <= m; ++j) {
    check_pole(z, nodes[j]);
    acc += c[j] * detail::kernel_dd(z, nodes[j]);
  }
  return acc;
}

cplx OrthonormalSystem::evaluate_basis(int m, cplx z) const {
  return evaluate_basis_dd(m, z).to_complex();
}

KernelExpansion OrthonormalSystem::basis_function(int m) const {
  if (m < 0 || m >= size()) {
    throw IndexOutOfRange("basis index out of range");
  }
  std::vector<KernelTerm> terms;
  terms.reserve(m + 1);
  for (int j = 0; j <= m; ++j) terms.push_back({nodes[j], coeff(m, j)});
  return KernelExpansion(std::move(terms));
}

OrthonormalSystem orthonormalize(const Grid& grid, WorkingPrecision precision) {
  OrthonormalSystem sys = make_system(grid);
  check_distinct(sys.nodes);
  if (precision == WorkingPrecision::quad) {
    run_mgs<qdcplx>(sys);
  } else {
    run_mgs<ddcplx>(sys);
  }
  return sys;
}

OrthonormalSystem orthonormalize_residual_recursion(const Grid& grid) {
  OrthonormalSystem sys = make_system(grid);
  const int m_total = sys.size();
  check_distinct(sys.nodes);

  // residual(i, j) = current residual kernel at (a_i, a_j);
  // expansion.row(w) = kernel-expansion coefficients of the current
  // residual kernel section at node w.
  DenseMatrix<qdcplx> residual = gram_of<qdcplx>(sys.nodes);
  DenseMatrix<qdcplx> expansion(m_total, m_total);
  for (int i = 0; i < m_total; ++i) expansion(i, i) = qdcplx(1.0);

  sys.coeffs = DDMatrix(m_total, m_total);
  sys.pivots.assign(m_total, 0.0);
  sys.basis_at_nodes = DDMatrix(m_total, m_total);

  for (int m = 0; m < m_total; ++m) {
    const qd d = residual(m, m).re;
    const double d_dbl = to_double(d);
    check_pivot(d_dbl, kernel(sys.nodes[m], sys.nodes[m]).real(), m);
    sys.pivots[m] = d_dbl;
    const qd inv = qd(1.0) / sqrt(d);
    for (int j = 0; j <= m; ++j) {
      sys.coeffs(m, j) = (inv * expansion(m, j)).to_ddcplx();
    }
    for (int j = 0; j < m_total; ++j) {
      sys.basis_at_nodes(m, j) = (inv * residual(j, m)).to_ddcplx();
    }
    if (m + 1 == m_total) break;

    // Downdate every remaining section by the step-m residual section.
    for (int w = m + 1; w < m_total; ++w) {
      const qdcplx factor = residual(m, w) / d;
      qdcplx* dst = expansion.row(w);
      const qdcplx* src = expansion.row(m);
      for (int t = 0; t <= m; ++t) dst[t] -= factor * src[t];
    }
    // Downdate the nodal values over the full index range so vanishing
    // at already-consumed nodes stays visible in later sections. Row
    // and column m are snapshotted first: the in-place update would
    // zero row m before the remaining rows read it.
    std::vector<qdcplx> col(m_total), top(m_total);
    for (int i = 0; i < m_total; ++i) col[i] = residual(i, m);
    for (int j = 0; j < m_total; ++j) top[j] = residual(m, j);
    for (int i = 0; i < m_total; ++i) {
      const qdcplx left = col[i] / d;
      qdcplx* row = residual.row(i);
      for (int j = 0; j < m_total; ++j) row[j] -= left * top[j];
    }
  }
  return sys;
}

cplx residual_kernel(const OrthonormalSystem& system, int removed, cplx z,
                     cplx w) {
  if (removed < 0 || removed > system.size()) {
    throw IndexOutOfRange("removed count not in [0, size]");
  }
  check_pole(z, w);
  ddcplx acc = detail::kernel_dd(z, w);
  for (int i = 0; i < removed; ++i) {
    acc -= system.evaluate_basis_dd(i, z) *
           detail::conj(system.evaluate_basis_dd(i, w));
  }
  return acc.to_complex();
}

std::vector<ddcplx> triangular_coefficients(const OrthonormalSystem& system,
                                            int m) {
  if (m < 0 || m >= system.size()) {
    throw IndexOutOfRange("basis index out of range");
  }
  const DDMatrix& values = system.basis_at_nodes;
  // Row mu of the system reads sum_{j >= mu} psi_mu(a_j) conj(c_j) =
  // delta_{mu m}; the diagonal is psi_mu(a_mu) = sqrt(pivot) > 0.
  std::vector<ddcplx> conj_c(m + 1);
  for (int mu = m; mu >= 0; --mu) {
    const ddcplx diag = values(mu, mu);
    if (detail::abs_double(diag) == 0.0) {
      throw SingularTriangle("basis function " + std::to_string(mu) +
                             " vanishes at its own node");
    }
    ddcplx rhs = (mu == m) ? ddcplx(1.0) : ddcplx();
    for (int j = mu + 1; j <= m; ++j) rhs -= values(mu, j) * conj_c[j];
    conj_c[mu] = rhs / diag;
  }
  std::vector<ddcplx> out(m + 1);
  for (int j = 0; j <= m; ++j) out[j] = detail::conj(conj_c[j]);
  return out;
}

double orthonormality_defect(const OrthonormalSystem& system) {
  // The audit itself is condition-limited in the same way as the
  // construction, so it accumulates in quad regardless of how the
  // system was built; the stored coefficients promote exactly.
  const int m_total = system.size();
  DenseMatrix<qdcplx> coeffs(m_total, m_total);
  for (int m = 0; m < m_total; ++m) {
    for (int j = 0; j <= m; ++j) coeffs(m, j) = qdcplx(system.coeffs(m, j));
  }
  return defect_of(coeffs, gram_of<qdcplx>(system.nodes));
}

double pivot_ratio(const OrthonormalSystem& system) {
  if (system.pivots.empty()) {
    throw PreconditionViolated("system has no pivots");
  }
  double lo = system.pivots.front(), hi = lo;
  for (double d : system.pivots) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi / lo;
}

}  // namespace bergwave
