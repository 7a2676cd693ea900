#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bergwave/errors.hpp"
#include "bergwave/grid.hpp"
#include "bergwave/ortho.hpp"
#include "test_support.hpp"

using namespace bergwave;
using detail::abs_double;
using testing::random_disc_point;
using testing::u01;

namespace {

GridConfig two_node_config() {
  GridConfig cfg;
  cfg.a_base = 2.0;
  cfg.levels = 1;
  cfg.schedule = {1, 1};
  return cfg;
}

}  // namespace

TEST_CASE("gram matrix examples") {
  const std::vector<cplx> single{cplx(0.0)};
  const CMatrix g1 = gram_matrix(single);
  CHECK(g1.rows() == 1);
  CHECK(g1(0, 0) == cplx(1.0));

  const std::vector<cplx> pair{cplx(0.0), cplx(0.6, 0.0)};
  const CMatrix g2 = gram_matrix(pair);
  CHECK(g2(0, 0) == cplx(1.0));
  CHECK(g2(0, 1) == cplx(1.0));
  CHECK(g2(1, 0) == cplx(1.0));
  CHECK(std::abs(g2(1, 1) - cplx(2.44140625, 0.0)) < 1e-12);

  const std::vector<cplx> dup{cplx(0.1, 0.2), cplx(0.1, 0.2)};
  CHECK_THROWS_AS(gram_matrix(dup), DuplicateNode);
}

TEST_CASE("gram matrices are positive definite") {
  // brute-force eigencheck with the Jacobi oracle on random separated
  // node sets
  std::mt19937_64 eng(79);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<cplx> nodes;
    while (nodes.size() < 24) {
      const cplx cand = random_disc_point(eng, 0.8);
      bool ok = true;
      for (const cplx& n : nodes) {
        if (pseudo_distance(cand, n) < 0.15) {
          ok = false;
          break;
        }
      }
      if (ok) nodes.push_back(cand);
    }
    const CMatrix gram = gram_matrix(nodes);
    CHECK(testing::jacobi_min_eigenvalue(gram) > 0.0);
  }
}

TEST_CASE("orthonormalize the singleton grid") {
  const OrthonormalSystem sys = orthonormalize(Grid(GridConfig::quad_base(0)));
  CHECK(sys.size() == 1);
  CHECK(std::abs(sys.coeff(0, 0) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(sys.pivots[0] - 1.0) < 1e-15);
  CHECK(std::abs(sys.evaluate_basis(0, cplx(0.3, 0.7)) - cplx(1.0)) < 1e-14);
}

TEST_CASE("orthonormalize the two node grid by hand") {
  const OrthonormalSystem sys = orthonormalize(Grid(two_node_config()));
  REQUIRE(sys.size() == 2);
  const double d2 = 2.44140625 - 1.0;
  CHECK(std::abs(sys.pivots[1] - d2) < 1e-12);
  CHECK(std::abs(sys.basis_value(1, 1) - std::sqrt(d2)) < 1e-12);
  CHECK(std::abs(std::sqrt(d2) - 1.20058579) < 1e-8);
  // row 1 is (K(., 0.6) - K(., 0)) / sqrt(d2)
  CHECK(std::abs(sys.coeff(1, 0) + 1.0 / std::sqrt(d2)) < 1e-12);
  CHECK(std::abs(sys.coeff(1, 1) - 1.0 / std::sqrt(d2)) < 1e-12);
  CHECK(std::abs(sys.basis_value(1, 0)) < 1e-14);  // vanishes at node 0
}

TEST_CASE("orthonormal system invariants on one ring") {
  const Grid grid(GridConfig::quad_base(1));
  const OrthonormalSystem sys = orthonormalize(grid);
  REQUIRE(sys.size() == 33);

  CHECK(orthonormality_defect(sys) < 1e-8);

  for (int m = 0; m < sys.size(); ++m) {
    // triangular coefficients, positive real diagonal
    for (int j = m + 1; j < sys.size(); ++j) {
      CHECK(abs_double(sys.coeffs(m, j)) == 0.0);
    }
    CHECK(sys.coeff(m, m).real() > 0.0);
    CHECK(std::abs(sys.coeff(m, m).imag()) < 1e-20);
    CHECK(sys.pivots[m] > 0.0);
    // vanishing at earlier nodes, sqrt(pivot) at its own node
    for (int j = 0; j < m; ++j) {
      CHECK(std::abs(sys.basis_value(m, j)) < 1e-10);
    }
    CHECK(std::abs(sys.basis_value(m, m) - std::sqrt(sys.pivots[m])) <
          1e-10 * std::sqrt(sys.pivots[m]));
    CHECK(std::abs(sys.basis_value(m, m).imag()) < 1e-12);
  }

  CHECK(sys.level_of(0) == 0);
  CHECK(sys.level_of(1) == 1);
  CHECK(sys.level_of(32) == 1);
  CHECK(sys.count_through_level(0) == 1);
  CHECK(sys.count_through_level(1) == 33);
}

TEST_CASE("construction paths agree") {
  // quad-precision Gram-Schmidt vs the residual-kernel recursion
  for (const GridConfig& cfg :
       {two_node_config(), GridConfig::quad_base(1), GridConfig::sqrt2_base(2)}) {
    const Grid grid(cfg);
    const OrthonormalSystem mgs = orthonormalize(grid, WorkingPrecision::quad);
    const OrthonormalSystem rec = orthonormalize_residual_recursion(grid);
    REQUIRE(mgs.size() == rec.size());
    double worst = 0.0;
    for (int m = 0; m < mgs.size(); ++m) {
      CHECK(std::abs(mgs.pivots[m] - rec.pivots[m]) <
            1e-10 * (1.0 + rec.pivots[m]));
      for (int j = 0; j <= m; ++j) {
        worst = std::max(worst, abs_double(mgs.coeffs(m, j) - rec.coeffs(m, j)));
      }
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("working precisions agree where double-double resolves") {
  const Grid grid(GridConfig::quad_base(1));
  const OrthonormalSystem dd_sys =
      orthonormalize(grid, WorkingPrecision::double_double);
  const OrthonormalSystem qd_sys = orthonormalize(grid, WorkingPrecision::quad);
  // both audits pass the production gate; the coefficients agree to the
  // double-double forward-error level on this grid
  CHECK(orthonormality_defect(dd_sys) < 1e-8);
  CHECK(orthonormality_defect(qd_sys) < 1e-12);
  double worst = 0.0;
  for (int m = 0; m < dd_sys.size(); ++m) {
    for (int j = 0; j <= m; ++j) {
      worst = std::max(worst, abs_double(dd_sys.coeffs(m, j) - qd_sys.coeffs(m, j)));
    }
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("residual kernel") {
  const Grid grid(GridConfig::quad_base(1));
  const OrthonormalSystem sys = orthonormalize(grid);
  std::mt19937_64 eng(83);

  // zero removals give back the reproducing kernel
  for (int i = 0; i < 10; ++i) {
    const cplx z = random_disc_point(eng, 0.9);
    const cplx w = random_disc_point(eng, 0.9);
    CHECK(std::abs(residual_kernel(sys, 0, z, w) - kernel(z, w)) < 1e-12);
  }

  // vanishes at consumed nodes
  for (int m : {5, 20, 33}) {
    for (int j = 0; j < m; ++j) {
      const cplx w = random_disc_point(eng, 0.9);
      CHECK(std::abs(residual_kernel(sys, m, sys.nodes[j], w)) < 1e-9);
    }
  }

  // Hermitian and nonnegative on the diagonal
  for (int i = 0; i < 20; ++i) {
    const cplx z = random_disc_point(eng, 0.9);
    const cplx w = random_disc_point(eng, 0.9);
    const cplx a = residual_kernel(sys, 12, z, w);
    const cplx b = residual_kernel(sys, 12, w, z);
    CHECK(std::abs(a - std::conj(b)) < 1e-10);
    CHECK(residual_kernel(sys, 12, z, z).real() > -1e-12);
  }

  // independent downdate oracle over the value matrix
  for (int removed : {1, 7, 33}) {
    for (int i = 0; i < 5; ++i) {
      const cplx z = random_disc_point(eng, 0.85);
      const cplx w = random_disc_point(eng, 0.85);
      const cplx lib = residual_kernel(sys, removed, z, w);
      const cplx oracle =
          testing::residual_kernel_gauss(sys.nodes, removed, z, w);
      CHECK(std::abs(lib - oracle) < 1e-9 * (1.0 + std::abs(oracle)));
    }
  }

  CHECK_THROWS_AS(residual_kernel(sys, -1, cplx(0.0), cplx(0.0)),
                  IndexOutOfRange);
  CHECK_THROWS_AS(residual_kernel(sys, 34, cplx(0.0), cplx(0.0)),
                  IndexOutOfRange);
}

TEST_CASE("triangular coefficients recover the rows") {
  const Grid grid(GridConfig::sqrt2_base(2));
  const OrthonormalSystem sys = orthonormalize(grid, WorkingPrecision::quad);

  const auto c0 = triangular_coefficients(sys, 0);
  REQUIRE(c0.size() == 1);
  CHECK(abs_double(c0[0] - sys.coeffs(0, 0)) < 1e-14);

  for (int m = 0; m < sys.size(); ++m) {
    const auto c = triangular_coefficients(sys, m);
    for (int j = 0; j <= m; ++j) {
      CHECK(abs_double(c[j] - sys.coeffs(m, j)) < 1e-10);
    }
  }
}

TEST_CASE("triangular coefficients on the two node grid by hand") {
  const OrthonormalSystem sys = orthonormalize(Grid(two_node_config()));
  const auto c = triangular_coefficients(sys, 1);
  const double d2 = 1.44140625;
  // back-substitution: conj(c_1) = 1 / sqrt(d2), then row 0 gives c_0
  CHECK(std::abs(c[1].to_complex() - cplx(1.0 / std::sqrt(d2), 0.0)) < 1e-12);
  CHECK(std::abs(c[0].to_complex() + cplx(1.0 / std::sqrt(d2), 0.0)) < 1e-12);
}

TEST_CASE("extremal property of the basis diagonal") {
  // among unit functions vanishing on the earlier nodes, the basis
  // function maximizes the real part at its own node
  const Grid grid(GridConfig::quad_base(1));
  const OrthonormalSystem sys = orthonormalize(grid);
  std::mt19937_64 eng(89);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(u01(eng) * (sys.size() - 1));
    std::vector<cplx> combo(sys.size() - m);
    double nsq = 0.0;
    for (cplx& c : combo) {
      c = cplx(2.0 * u01(eng) - 1.0, 2.0 * u01(eng) - 1.0);
      nsq += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(nsq);
    cplx at_node = 0.0;
    for (std::size_t i = 0; i < combo.size(); ++i) {
      at_node += inv * combo[i] * sys.basis_value(m + i, m);
    }
    CHECK(at_node.real() <= sys.basis_value(m, m).real() + 1e-10);
  }
}

TEST_CASE("degenerate pivot guard") {
  // many nodes crammed onto a tiny ring make the kernels numerically
  // dependent long before the ring is exhausted
  GridConfig cfg;
  cfg.a_base = 1.05;
  cfg.levels = 1;
  cfg.schedule = {1, 64};
  CHECK_THROWS_AS(orthonormalize(Grid(cfg)), DegeneratePivot);
}

TEST_CASE("pivot ratio") {
  const OrthonormalSystem sys = orthonormalize(Grid(GridConfig::quad_base(1)));
  CHECK(pivot_ratio(sys) >= 1.0);
  OrthonormalSystem empty;
  CHECK_THROWS_AS(pivot_ratio(empty), PreconditionViolated);
}

TEST_CASE("basis function snapshot matches evaluation") {
  const Grid grid(GridConfig::sqrt2_base(1));
  const OrthonormalSystem sys = orthonormalize(grid);
  std::mt19937_64 eng(97);
  for (int m = 0; m < sys.size(); ++m) {
    const KernelExpansion f = sys.basis_function(m);
    for (int i = 0; i < 3; ++i) {
      const cplx z = random_disc_point(eng, 0.9);
      CHECK(std::abs(f.evaluate(z) - sys.evaluate_basis(m, z)) < 1e-9);
    }
  }
  CHECK_THROWS_AS(sys.basis_function(-1), IndexOutOfRange);
  CHECK_THROWS_AS(sys.evaluate_basis(9, cplx(0.0)), IndexOutOfRange);
}

TEST_CASE("wavelet block orthogonality against normalized kernels") {
  // basis functions from deeper rings vanish at every earlier node, so
  // they are orthogonal to the normalized kernels of those nodes
  const Grid grid(GridConfig::sqrt2_base(2));
  const OrthonormalSystem sys = orthonormalize(grid);
  const int first_deep = sys.count_through_level(1);
  for (int m = first_deep; m < sys.size(); ++m) {
    for (int j = 0; j < first_deep; ++j) {
      CHECK(std::abs(sys.basis_value(m, j)) < 1e-10);
    }
  }
}
