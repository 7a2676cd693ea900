#ifndef BERGWAVE_QUADRATURE_HPP
#define BERGWAVE_QUADRATURE_HPP

#include <vector>

#include "bergwave/bergman.hpp"

namespace bergwave {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre nodes and weights on [x1, x2], found by Newton
// iteration on the Legendre recurrence.
QuadratureRule gauss_legendre(int n, double x1 = -1.0, double x2 = 1.0);

// Numerical integral of f conj(g) over the unit disc with normalized
// area measure: Gauss-Legendre in t = r^2 on [0, 1], trapezoid in the
// angle. Independent oracle for inner_product; converges to it as the
// node counts grow.
cplx quadrature_inner_product(const ModelFunction& f, const ModelFunction& g,
                              int radial_nodes, int angular_nodes);

}  // namespace bergwave

#endif  // BERGWAVE_QUADRATURE_HPP
