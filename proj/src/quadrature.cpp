#include "bergwave/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bergwave/errors.hpp"

namespace bergwave {

QuadratureRule gauss_legendre(int n, double x1, double x2) {
  if (n < 1) throw PreconditionViolated("quadrature order must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double eps = std::numeric_limits<double>::epsilon();
  const double xm = 0.5 * (x2 + x1);
  const double xl = 0.5 * (x2 - x1);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0, z1;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::abs(z - z1) > eps);
    rule.nodes[i] = xm - xl * z;
    rule.nodes[n - 1 - i] = xm + xl * z;
    rule.weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

cplx quadrature_inner_product(const ModelFunction& f, const ModelFunction& g,
                              int radial_nodes, int angular_nodes) {
  if (radial_nodes < 1 || angular_nodes < 1) {
    throw PreconditionViolated("quadrature node counts must be positive");
  }
  // With t = r^2 the normalized area integral becomes
  //   (1/T) sum_theta  sum_t w_t f(sqrt(t) e^{i theta}) conj(g(...)),
  // and the periodic trapezoid sum annihilates the half-integer powers
  // of t, so Gauss-Legendre sees a smooth radial profile.
  const QuadratureRule radial = gauss_legendre(radial_nodes, 0.0, 1.0);
  cplx acc = 0.0;
  for (int j = 0; j < angular_nodes; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / angular_nodes;
    const cplx dir = std::polar(1.0, theta);
    cplx line = 0.0;
    for (int i = 0; i < radial_nodes; ++i) {
      const cplx z = std::sqrt(radial.nodes[i]) * dir;
      line += radial.weights[i] * evaluate(f, z) * std::conj(evaluate(g, z));
    }
    acc += line;
  }
  return acc / static_cast<double>(angular_nodes);
}

}  // namespace bergwave
