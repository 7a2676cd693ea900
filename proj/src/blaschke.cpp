#include "bergwave/blaschke.hpp"

#include <cassert>
#include <cmath>

#include "bergwave/errors.hpp"

namespace bergwave {

GroupElement::GroupElement(cplx b, cplx eps) : b_(b), eps_(eps) {
  if (!std::isfinite(b.real()) || !std::isfinite(b.imag()) ||
      !std::isfinite(eps.real()) || !std::isfinite(eps.imag())) {
    throw PreconditionViolated("group element components must be finite");
  }
  if (std::abs(b) >= 1.0) {
    throw PreconditionViolated("group element requires |b| < 1");
  }
  const double m = std::abs(eps);
  if (m == 0.0) {
    throw PreconditionViolated("group element requires eps != 0");
  }
  eps_ /= m;
}

cplx blaschke_map(const GroupElement& a, cplx z) {
  const cplx den = 1.0 - std::conj(a.b()) * z;
  if (std::abs(den) < 1e-14) {
    throw PoleAtInput("blaschke_map: input within 1e-14 of the pole");
  }
  return a.eps() * (z - a.b()) / den;
}

GroupElement compose(const GroupElement& a1, const GroupElement& a2) {
  const cplx b1 = a1.b(), e1 = a1.eps();
  const cplx b2 = a2.b(), e2 = a2.eps();
  const cplx den_b = 1.0 + b1 * std::conj(b2) * std::conj(e2);
  const cplx den_e = 1.0 + e2 * std::conj(b1) * b2;
  assert(std::abs(den_b) > 0.0 && std::abs(den_e) > 0.0);
  const cplx b = (b1 * std::conj(e2) + b2) / den_b;
  const cplx eps = e1 * (e2 + b1 * std::conj(b2)) / den_e;
  return GroupElement(b, eps);
}

GroupElement inverse(const GroupElement& a) {
  return GroupElement(-a.b() * a.eps(), std::conj(a.eps()));
}

double pseudo_distance(cplx z, cplx w) {
  return std::abs((w - z) / (1.0 - std::conj(w) * z));
}

double radial_node(double a_base, int k) {
  if (!(a_base > 1.0)) {
    throw InvalidBase("radial_node: base must be > 1");
  }
  if (k < 0 || k > kMaxRadialIndex) {
    throw IndexOutOfRange("radial_node: index must be in [0, 60]");
  }
  const double ak = std::pow(a_base, k);
  const double amk = std::pow(a_base, -k);
  return (ak - amk) / (ak + amk);
}

}  // namespace bergwave
