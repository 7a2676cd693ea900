#ifndef BERGWAVE_BLASCHKE_HPP
#define BERGWAVE_BLASCHKE_HPP

#include <complex>

namespace bergwave {

using cplx = std::complex<double>;

// A Moebius self-map of the unit disc, parameterized by a point of
// D x T: z -> eps * (z - b) / (1 - conj(b) z). The parameter pairs form
// a group under function composition.
class GroupElement {
 public:
  // eps is renormalized to unit modulus on construction so that long
  // composition chains cannot drift off the torus.
  GroupElement(cplx b, cplx eps);
  GroupElement() : b_(0.0), eps_(1.0) {}

  static GroupElement identity() { return GroupElement(); }

  cplx b() const { return b_; }
  cplx eps() const { return eps_; }

 private:
  cplx b_;    // |b| < 1
  cplx eps_;  // |eps| = 1
};

// eps (z - b) / (1 - conj(b) z). Throws PoleAtInput when z is within
// 1e-14 of the pole 1/conj(b).
cplx blaschke_map(const GroupElement& a, cplx z);

// Group law: compose(a1, a2) is the parameter of the composed map
// B_{a1} o B_{a2}.
GroupElement compose(const GroupElement& a1, const GroupElement& a2);

// Inverse element (-b eps, conj(eps)).
GroupElement inverse(const GroupElement& a);

// Pseudohyperbolic metric |(w - z) / (1 - conj(w) z)| on the open disc.
double pseudo_distance(cplx z, cplx w);

// k-th node of the radial subgroup, (a^k - a^-k) / (a^k + a^-k).
// Requires a_base > 1 and 0 <= k <= 60.
double radial_node(double a_base, int k);

inline constexpr int kMaxRadialIndex = 60;

}  // namespace bergwave

#endif  // BERGWAVE_BLASCHKE_HPP
