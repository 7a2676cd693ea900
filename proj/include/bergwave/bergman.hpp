#ifndef BERGWAVE_BERGMAN_HPP
#define BERGWAVE_BERGMAN_HPP

#include <variant>
#include <vector>

#include "bergwave/blaschke.hpp"

namespace bergwave {

// Reproducing kernel of A^2: K(z, w) = 1 / (1 - conj(w) z)^2.
// Throws NearSingular when |1 - conj(w) z| < 1e-14.
cplx kernel(cplx z, cplx w);

inline constexpr int kMaxTaylorDegree = 512;

// An element of A^2 given by finitely many Taylor coefficients at 0.
// ||f||^2 = sum |c_n|^2 / (n + 1).
class TaylorFunction {
 public:
  TaylorFunction() : coeffs_(1, cplx(0.0)) {}
  explicit TaylorFunction(std::vector<cplx> coeffs);
  static TaylorFunction monomial(int n, cplx c = 1.0);

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  cplx evaluate(cplx z) const;  // Horner
  double norm_squared() const;

 private:
  std::vector<cplx> coeffs_;
};

struct KernelTerm {
  cplx node;   // in the open disc
  cplx coeff;
};

// A finite combination sum_j coeff_j K(., node_j). Duplicate nodes are
// merged on construction by summing their coefficients.
class KernelExpansion {
 public:
  KernelExpansion() = default;
  explicit KernelExpansion(std::vector<KernelTerm> terms);

  const std::vector<KernelTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  cplx evaluate(cplx z) const;
  double norm_squared() const;

 private:
  std::vector<KernelTerm> terms_;
};

// (1 - |w|^2) K(., w); has unit A^2 norm.
KernelExpansion normalized_kernel(cplx w);

// Exact inner products <f, g> = integral of f conj(g) over the disc with
// normalized area measure. Taylor x Taylor uses the coefficient sum;
// anything paired with a kernel term uses the reproducing property.
cplx inner_product(const TaylorFunction& f, const TaylorFunction& g);
cplx inner_product(const TaylorFunction& f, const KernelExpansion& g);
cplx inner_product(const KernelExpansion& f, const TaylorFunction& g);
cplx inner_product(const KernelExpansion& f, const KernelExpansion& g);

// Either representation of a model function.
using ModelFunction = std::variant<TaylorFunction, KernelExpansion>;

cplx evaluate(const ModelFunction& f, cplx z);
cplx inner_product(const ModelFunction& f, const ModelFunction& g);
double norm_squared(const ModelFunction& f);
double norm(const ModelFunction& f);

// Unitary representation of the group on A^2:
//   (U_a f)(z) = F(z) f(B(z)),
// where B is the inverse Moebius map of a and F the squared cocycle
// factor eps_inv (1 - |b_inv|^2) / (1 - conj(b_inv) z)^2 of that inverse.
// Each kernel term maps in closed form to a multiple of a kernel term at
// the image node, so the result has the same number of terms and the
// same norm.
KernelExpansion representation_apply(const GroupElement& a,
                                     const KernelExpansion& f);

// Taylor coefficients 0..degree of U_a g for a polynomial g, via
// truncated power series of the cocycle factor and the Moebius map.
std::vector<cplx> representation_taylor(const GroupElement& a,
                                        const TaylorFunction& g, int degree);

// Voice transform (V_g f)(x) = <f, U_x g>. Every pairing of model
// functions is supported in closed form: kernel g directly, kernel f
// through the adjoint <U_{x^-1} f, g>, and Taylor x Taylor through the
// truncated series of U_x g (exact, since f has finite degree).
cplx voice_transform(const ModelFunction& f, const ModelFunction& g,
                     const GroupElement& x);

}  // namespace bergwave

#endif  // BERGWAVE_BERGMAN_HPP
