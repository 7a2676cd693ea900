#include "bergwave/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "bergwave/errors.hpp"

namespace bergwave {

namespace {

cplx sq(cplx z) { return z * z; }

}  // namespace

cplx kernel(cplx z, cplx w) {
  const cplx den = 1.0 - std::conj(w) * z;
  if (std::abs(den) < 1e-14) {
    throw NearSingular("kernel evaluated within 1e-14 of its pole");
  }
  return 1.0 / sq(den);
}

// -- TaylorFunction ----------------------------------------------------------

TaylorFunction::TaylorFunction(std::vector<cplx> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.assign(1, cplx(0.0));
  if (degree() > kMaxTaylorDegree) {
    throw PreconditionViolated("Taylor degree exceeds the cap of 512");
  }
}

TaylorFunction TaylorFunction::monomial(int n, cplx c) {
  if (n < 0) throw PreconditionViolated("monomial degree must be >= 0");
  std::vector<cplx> coeffs(n + 1, cplx(0.0));
  coeffs[n] = c;
  return TaylorFunction(std::move(coeffs));
}

cplx TaylorFunction::evaluate(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

double TaylorFunction::norm_squared() const {
  double s = 0.0;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    s += std::norm(coeffs_[n]) / static_cast<double>(n + 1);
  }
  return s;
}

// -- KernelExpansion ---------------------------------------------------------

KernelExpansion::KernelExpansion(std::vector<KernelTerm> terms) {
  for (const KernelTerm& t : terms) {
    if (std::abs(t.node) >= 1.0) {
      throw PreconditionViolated("kernel node must lie in the open disc");
    }
    auto hit = std::find_if(terms_.begin(), terms_.end(), [&](const KernelTerm& u) {
      return u.node == t.node;
    });
    if (hit != terms_.end()) {
      hit->coeff += t.coeff;
    } else {
      terms_.push_back(t);
    }
  }
}

cplx KernelExpansion::evaluate(cplx z) const {
  cplx acc = 0.0;
  for (const KernelTerm& t : terms_) acc += t.coeff * kernel(z, t.node);
  return acc;
}

double KernelExpansion::norm_squared() const {
  cplx acc = 0.0;
  for (const KernelTerm& s : terms_) {
    for (const KernelTerm& t : terms_) {
      acc += s.coeff * std::conj(t.coeff) * kernel(t.node, s.node);
    }
  }
  return std::max(0.0, acc.real());
}

KernelExpansion normalized_kernel(cplx w) {
  if (std::abs(w) >= 1.0) {
    throw PreconditionViolated("kernel node must lie in the open disc");
  }
  return KernelExpansion({{w, 1.0 - std::norm(w)}});
}

// -- inner products ----------------------------------------------------------

cplx inner_product(const TaylorFunction& f, const TaylorFunction& g) {
  const std::size_t n = std::min(f.coeffs().size(), g.coeffs().size());
  cplx s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += f.coeffs()[i] * std::conj(g.coeffs()[i]) / static_cast<double>(i + 1);
  }
  return s;
}

cplx inner_product(const TaylorFunction& f, const KernelExpansion& g) {
  cplx s = 0.0;
  for (const KernelTerm& t : g.terms()) {
    s += std::conj(t.coeff) * f.evaluate(t.node);
  }
  return s;
}

cplx inner_product(const KernelExpansion& f, const TaylorFunction& g) {
  return std::conj(inner_product(g, f));
}

cplx inner_product(const KernelExpansion& f, const KernelExpansion& g) {
  cplx s = 0.0;
  for (const KernelTerm& t : g.terms()) {
    s += std::conj(t.coeff) * f.evaluate(t.node);
  }
  return s;
}

cplx evaluate(const ModelFunction& f, cplx z) {
  return std::visit([&](const auto& fn) { return fn.evaluate(z); }, f);
}

cplx inner_product(const ModelFunction& f, const ModelFunction& g) {
  return std::visit(
      [](const auto& a, const auto& b) { return inner_product(a, b); }, f, g);
}

double norm_squared(const ModelFunction& f) {
  return std::visit([](const auto& fn) { return fn.norm_squared(); }, f);
}

double norm(const ModelFunction& f) { return std::sqrt(norm_squared(f)); }

// -- representation ----------------------------------------------------------

KernelExpansion representation_apply(const GroupElement& a,
                                     const KernelExpansion& f) {
  const cplx b = a.b();
  const cplx eps = a.eps();
  const double w_b = 1.0 - std::norm(b);
  std::vector<KernelTerm> out;
  out.reserve(f.terms().size());
  for (const KernelTerm& t : f.terms()) {
    // U_a K(., w) = conj(eps) (1 - |b|^2) / (1 - conj(w) b)^2 K(., B_a(w))
    const cplx factor = std::conj(eps) * w_b / sq(1.0 - std::conj(t.node) * b);
    out.push_back({blaschke_map(a, t.node), t.coeff * factor});
  }
  return KernelExpansion(std::move(out));
}

std::vector<cplx> representation_taylor(const GroupElement& a,
                                        const TaylorFunction& g, int degree) {
  if (degree < 0) throw PreconditionViolated("degree must be >= 0");
  const int n = degree + 1;
  const cplx b = a.b();
  const cplx eps = a.eps();
  const cplx q = std::conj(b) * std::conj(eps);

  // geo[i] = (-q)^i; 1 / (1 + q z)^2 = sum (i + 1) (-q)^i z^i.
  std::vector<cplx> geo(n);
  geo[0] = 1.0;
  for (int i = 1; i < n; ++i) geo[i] = geo[i - 1] * (-q);

  // Series of the inverse Moebius map conj(eps) (z + b eps) / (1 + q z).
  std::vector<cplx> mob(n);
  for (int i = 0; i < n; ++i) {
    cplx c = b * eps * geo[i];
    if (i >= 1) c += geo[i - 1];
    mob[i] = std::conj(eps) * c;
  }

  // g composed with the Moebius series, truncated to the degree; exact
  // for the coefficients kept because truncation commutes with products.
  auto mul = [n](const std::vector<cplx>& u, const std::vector<cplx>& v) {
    std::vector<cplx> w(n, cplx(0.0));
    for (int i = 0; i < n; ++i) {
      if (u[i] == cplx(0.0)) continue;
      for (int j = 0; i + j < n; ++j) w[i + j] += u[i] * v[j];
    }
    return w;
  };
  std::vector<cplx> comp(n, cplx(0.0));
  std::vector<cplx> power(n, cplx(0.0));
  power[0] = 1.0;
  for (int m = 0; m <= g.degree(); ++m) {
    const cplx gm = g.coeffs()[m];
    if (gm != cplx(0.0)) {
      for (int i = 0; i < n; ++i) comp[i] += gm * power[i];
    }
    if (m < g.degree()) power = mul(power, mob);
  }

  // Multiply by the squared cocycle factor of the inverse element.
  std::vector<cplx> cocycle(n);
  const cplx lead = std::conj(eps) * (1.0 - std::norm(b));
  for (int i = 0; i < n; ++i) {
    cocycle[i] = lead * static_cast<double>(i + 1) * geo[i];
  }
  return mul(cocycle, comp);
}

cplx voice_transform(const ModelFunction& f, const ModelFunction& g,
                     const GroupElement& x) {
  if (const auto* gk = std::get_if<KernelExpansion>(&g)) {
    return inner_product(f, ModelFunction(representation_apply(x, *gk)));
  }
  const auto& gt = std::get<TaylorFunction>(g);
  if (const auto* fk = std::get_if<KernelExpansion>(&f)) {
    // Unitarity: <f, U_x g> = <U_{x^-1} f, g>.
    return inner_product(representation_apply(inverse(x), *fk), gt);
  }
  const auto& ft = std::get<TaylorFunction>(f);
  const std::vector<cplx> h = representation_taylor(x, gt, ft.degree());
  cplx s = 0.0;
  for (std::size_t i = 0; i < ft.coeffs().size(); ++i) {
    s += ft.coeffs()[i] * std::conj(h[i]) / static_cast<double>(i + 1);
  }
  return s;
}

}  // namespace bergwave
