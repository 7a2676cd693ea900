#include "bergwave/transform.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "bergwave/errors.hpp"
#include "qd.hpp"

namespace bergwave {

using detail::dd;
using detail::ddcplx;
using detail::qd;
using detail::qdcplx;
using detail::to_double;

namespace {

// Uniform double in [0, 1) built from the raw engine output, so results
// do not depend on the standard library's distribution internals.
double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

ddcplx evaluate_dd(const TaylorFunction& f, cplx z) {
  const ddcplx zz(z);
  ddcplx acc;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    acc = acc * zz + ddcplx(*it);
  }
  return acc;
}

ddcplx evaluate_dd(const KernelExpansion& f, cplx z) {
  ddcplx acc;
  for (const KernelTerm& t : f.terms()) {
    kernel(z, t.node);  // pole guard
    acc += ddcplx(t.coeff) * detail::kernel_dd(z, t.node);
  }
  return acc;
}

ddcplx evaluate_dd(const ModelFunction& f, cplx z) {
  return std::visit([&](const auto& fn) { return evaluate_dd(fn, z); }, f);
}

qdcplx evaluate_qd(const TaylorFunction& f, cplx z) {
  const qdcplx zz(z);
  qdcplx acc;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    acc = acc * zz + qdcplx(*it);
  }
  return acc;
}

qdcplx evaluate_qd(const KernelExpansion& f, cplx z) {
  qdcplx acc;
  for (const KernelTerm& t : f.terms()) {
    kernel(z, t.node);  // pole guard
    acc += qdcplx(t.coeff) * detail::kernel_qd(z, t.node);
  }
  return acc;
}

qdcplx evaluate_qd(const ModelFunction& f, cplx z) {
  return std::visit([&](const auto& fn) { return evaluate_qd(fn, z); }, f);
}

qd norm_squared_qd(const TaylorFunction& f) {
  qd acc;
  for (std::size_t n = 0; n < f.coeffs().size(); ++n) {
    acc += detail::abs_squared(qdcplx(f.coeffs()[n])) /
           qd(static_cast<double>(n + 1));
  }
  return acc;
}

qd norm_squared_qd(const KernelExpansion& f) {
  qdcplx acc;
  for (const KernelTerm& s : f.terms()) {
    for (const KernelTerm& t : f.terms()) {
      acc += qdcplx(s.coeff) * detail::conj(qdcplx(t.coeff)) *
             detail::kernel_qd(t.node, s.node);
    }
  }
  return acc.re;
}

qd norm_squared_qd(const ModelFunction& f) {
  return std::visit([](const auto& fn) { return norm_squared_qd(fn); }, f);
}

// b_m = sum_{j <= m} conj(C(m, j)) f(a_j) from quad samples.
std::vector<qdcplx> analyze_qd(std::span<const qdcplx> samples,
                               const OrthonormalSystem& system) {
  const int m_total = system.size();
  std::vector<qdcplx> b(m_total);
  for (int m = 0; m < m_total; ++m) {
    const ddcplx* c = system.coeffs.row(m);
    qdcplx acc;
    for (int j = 0; j <= m; ++j) acc += detail::conj(qdcplx(c[j])) * samples[j];
    b[m] = acc;
  }
  return b;
}

std::vector<qdcplx> sample_function_qd(const ModelFunction& f,
                                       const OrthonormalSystem& system) {
  std::vector<qdcplx> samples(system.size());
  for (int j = 0; j < system.size(); ++j) {
    samples[j] = evaluate_qd(f, system.nodes[j]);
  }
  return samples;
}

// Kernel-expansion weights of sum_{m < upto} b_m psi_m.
std::vector<qdcplx> expansion_weights_qd(std::span<const qdcplx> b,
                                         const OrthonormalSystem& system,
                                         int upto) {
  const int m_total = system.size();
  if (upto < 0 || upto > m_total) upto = m_total;
  std::vector<qdcplx> w(m_total);
  for (int m = 0; m < upto; ++m) {
    const ddcplx* c = system.coeffs.row(m);
    for (int j = 0; j <= m; ++j) w[j] += b[m] * qdcplx(c[j]);
  }
  return w;
}

// ||sum_j w_j K(., a_j)||^2 through the Gram quadratic form.
qd gram_norm_squared_qd(std::span<const qdcplx> w,
                        const OrthonormalSystem& system) {
  const int n = static_cast<int>(w.size());
  qdcplx acc;
  for (int i = 0; i < n; ++i) {
    qdcplx row;
    for (int j = 0; j < n; ++j) {
      row += detail::kernel_qd(system.nodes[i], system.nodes[j]) * w[j];
    }
    acc += detail::conj(w[i]) * row;
  }
  return acc.re;
}

void check_sizes(const WaveletCoefficients& coeffs,
                 const OrthonormalSystem& system) {
  if (coeffs.size() != system.size()) {
    throw LengthMismatch("coefficient count " + std::to_string(coeffs.size()) +
                         " does not match system size " +
                         std::to_string(system.size()));
  }
}

std::vector<ddcplx> analyze_dd(std::span<const ddcplx> samples,
                               const OrthonormalSystem& system) {
  const int m_total = system.size();
  std::vector<ddcplx> b(m_total);
  for (int m = 0; m < m_total; ++m) {
    const ddcplx* c = system.coeffs.row(m);
    ddcplx acc;
    for (int j = 0; j <= m; ++j) acc += detail::conj(c[j]) * samples[j];
    b[m] = acc;
  }
  return b;
}

WaveletCoefficients round_coefficients(std::span<const ddcplx> b,
                                       const OrthonormalSystem& system) {
  WaveletCoefficients out;
  out.level_offsets = system.level_offsets;
  out.values.resize(b.size());
  for (std::size_t m = 0; m < b.size(); ++m) out.values[m] = b[m].to_complex();
  return out;
}

// Kernel-expansion weights of sum_{m < upto} b_m psi_m (double inputs).
std::vector<ddcplx> expansion_weights(const WaveletCoefficients& coeffs,
                                      const OrthonormalSystem& system,
                                      int upto) {
  check_sizes(coeffs, system);
  const int m_total = system.size();
  if (upto < 0 || upto > m_total) upto = m_total;
  std::vector<ddcplx> w(m_total);
  for (int m = 0; m < upto; ++m) {
    if (coeffs.values[m] == cplx(0.0)) continue;
    const ddcplx b(coeffs.values[m]);
    const ddcplx* c = system.coeffs.row(m);
    for (int j = 0; j <= m; ++j) w[j] += b * c[j];
  }
  return w;
}

ddcplx evaluate_weights(std::span<const ddcplx> w,
                        const OrthonormalSystem& system, cplx z) {
  ddcplx acc;
  for (std::size_t j = 0; j < w.size(); ++j) {
    kernel(z, system.nodes[j]);  // pole guard
    acc += w[j] * detail::kernel_dd(z, system.nodes[j]);
  }
  return acc;
}

}  // namespace

WaveletCoefficients analyze(std::span<const cplx> samples,
                            const OrthonormalSystem& system) {
  if (static_cast<int>(samples.size()) != system.size()) {
    throw LengthMismatch("sample count " + std::to_string(samples.size()) +
                         " does not match node count " +
                         std::to_string(system.size()));
  }
  std::vector<ddcplx> promoted(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) promoted[j] = samples[j];
  return round_coefficients(analyze_dd(promoted, system), system);
}

WaveletCoefficients analyze_function(const ModelFunction& f,
                                     const OrthonormalSystem& system) {
  std::vector<ddcplx> samples(system.size());
  for (int j = 0; j < system.size(); ++j) {
    samples[j] = evaluate_dd(f, system.nodes[j]);
  }
  return round_coefficients(analyze_dd(samples, system), system);
}

cplx synthesize(const WaveletCoefficients& coeffs,
                const OrthonormalSystem& system, cplx z) {
  const std::vector<ddcplx> w = expansion_weights(coeffs, system, -1);
  return evaluate_weights(w, system, z).to_complex();
}

std::vector<cplx> synthesize_many(const WaveletCoefficients& coeffs,
                                  const OrthonormalSystem& system,
                                  std::span<const cplx> points) {
  const std::vector<ddcplx> w = expansion_weights(coeffs, system, -1);
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const cplx& z : points) {
    out.push_back(evaluate_weights(w, system, z).to_complex());
  }
  return out;
}

KernelExpansion synthesize_expansion(const WaveletCoefficients& coeffs,
                                     const OrthonormalSystem& system,
                                     int truncate_m) {
  const std::vector<ddcplx> w = expansion_weights(coeffs, system, truncate_m);
  std::vector<KernelTerm> terms;
  terms.reserve(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    terms.push_back({system.nodes[j], w[j].to_complex()});
  }
  return KernelExpansion(std::move(terms));
}

cplx projection_kernel(const OrthonormalSystem& system, int count, cplx z,
                       cplx xi) {
  if (count < 0 || count > system.size()) {
    throw IndexOutOfRange("projection count not in [0, size]");
  }
  ddcplx acc;
  for (int m = 0; m < count; ++m) {
    acc += system.evaluate_basis_dd(m, z) *
           detail::conj(system.evaluate_basis_dd(m, xi));
  }
  return acc.to_complex();
}

cplx detail_component(const WaveletCoefficients& coeffs,
                      const OrthonormalSystem& system, int level, cplx z) {
  if (level < 0 || level + 1 > system.levels()) {
    throw LevelOutOfRange("detail level " + std::to_string(level) +
                          " needs ring " + std::to_string(level + 1) +
                          " in the grid");
  }
  check_sizes(coeffs, system);
  const int begin = system.level_offsets[level + 1];
  const int end = system.level_offsets[level + 2];
  ddcplx acc;
  for (int m = begin; m < end; ++m) {
    acc += ddcplx(coeffs.values[m]) * system.evaluate_basis_dd(m, z);
  }
  return acc.to_complex();
}

std::vector<LevelResidual> error_report(const ModelFunction& f,
                                        const OrthonormalSystem& system) {
  // The captured energy cancels against the norm to far more digits
  // than the residual carries when f lies in a resolution space, so the
  // whole chain accumulates in quad.
  const std::vector<qdcplx> samples = sample_function_qd(f, system);
  const std::vector<qdcplx> b = analyze_qd(samples, system);
  const qd total = norm_squared_qd(f);
  std::vector<LevelResidual> out;
  qd captured;
  int m = 0;
  for (int n = 0; n <= system.levels(); ++n) {
    const int upto = system.count_through_level(n);
    for (; m < upto; ++m) captured += detail::abs_squared(b[m]);
    // Clamp: rounding can push the Pythagorean difference slightly
    // negative when f lies in the span.
    const double res_sq = std::max(0.0, to_double(total - captured));
    out.push_back({n, upto, std::sqrt(res_sq)});
  }
  return out;
}

double projection_residual_norm_squared(const ModelFunction& f,
                                        const OrthonormalSystem& system,
                                        int upto_m) {
  if (upto_m < 0 || upto_m > system.size()) {
    throw IndexOutOfRange("basis count not in [0, size]");
  }
  const std::vector<qdcplx> samples = sample_function_qd(f, system);
  const std::vector<qdcplx> b = analyze_qd(samples, system);
  const std::vector<qdcplx> w = expansion_weights_qd(b, system, upto_m);
  // ||f - P f||^2 = ||f||^2 - 2 Re <f, P f> + ||P f||^2 with
  // <f, P f> = sum_j conj(w_j) f(a_j) by the reproducing property.
  qdcplx cross;
  for (int j = 0; j < system.size(); ++j) {
    cross += detail::conj(w[j]) * samples[j];
  }
  const qd value = norm_squared_qd(f) - qd(2.0) * cross.re +
                   gram_norm_squared_qd(w, system);
  return std::max(0.0, to_double(value));
}

bool minimal_norm_check(const ModelFunction& f,
                        const OrthonormalSystem& system, int level, int trials,
                        std::uint64_t seed) {
  if (level < 0 || level > system.levels()) {
    throw LevelOutOfRange("level " + std::to_string(level) + " not in system");
  }
  const int m_low = system.count_through_level(level);
  const int m_total = system.size();
  if (m_low >= m_total) {
    throw InsufficientDepth(
        "minimal-norm certificate needs at least one node beyond the "
        "interpolation rings");
  }

  const std::vector<qdcplx> samples = sample_function_qd(f, system);
  const std::vector<qdcplx> b = analyze_qd(samples, system);
  const std::vector<qdcplx> base = expansion_weights_qd(b, system, m_low);
  const double base_sq = to_double(gram_norm_squared_qd(base, system));

  std::mt19937_64 eng(seed);
  std::vector<qdcplx> perturbed(m_total);
  for (int t = 0; t < trials; ++t) {
    const int m = m_low + static_cast<int>(uniform01(eng) * (m_total - m_low));
    // Valid perturbations vanish at every interpolation node; the basis
    // construction guarantees it, but a perturbation that fails the
    // check is skipped rather than miscounted.
    bool vanishes = true;
    for (int j = 0; j < m_low; ++j) {
      if (std::abs(system.basis_value(m, j)) > 1e-10) {
        vanishes = false;
        break;
      }
    }
    if (!vanishes) continue;
    const double mag = 0.25 + uniform01(eng);
    const cplx c = std::polar(mag, 2.0 * std::numbers::pi * uniform01(eng));
    for (int j = 0; j < m_total; ++j) {
      perturbed[j] = base[j] + qdcplx(c) * qdcplx(system.coeffs(m, j));
    }
    const double sum_sq = to_double(gram_norm_squared_qd(perturbed, system));
    const double tol = 1e-10 * (1.0 + base_sq + std::norm(c));
    if (std::abs(sum_sq - base_sq - std::norm(c)) > tol) return false;
    if (!(sum_sq > base_sq)) return false;
  }
  return true;
}

}  // namespace bergwave
