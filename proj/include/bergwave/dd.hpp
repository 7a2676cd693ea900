#ifndef BERGWAVE_DD_HPP
#define BERGWAVE_DD_HPP

// Double-double arithmetic (Dekker / Knuth error-free transforms with
// FMA products), roughly 32 significant digits. The kernel Gram
// matrices of the node grids carry condition numbers far beyond 1/eps
// of IEEE double -- adjacent-ring kernels are nearly linearly
// dependent -- so the orthonormal-system coefficients are large and
// every sum against them cancels heavily. All such accumulations run
// in this type and round once on output.

#include <cmath>
#include <complex>

namespace bergwave::detail {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  dd() = default;
  dd(double h) : hi(h) {}
  dd(double h, double l) : hi(h), lo(l) {}
};

inline dd quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline dd two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
  const double q1 = a.hi / b.hi;
  dd r = a - b * dd(q1);
  const double q2 = r.hi / b.hi;
  r = r - b * dd(q2);
  const double q3 = r.hi / b.hi;
  dd q = quick_two_sum(q1, q2);
  return q + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { return a = a + b; }
inline dd& operator-=(dd& a, dd b) { return a = a - b; }
inline dd& operator*=(dd& a, dd b) { return a = a * b; }

inline bool operator<(dd a, dd b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(dd a, dd b) { return b < a; }

inline dd sqrt(dd a) {
  if (a.hi <= 0.0) return dd(std::sqrt(a.hi));  // caller guards sign
  const double x = 1.0 / std::sqrt(a.hi);
  const double y = a.hi * x;
  return dd(y) + (a - two_prod(y, y)) * dd(x * 0.5);
}

inline double to_double(dd a) { return a.hi + a.lo; }

struct ddcplx {
  dd re, im;

  ddcplx() = default;
  ddcplx(dd r) : re(r) {}
  ddcplx(double r) : re(r) {}
  ddcplx(dd r, dd i) : re(r), im(i) {}
  ddcplx(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_complex() const {
    return {to_double(re), to_double(im)};
  }
};

inline ddcplx conj(ddcplx a) { return {a.re, -a.im}; }

inline ddcplx operator+(ddcplx a, ddcplx b) {
  return {a.re + b.re, a.im + b.im};
}
inline ddcplx operator-(ddcplx a, ddcplx b) {
  return {a.re - b.re, a.im - b.im};
}
inline ddcplx operator-(ddcplx a) { return {-a.re, -a.im}; }

inline ddcplx operator*(ddcplx a, ddcplx b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline ddcplx operator*(dd a, ddcplx b) { return {a * b.re, a * b.im}; }

inline ddcplx& operator+=(ddcplx& a, ddcplx b) { return a = a + b; }
inline ddcplx& operator-=(ddcplx& a, ddcplx b) { return a = a - b; }

inline dd abs_squared(ddcplx a) { return a.re * a.re + a.im * a.im; }
inline double abs_double(ddcplx a) {
  return std::sqrt(std::abs(to_double(abs_squared(a))));
}

inline ddcplx operator/(ddcplx a, dd b) { return {a.re / b, a.im / b}; }

inline ddcplx operator/(ddcplx a, ddcplx b) {
  const dd n = abs_squared(b);
  const ddcplx num = a * conj(b);
  return {num.re / n, num.im / n};
}

// K(z, w) = 1 / (1 - conj(w) z)^2 with double inputs promoted exactly.
inline ddcplx kernel_dd(std::complex<double> z, std::complex<double> w) {
  const ddcplx d = ddcplx(1.0) - conj(ddcplx(w)) * ddcplx(z);
  return ddcplx(dd(1.0)) / (d * d);
}

}  // namespace bergwave::detail

#endif  // BERGWAVE_DD_HPP
