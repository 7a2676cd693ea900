#ifndef BERGWAVE_SRC_QD_HPP
#define BERGWAVE_SRC_QD_HPP

// Quad-double arithmetic (~62 significant digits) for the
// orthonormalization core and its audits. The kernel-expansion
// coefficients of the deeper rings reach 1e12 and beyond while the
// quantities they produce are O(1), so every inner product against
// them is condition-limited: double-double bottoms out near 1e-7 on
// the stock grids. Sums and products are built from error-free
// transforms and Shewchuk-style distillation sweeps with early exit,
// favoring verifiable correctness over peak speed.

#include <cmath>
#include <complex>

#include "bergwave/dd.hpp"

namespace bergwave::detail {

struct qd {
  // Nonoverlapping components, descending magnitude.
  double c[4] = {0.0, 0.0, 0.0, 0.0};

  qd() = default;
  qd(double x) { c[0] = x; }
  qd(dd x) {
    c[0] = x.hi;
    c[1] = x.lo;
  }
};

namespace qd_impl {

// Distill a list of doubles into a nonoverlapping expansion and keep
// the four leading components. Each bottom-up two_sum sweep locks in
// one more leading component; a sweep that changes nothing ends the
// loop early. Slow but straightforwardly correct: the reference that
// the fast kernels below are property-tested against.
inline qd distill(double* xs, int n) {
  for (int pass = 0; pass < n - 1; ++pass) {
    bool changed = false;
    for (int i = n - 1; i > 0; --i) {
      const double a = xs[i - 1], b = xs[i];
      const dd s = two_sum(a, b);
      if (s.hi != a || s.lo != b) {
        xs[i - 1] = s.hi;
        xs[i] = s.lo;
        changed = true;
      }
    }
    if (!changed) break;
  }
  qd out;
  out.c[0] = xs[0];
  out.c[1] = n > 1 ? xs[1] : 0.0;
  out.c[2] = n > 2 ? xs[2] : 0.0;
  out.c[3] = n > 3 ? xs[3] : 0.0;
  return out;
}

inline qd add_reference(const qd& a, const qd& b) {
  double xs[8];
  int ia = 0, ib = 0, n = 0;
  while (ia < 4 && ib < 4) {
    if (std::fabs(a.c[ia]) >= std::fabs(b.c[ib])) {
      xs[n++] = a.c[ia++];
    } else {
      xs[n++] = b.c[ib++];
    }
  }
  while (ia < 4) xs[n++] = a.c[ia++];
  while (ib < 4) xs[n++] = b.c[ib++];
  return distill(xs, 8);
}

inline qd mul_reference(const qd& a, const qd& b) {
  double xs[22];
  int n = 0;
  const dd p00 = two_prod(a.c[0], b.c[0]);
  const dd p01 = two_prod(a.c[0], b.c[1]);
  const dd p10 = two_prod(a.c[1], b.c[0]);
  const dd p02 = two_prod(a.c[0], b.c[2]);
  const dd p11 = two_prod(a.c[1], b.c[1]);
  const dd p20 = two_prod(a.c[2], b.c[0]);
  xs[n++] = p00.hi;
  xs[n++] = p01.hi;
  xs[n++] = p10.hi;
  xs[n++] = p00.lo;
  xs[n++] = p02.hi;
  xs[n++] = p11.hi;
  xs[n++] = p20.hi;
  xs[n++] = p01.lo;
  xs[n++] = p10.lo;
  xs[n++] = a.c[0] * b.c[3];
  xs[n++] = a.c[1] * b.c[2];
  xs[n++] = a.c[2] * b.c[1];
  xs[n++] = a.c[3] * b.c[0];
  xs[n++] = p02.lo;
  xs[n++] = p11.lo;
  xs[n++] = p20.lo;
  xs[n++] = a.c[1] * b.c[3];
  xs[n++] = a.c[2] * b.c[2];
  xs[n++] = a.c[3] * b.c[1];
  xs[n++] = a.c[2] * b.c[3];
  xs[n++] = a.c[3] * b.c[2];
  xs[n++] = a.c[3] * b.c[3];
  return distill(xs, n);
}

// Fixed-flop kernels in the style of the QD library (Hida, Li,
// Bailey): error-free component sums followed by a five-term
// renormalization.

inline void three_sum(double& a, double& b, double& c) {
  const dd t1 = two_sum(a, b);
  const dd t2 = two_sum(t1.hi, c);
  a = t2.hi;
  const dd t3 = two_sum(t1.lo, t2.lo);
  b = t3.hi;
  c = t3.lo;
}

inline void three_sum2(double& a, double& b, double c) {
  const dd t1 = two_sum(a, b);
  const dd t2 = two_sum(t1.hi, c);
  a = t2.hi;
  b = t1.lo + t2.lo;
}

inline qd renorm5(double c0, double c1, double c2, double c3, double c4) {
  double s0, s1, s2 = 0.0, s3 = 0.0;
  dd p;
  p = quick_two_sum(c3, c4); s0 = p.hi; c4 = p.lo;
  p = quick_two_sum(c2, s0); s0 = p.hi; c3 = p.lo;
  p = quick_two_sum(c1, s0); s0 = p.hi; c2 = p.lo;
  p = quick_two_sum(c0, s0); c0 = p.hi; c1 = p.lo;

  p = quick_two_sum(c0, c1); s0 = p.hi; s1 = p.lo;
  if (s1 != 0.0) {
    p = quick_two_sum(s1, c2); s1 = p.hi; s2 = p.lo;
    if (s2 != 0.0) {
      p = quick_two_sum(s2, c3); s2 = p.hi; s3 = p.lo;
      if (s3 != 0.0) {
        s3 += c4;
      } else {
        p = quick_two_sum(s2, c4); s2 = p.hi; s3 = p.lo;
      }
    } else {
      p = quick_two_sum(s1, c3); s1 = p.hi; s2 = p.lo;
      if (s2 != 0.0) {
        p = quick_two_sum(s2, c4); s2 = p.hi; s3 = p.lo;
      } else {
        p = quick_two_sum(s1, c4); s1 = p.hi; s2 = p.lo;
      }
    }
  } else {
    p = quick_two_sum(s0, c2); s0 = p.hi; s1 = p.lo;
    if (s1 != 0.0) {
      p = quick_two_sum(s1, c3); s1 = p.hi; s2 = p.lo;
      if (s2 != 0.0) {
        p = quick_two_sum(s2, c4); s2 = p.hi; s3 = p.lo;
      } else {
        p = quick_two_sum(s1, c4); s1 = p.hi; s2 = p.lo;
      }
    } else {
      p = quick_two_sum(s0, c3); s0 = p.hi; s1 = p.lo;
      if (s1 != 0.0) {
        p = quick_two_sum(s1, c4); s1 = p.hi; s2 = p.lo;
      } else {
        p = quick_two_sum(s0, c4); s0 = p.hi; s1 = p.lo;
      }
    }
  }
  qd out;
  out.c[0] = s0;
  out.c[1] = s1;
  out.c[2] = s2;
  out.c[3] = s3;
  return out;
}

}  // namespace qd_impl

inline qd operator+(const qd& a, const qd& b) {
  double s0, s1, s2, s3, t0, t1, t2, t3;
  dd p;
  p = two_sum(a.c[0], b.c[0]); s0 = p.hi; t0 = p.lo;
  p = two_sum(a.c[1], b.c[1]); s1 = p.hi; t1 = p.lo;
  p = two_sum(a.c[2], b.c[2]); s2 = p.hi; t2 = p.lo;
  p = two_sum(a.c[3], b.c[3]); s3 = p.hi; t3 = p.lo;
  p = two_sum(s1, t0); s1 = p.hi; t0 = p.lo;
  qd_impl::three_sum(s2, t0, t1);
  qd_impl::three_sum2(s3, t0, t2);
  t0 = t0 + t1 + t3;
  return qd_impl::renorm5(s0, s1, s2, s3, t0);
}

inline qd operator-(const qd& a) {
  qd r;
  for (int i = 0; i < 4; ++i) r.c[i] = -a.c[i];
  return r;
}

inline qd operator-(const qd& a, const qd& b) { return a + (-b); }

inline qd operator*(const qd& a, const qd& b) {
  double p0, p1, p2, p3, p4, p5;
  double q0, q1, q2, q3, q4, q5;
  double s0, s1, s2, t0, t1;
  dd p;
  p = two_prod(a.c[0], b.c[0]); p0 = p.hi; q0 = p.lo;
  p = two_prod(a.c[0], b.c[1]); p1 = p.hi; q1 = p.lo;
  p = two_prod(a.c[1], b.c[0]); p2 = p.hi; q2 = p.lo;
  p = two_prod(a.c[0], b.c[2]); p3 = p.hi; q3 = p.lo;
  p = two_prod(a.c[1], b.c[1]); p4 = p.hi; q4 = p.lo;
  p = two_prod(a.c[2], b.c[0]); p5 = p.hi; q5 = p.lo;
  qd_impl::three_sum(p1, p2, q0);
  qd_impl::three_sum(p2, q1, q2);
  qd_impl::three_sum(p3, p4, p5);
  p = two_sum(p2, p3); s0 = p.hi; t0 = p.lo;
  p = two_sum(q1, p4); s1 = p.hi; t1 = p.lo;
  s2 = q2 + p5;
  p = two_sum(s1, t0); s1 = p.hi; t0 = p.lo;
  s2 += t0 + t1;
  s1 += a.c[0] * b.c[3] + a.c[1] * b.c[2] + a.c[2] * b.c[1] +
        a.c[3] * b.c[0] + q0 + q3 + q4 + q5;
  return qd_impl::renorm5(p0, p1, s0, s1, s2);
}

inline qd& operator+=(qd& a, const qd& b) { return a = a + b; }
inline qd& operator-=(qd& a, const qd& b) { return a = a - b; }

inline double to_double(const qd& a) {
  return ((a.c[3] + a.c[2]) + a.c[1]) + a.c[0];
}

inline dd to_dd(const qd& a) {
  const dd t = two_sum(a.c[0], a.c[1]);
  return {t.hi, t.lo + a.c[2] + a.c[3]};
}

inline qd operator/(const qd& a, const qd& b) {
  // Newton iteration on the reciprocal doubles the correct digits each
  // step; three steps from a double seed reach full precision, then one
  // remainder correction for the quotient.
  qd r(1.0 / b.c[0]);
  const qd two(2.0);
  for (int it = 0; it < 3; ++it) r = r * (two - b * r);
  qd q = a * r;
  q += (a - q * b) * r;
  return q;
}

inline qd sqrt(const qd& a) {
  if (a.c[0] <= 0.0) return qd(std::sqrt(a.c[0]));  // caller guards sign
  // Newton on the inverse square root, then one symmetric correction.
  qd y(1.0 / std::sqrt(a.c[0]));
  const qd half(0.5), three(3.0);
  for (int it = 0; it < 3; ++it) y = y * half * (three - a * y * y);
  qd s = a * y;
  s += (a - s * s) * y * half;
  return s;
}

inline bool operator<(const qd& a, const qd& b) {
  return to_double(a - b) < 0.0;
}

struct qdcplx {
  qd re, im;

  qdcplx() = default;
  qdcplx(qd r) : re(r) {}
  qdcplx(double r) : re(qd(r)) {}
  qdcplx(qd r, qd i) : re(r), im(i) {}
  qdcplx(const std::complex<double>& z) : re(qd(z.real())), im(qd(z.imag())) {}
  qdcplx(const ddcplx& z) : re(qd(z.re)), im(qd(z.im)) {}

  ddcplx to_ddcplx() const { return {to_dd(re), to_dd(im)}; }
};

inline qdcplx conj(const qdcplx& a) { return {a.re, -a.im}; }

inline qdcplx operator+(const qdcplx& a, const qdcplx& b) {
  return {a.re + b.re, a.im + b.im};
}
inline qdcplx operator-(const qdcplx& a, const qdcplx& b) {
  return {a.re - b.re, a.im - b.im};
}
inline qdcplx operator-(const qdcplx& a) { return {-a.re, -a.im}; }

inline qdcplx operator*(const qdcplx& a, const qdcplx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline qdcplx operator*(const qd& a, const qdcplx& b) {
  return {a * b.re, a * b.im};
}

inline qdcplx& operator+=(qdcplx& a, const qdcplx& b) { return a = a + b; }
inline qdcplx& operator-=(qdcplx& a, const qdcplx& b) { return a = a - b; }

inline qd abs_squared(const qdcplx& a) { return a.re * a.re + a.im * a.im; }

inline qdcplx operator/(const qdcplx& a, const qd& b) {
  return {a.re / b, a.im / b};
}

inline qdcplx operator/(const qdcplx& a, const qdcplx& b) {
  const qd n = abs_squared(b);
  const qdcplx num = a * conj(b);
  return {num.re / n, num.im / n};
}

inline qdcplx kernel_qd(std::complex<double> z, std::complex<double> w) {
  const qdcplx d = qdcplx(1.0) - conj(qdcplx(w)) * qdcplx(z);
  return qdcplx(qd(1.0)) / (d * d);
}

}  // namespace bergwave::detail

#endif  // BERGWAVE_SRC_QD_HPP
