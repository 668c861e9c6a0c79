#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace haarcorr {

// Exact arithmetic backed by GMP. All analytic moment formulas are evaluated
// in these types; doubles are renderings, never ground truth.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

inline double to_double(const Rat& r) { return r.get_d(); }

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline Int ipow(const Int& base, unsigned e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// Complex number with exact rational real and imaginary parts.
struct CRat {
  Rat re{0};
  Rat im{0};

  CRat() = default;
  CRat(Rat r) : re(std::move(r)) {}
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_real() const { return im == 0; }
  bool is_zero() const { return re == 0 && im == 0; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  CRat conj() const { return {re, -im}; }

  CRat& operator+=(const CRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRat& operator-=(const CRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  CRat& operator*=(const CRat& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  friend CRat operator+(CRat a, const CRat& b) { return a += b; }
  friend CRat operator-(CRat a, const CRat& b) { return a -= b; }
  friend CRat operator*(CRat a, const CRat& b) { return a *= b; }
  friend CRat operator*(const Rat& a, CRat b) {
    b.re *= a;
    b.im *= a;
    return b;
  }
  friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

  CRat operator/(const Rat& q) const {
    if (q == 0) throw std::domain_error("CRat: division by zero");
    return {re / q, im / q};
  }
};

// Element of Q(i)[sqrt(D)]: a + b*sqrt(D) with complex-rational a, b.
// The PEPS block entries carry half-integer powers of the bond dimension;
// keeping the surd symbolic preserves exactness when D is not a perfect
// square. After a full grid contraction the surd component must cancel.
struct SqrtExt {
  CRat a;  // rational part
  CRat b;  // coefficient of sqrt(base)
  long base = 1;

  SqrtExt() = default;
  explicit SqrtExt(long base_) : base(base_) {}
  SqrtExt(CRat a_, CRat b_, long base_) : a(std::move(a_)), b(std::move(b_)), base(base_) {}

  static SqrtExt scalar(CRat v, long base_) { return {std::move(v), CRat{}, base_}; }
  // sqrt(base)^n as an exact monomial.
  static SqrtExt sqrt_pow(long base_, unsigned n) {
    Int p = ipow(Int(base_), n / 2);
    CRat v{Rat(p)};
    if (n % 2 == 0) return {v, CRat{}, base_};
    return {CRat{}, v, base_};
  }

  bool is_rational() const { return b.is_zero(); }

  SqrtExt& operator+=(const SqrtExt& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend SqrtExt operator+(SqrtExt x, const SqrtExt& y) { return x += y; }
  friend SqrtExt operator*(const SqrtExt& x, const SqrtExt& y) {
    CRat d{Rat(x.base)};
    return {x.a * y.a + d * (x.b * y.b), x.a * y.b + x.b * y.a, x.base};
  }
  SqrtExt& operator*=(const SqrtExt& o) { return *this = *this * o; }

  std::complex<double> to_complex() const {
    std::complex<double> s = b.to_complex() * std::sqrt(static_cast<double>(base));
    return a.to_complex() + s;
  }
};

}  // namespace haarcorr
