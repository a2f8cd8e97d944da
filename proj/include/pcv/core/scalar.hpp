#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace pcv {

// Exact rational scalar used by the zero-tolerance identity suites.
using Rat = boost::multiprecision::cpp_rational;

// Gaussian rational: exact complex arithmetic for gamma-matrix identities.
struct CRat {
  Rat re{0}, im{0};

  CRat() = default;
  CRat(int v) : re(v) {}
  CRat(long v) : re(v) {}
  CRat(Rat r) : re(std::move(r)) {}
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static CRat i() { return CRat(Rat(0), Rat(1)); }

  friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
  friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CRat operator/(const CRat& a, const CRat& b) {
    Rat n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  CRat& operator+=(const CRat& b) { *this = *this + b; return *this; }
  CRat& operator-=(const CRat& b) { *this = *this - b; return *this; }
  CRat& operator*=(const CRat& b) { *this = *this * b; return *this; }
  friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
};

using Cplx = std::complex<double>;

// Uniform scalar interface over double, Cplx, Rat, CRat.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double x) { return x == 0.0; }
  static double conj(double x) { return x; }
  static double mag(double x) { return std::abs(x); }
  static constexpr bool exact = false;
};

template <>
struct ScalarOps<Cplx> {
  static Cplx zero() { return {0.0, 0.0}; }
  static Cplx one() { return {1.0, 0.0}; }
  static bool is_zero(const Cplx& x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static Cplx conj(const Cplx& x) { return std::conj(x); }
  static double mag(const Cplx& x) { return std::abs(x); }
  static constexpr bool exact = false;
};

template <>
struct ScalarOps<Rat> {
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static bool is_zero(const Rat& x) { return x.is_zero(); }
  static Rat conj(const Rat& x) { return x; }
  static double mag(const Rat& x) { return std::abs(x.convert_to<double>()); }
  static constexpr bool exact = true;
};

template <>
struct ScalarOps<CRat> {
  static CRat zero() { return CRat(); }
  static CRat one() { return CRat(1); }
  static bool is_zero(const CRat& x) { return x.re.is_zero() && x.im.is_zero(); }
  static CRat conj(const CRat& x) { return {x.re, -x.im}; }
  static double mag(const CRat& x) {
    double r = x.re.convert_to<double>(), i = x.im.convert_to<double>();
    return std::hypot(r, i);
  }
  static constexpr bool exact = true;
};

}  // namespace pcv
