#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nashx {

/// Gaussian rational re + im*i with exact arbitrary-precision components.
struct Scalar {
  mpq_class re;
  mpq_class im;

  Scalar() : re(0), im(0) {}
  Scalar(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class r) : re(std::move(r)), im(0) {}
  Scalar(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  static Scalar imaginary_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_one() const { return re == 1 && im == 0; }
  bool is_real() const { return im == 0; }

  Scalar operator-() const { return Scalar(-re, -im); }

  Scalar operator+(const Scalar& o) const { return Scalar(re + o.re, im + o.im); }
  Scalar operator-(const Scalar& o) const { return Scalar(re - o.re, im - o.im); }
  Scalar operator*(const Scalar& o) const {
    return Scalar(re * o.re - im * o.im, re * o.im + im * o.re);
  }

  Scalar conj() const { return Scalar(re, -im); }

  /// |z|^2 as an exact rational.
  mpq_class norm() const { return re * re + im * im; }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("Scalar: division by zero");
    mpq_class n = norm();
    return Scalar(re / n, -im / n);
  }

  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

  Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
  Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

  bool operator==(const Scalar& o) const { return re == o.re && im == o.im; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  std::string str() const;
};

std::string rational_str(const mpq_class& q);

}  // namespace nashx
