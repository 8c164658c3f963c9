#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace locext {

/// Exact complex scalar re + im*i with arbitrary-precision rational parts.
///
/// GMP keeps every mpq_class in canonical form (coprime, positive
/// denominator) after arithmetic; the string constructor canonicalizes
/// explicitly.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT: implicit by design of the field
  GaussianRational(mpq_class re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(mpq_class re, mpq_class im)
      : re_(std::move(re)), im_(std::move(im)) {}

  /// Accepts "p", "p/q", "p/q+r/si", "p/q-r/s i", "r/si".
  static GaussianRational parse(std::string_view text);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2 as a nonnegative rational.
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  /// "p/q" for real values, "p/q+r/si" otherwise.
  std::string str() const;

  double real_double() const { return re_.get_d(); }
  double imag_double() const { return im_.get_d(); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

/// Nearest rational with denominator bounded by max_den (continued fractions).
mpq_class rationalize(double value, long max_den);

}  // namespace locext
