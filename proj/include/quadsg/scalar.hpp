#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace quadsg {

using Rational = mpq_class;

/// Raised when an input is degenerate for the requested operation
/// (zero polynomial where a nonzero one is needed, both gcd inputs zero, ...).
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a documented precondition of an operation does not hold.
class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a certificate fails its own re-verification. Never expected.
class SoundnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exact Gaussian rational re + im*i with re, im in Q.
///
/// Both parts are kept canonical (lowest terms, positive denominator), so
/// structural equality is field equality.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar imaginary_unit() { return Scalar(Rational(0), Rational(1)); }
  static Scalar fraction(long num, long den);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  /// re^2 + im^2.
  Rational norm() const { return re_ * re_ + im_ * im_; }
  Scalar inverse() const;

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Lexicographic on (re, im); used only for canonical ordering.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  /// Canonical text: "p/q", "p/q*i", "p/q+r/s*i". Integers print without "/1".
  std::string str() const;
  /// Inverse of str(); also accepts "i", "-i", "3i", "1/2-3/4i". Rejects
  /// decimal points and exponents.
  static Scalar parse(std::string_view text);

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Exact square root in Q(i), if one exists. Of the two roots, returns the
/// one with positive real part (or positive imaginary part when re = 0).
std::optional<Scalar> exact_sqrt(const Scalar& s);

/// Exact rational square root, if one exists.
std::optional<Rational> exact_sqrt(const Rational& q);

std::string rational_str(const Rational& q);
/// Parses "p" or "p/q" with optional sign; rejects anything else.
Rational parse_rational(std::string_view text);

}  // namespace quadsg
