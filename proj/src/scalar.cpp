#include "quadsg/scalar.hpp"

#include <cctype>

namespace quadsg {

Scalar Scalar::fraction(long num, long den) {
  if (den == 0) throw DegenerateInput("Scalar::fraction: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DegenerateInput("Scalar::inverse: division by zero");
  if (is_real()) return Scalar(Rational(1) / re_);
  Rational n = norm();
  return Scalar(re_ / n, -im_ / n);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  if (sgn(o.im_) != 0) im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  if (sgn(o.im_) != 0) im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw DegenerateInput("Scalar: division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    if (sgn(im_) != 0) im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string Scalar::str() const {
  if (sgn(im_) == 0) return rational_str(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = rational_str(im_) + "i";
  }
  if (sgn(re_) == 0) return imag;
  if (imag[0] != '-') imag = "+" + imag;
  return rational_str(re_) + imag;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') pos = 1;
  bool seen_digit = false;
  bool seen_slash = false;
  bool digit_after_slash = false;
  for (std::size_t k = pos; k < s.size(); ++k) {
    char ch = s[k];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (ch == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
    } else {
      throw std::invalid_argument("inexact or malformed rational literal '" + s + "'");
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash)) {
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

Scalar Scalar::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw std::invalid_argument("empty scalar literal");
  if (s.back() != 'i') return Scalar(parse_rational(s));
  s.pop_back();
  // split "re(+|-)im" at the last sign that is not the leading one
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (split != std::string::npos && re_part.empty()) {
    throw std::invalid_argument("malformed scalar literal");
  }
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  if (im_part.back() == '*') im_part.pop_back();
  Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
  return Scalar(re, parse_rational(im_part));
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return Rational(0);
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return std::nullopt;
  }
  mpz_class n = sqrt(q.get_num());
  mpz_class d = sqrt(q.get_den());
  return Rational(n, d);
}

std::optional<Scalar> exact_sqrt(const Scalar& s) {
  if (s.is_zero()) return Scalar(0);
  if (s.is_real()) {
    if (sgn(s.re()) > 0) {
      auto r = exact_sqrt(s.re());
      if (!r) return std::nullopt;
      return Scalar(*r);
    }
    auto r = exact_sqrt(Rational(-s.re()));
    if (!r) return std::nullopt;
    return Scalar(Rational(0), *r);
  }
  // (x + iy)^2 = a + bi  =>  x^2 = (a + |s|)/2, y = b / (2x)
  auto modulus = exact_sqrt(s.norm());
  if (!modulus) return std::nullopt;
  Rational x2 = (s.re() + *modulus) / 2;
  auto x = exact_sqrt(x2);
  if (!x || sgn(*x) == 0) return std::nullopt;
  Rational y = s.im() / (2 * *x);
  return Scalar(*x, y);
}

}  // namespace quadsg
