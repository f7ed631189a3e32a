#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "quadsg/scalar.hpp"

namespace quadsg {

/// Exponent vector of a monomial. Total degree is cached.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint16_t> exps);

  static Monomial unit(std::size_t nvars, std::size_t var, unsigned power = 1);

  std::size_t nvars() const { return e_.size(); }
  unsigned degree() const { return degree_; }
  std::uint16_t operator[](std::size_t i) const { return e_[i]; }
  const std::vector<std::uint16_t>& exponents() const { return e_; }
  void set(std::size_t i, std::uint16_t v);

  Monomial operator*(const Monomial& o) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }

 private:
  std::vector<std::uint16_t> e_;
  unsigned degree_ = 0;
};

/// Graded-lexicographic order, largest first: higher total degree first,
/// ties broken lexicographically with x1 > x2 > ... .
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All monomials of total degree `d` in `nvars` variables, in GrlexGreater order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d);

/// Sparse multivariate polynomial over Q(i). No zero coefficient is ever stored.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Scalar, GrlexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Scalar& c);
  static MultiPoly variable(std::size_t nvars, std::size_t var);
  static MultiPoly term(const Monomial& m, const Scalar& c);
  /// Homogeneous linear form sum_i coeffs[i] * x_i.
  static MultiPoly linear(std::span<const Scalar> coeffs);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;
  bool is_homogeneous() const;
  bool is_constant() const { return degree() <= 0; }

  Scalar coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Scalar& c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Scalar& s);
  MultiPoly operator-() const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const Scalar& s, MultiPoly p) { return p *= s; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned k) const;
  Scalar evaluate(std::span<const Scalar> point) const;

  /// Human-readable form using `names` (defaults to x1..xn).
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  std::size_t nvars_ = 0;
  TermMap terms_;
};

enum class PolyOp { Add, Mul, Power };

/// add / mul of a and b, or a^k for Power (b ignored).
MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op, unsigned k = 0);

/// Image of one variable under an affine substitution.
struct AffineImage {
  std::vector<Scalar> coeffs;  // length = target nvars
  Scalar constant;
};

/// Composes p with x_i -> images[i]. Result lives in `target_nvars` variables.
MultiPoly substitute(const MultiPoly& p, const std::vector<AffineImage>& images, std::size_t target_nvars);

/// Identity image list for `nvars` variables, to be edited by callers.
std::vector<AffineImage> identity_images(std::size_t nvars);

/// Coefficients of p viewed as a polynomial in `var`: result[d] is the
/// coefficient of var^d (a polynomial in the same ring not involving var).
std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t var);

/// Determinant of a square matrix of polynomials (cofactor expansion with
/// memoisation over column subsets; sizes up to ~16).
MultiPoly poly_determinant(const std::vector<std::vector<MultiPoly>>& m, std::size_t nvars);

/// Default variable names x1..xn.
std::vector<std::string> default_names(std::size_t nvars);

}  // namespace quadsg
