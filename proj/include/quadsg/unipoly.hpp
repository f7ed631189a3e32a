#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "quadsg/multipoly.hpp"
#include "quadsg/scalar.hpp"

namespace quadsg {

/// Dense univariate polynomial over Q(i); coeffs[d] multiplies t^d.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class DensePoly {
 public:
  DensePoly() = default;
  explicit DensePoly(std::vector<Scalar> coeffs);

  static DensePoly constant(const Scalar& c);
  static DensePoly monomial(const Scalar& c, std::size_t degree);
  /// t - root
  static DensePoly linear_root(const Scalar& root);
  /// Converts a MultiPoly in which only `var` occurs.
  static DensePoly from_multipoly(const MultiPoly& p, std::size_t var);

  const std::vector<Scalar>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for zero.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Scalar& leading() const { return c_.back(); }
  Scalar coeff(std::size_t d) const { return d < c_.size() ? c_[d] : Scalar(0); }

  DensePoly monic() const;
  DensePoly derivative() const;
  Scalar evaluate(const Scalar& t) const;

  DensePoly& operator+=(const DensePoly& o);
  DensePoly& operator-=(const DensePoly& o);
  friend DensePoly operator+(DensePoly a, const DensePoly& b) { return a += b; }
  friend DensePoly operator-(DensePoly a, const DensePoly& b) { return a -= b; }
  friend DensePoly operator*(const DensePoly& a, const DensePoly& b);
  friend DensePoly operator*(const Scalar& s, const DensePoly& p);
  friend bool operator==(const DensePoly& a, const DensePoly& b) = default;

  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Scalar> c_;
};

/// Quotient and remainder of a by nonzero b.
std::pair<DensePoly, DensePoly> divmod(const DensePoly& a, const DensePoly& b);
bool divides(const DensePoly& d, const DensePoly& p);
/// Exact quotient; throws SoundnessError if the division leaves a remainder.
DensePoly exact_quotient(const DensePoly& a, const DensePoly& b);

/// Monic gcd. If exactly one input is zero, the monic other one is returned.
/// Both zero signals DegenerateInput.
DensePoly uni_gcd(const DensePoly& p, const DensePoly& q);

/// Product of the distinct monic irreducible factors of p (p nonzero).
DensePoly squarefree_part(const DensePoly& p);

struct RootSearch {
  std::vector<Scalar> roots;  // distinct roots in Q(i), sorted
  bool complete = true;       // false if the search had to give up early
};

/// Distinct roots of p lying in Q(i). Degrees 1 and 2 are solved exactly;
/// higher degrees use the rational root test over the Gaussian integers,
/// which stops (complete = false) once the coefficient norms exceed ~1e12.
RootSearch gaussian_rational_roots(const DensePoly& p);

/// Polynomial in one distinguished variable with MultiPoly coefficients
/// (coefficients live in the same ring and do not involve `var`).
struct UniPoly {
  std::size_t var = 0;
  std::vector<MultiPoly> coeffs;  // coeffs[d] multiplies var^d; leading nonzero

  static UniPoly from_multipoly(const MultiPoly& p, std::size_t var);
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  MultiPoly to_multipoly() const;
};

/// Sylvester matrix of f (degree m) and g (degree n) in `var`, laid out with
/// rows indexed by ascending powers and columns ordered F-block (n shifted
/// copies of f) then G-block (m shifted copies of g).
std::vector<std::vector<MultiPoly>> sylvester_matrix(const UniPoly& f, const UniPoly& g);

/// Determinant of sylvester_matrix(f, g). With this layout the value equals
/// (-1)^{N(N-1)/2} times the textbook resultant, N = m + n; e.g.
/// Res(t - a, t - b) = b - a, and the 4x4 quadratic case agrees exactly.
MultiPoly uni_resultant(const UniPoly& f, const UniPoly& g);

/// Convenience: resultant of two MultiPolys with respect to `var`.
MultiPoly uni_resultant(const MultiPoly& f, const MultiPoly& g, std::size_t var);

}  // namespace quadsg
