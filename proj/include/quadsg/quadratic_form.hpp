#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadsg/matrix.hpp"
#include "quadsg/multipoly.hpp"
#include "quadsg/random.hpp"
#include "quadsg/scalar.hpp"

namespace quadsg {

struct LinearForm {
  std::vector<Scalar> coeffs;

  LinearForm() = default;
  explicit LinearForm(std::vector<Scalar> c) : coeffs(std::move(c)) {}
  static LinearForm zero(std::size_t n) { return LinearForm(std::vector<Scalar>(n)); }
  static LinearForm unit(std::size_t n, std::size_t i);

  std::size_t nvars() const { return coeffs.size(); }
  bool is_zero() const;
  Scalar operator()(std::span<const Scalar> x) const;
  MultiPoly to_poly() const { return MultiPoly::linear(coeffs); }
  /// Scaled so the first nonzero coefficient is 1 (zero form unchanged).
  LinearForm normalized() const;
  std::string str(const std::vector<std::string>& names = {}) const { return to_poly().str(names); }

  friend LinearForm operator+(const LinearForm& a, const LinearForm& b);
  friend LinearForm operator-(const LinearForm& a, const LinearForm& b);
  friend LinearForm operator*(const Scalar& s, const LinearForm& l);
  friend bool operator==(const LinearForm& a, const LinearForm& b) = default;
};

/// Homogeneous quadratic form x^T G x with G symmetric; G(i,j) for i != j is
/// half the coefficient of x_i x_j.
class QuadraticForm {
 public:
  QuadraticForm() = default;
  explicit QuadraticForm(std::size_t nvars) : gram_(nvars, nvars) {}
  explicit QuadraticForm(Matrix gram);

  /// Rejects anything that is not homogeneous of degree 2 (zero is allowed).
  static QuadraticForm from_poly(const MultiPoly& p);
  static QuadraticForm product(const LinearForm& a, const LinearForm& b);
  static QuadraticForm square(const LinearForm& l) { return product(l, l); }

  std::size_t nvars() const { return gram_.rows(); }
  const Matrix& gram() const { return gram_; }
  bool is_zero() const { return gram_.is_zero(); }

  MultiPoly to_poly() const;
  /// Monomial coefficients in the order of monomials_of_degree(n, 2).
  std::vector<Scalar> coeff_vector() const;
  Scalar evaluate(std::span<const Scalar> x) const;
  /// B(x, y) = x^T G y, so evaluate(x) = B(x, x).
  Scalar bilinear(std::span<const Scalar> x, std::span<const Scalar> y) const;
  /// The linear form y -> B(x, y).
  LinearForm polar(std::span<const Scalar> x) const;

  /// q(A x) for an n x m matrix A: result lives in m variables.
  QuadraticForm compose(const Matrix& a) const;

  friend QuadraticForm operator+(const QuadraticForm& a, const QuadraticForm& b);
  friend QuadraticForm operator-(const QuadraticForm& a, const QuadraticForm& b);
  friend QuadraticForm operator*(const Scalar& s, const QuadraticForm& q);
  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) = default;

  std::string str(const std::vector<std::string>& names = {}) const { return to_poly().str(names); }

 private:
  Matrix gram_;
};

std::size_t gram_rank(const QuadraticForm& q);
/// ceil(gram rank / 2).
std::size_t rank_s(const QuadraticForm& q);

/// Basis of the row space of gram (RREF rows). Throws DegenerateInput on q = 0.
std::vector<LinearForm> gradient_span(const QuadraticForm& q);

struct SquareData {
  Scalar c;
  LinearForm l;  // first nonzero coefficient 1
  bool zero = false;
};
/// q = c * l^2 when gram rank <= 1.
std::optional<SquareData> is_square(const QuadraticForm& q);

/// gram rank >= 3. Throws DegenerateInput on q = 0.
bool is_irreducible(const QuadraticForm& q);

/// Formal 4x4 Sylvester determinant of two polynomials of degree <= 2 in
/// `var`, each padded to degree 2. For q1 = x^2 + Q1', q2 = x b2 - A this is
/// A^2 + b2^2 Q1'.
MultiPoly quad_resultant(const MultiPoly& q1, const MultiPoly& q2, std::size_t var);
MultiPoly quad_resultant(const QuadraticForm& q1, const QuadraticForm& q2, std::size_t var);

/// g on the hyperplane a = 0: the first variable with a nonzero coefficient
/// in a is eliminated. Zero iff a divides g.
QuadraticForm restrict_mod_linear(const QuadraticForm& g, const LinearForm& a);

/// Solves l1 = l2 = 0 for the two RREF pivot variables and substitutes.
MultiPoly restrict_mod_pair(const MultiPoly& q, const LinearForm& l1, const LinearForm& l2);

struct ProjectionMap {
  std::size_t nvars = 0;  // source ring; the target has nvars + 1, z last
  std::vector<LinearForm> basis;
  std::vector<Rational> multipliers;  // basis[j] -> multipliers[j] * z
  std::uint64_t seed = 0;
  std::vector<AffineImage> images;  // x_i -> linear form in nvars + 1 variables

  std::size_t z() const { return nvars; }
  MultiPoly apply(const MultiPoly& p) const { return substitute(p, images, nvars + 1); }
  LinearForm apply(const LinearForm& l) const;
};

/// f after projection is z * rho for f in the ideal of the V basis; returns
/// rho (a linear form in nvars + 1 variables) when f is a quadratic form and
/// the division is exact.
std::optional<LinearForm> projection_residue(const QuadraticForm& f, const ProjectionMap& pm);

/// Extends V_basis by unit vectors to a basis y = M x, sends the V coordinates
/// to c_j z and the completion coordinates to the matching x variables.
ProjectionMap random_projection(const std::vector<LinearForm>& v_basis, std::uint64_t seed);

/// q = a * b over Q(i), if such a factorisation exists (gram rank <= 2 and,
/// for rank 2, a square discriminant).
std::optional<std::pair<LinearForm, LinearForm>> factor_quadratic(const QuadraticForm& q);

/// Diagonal entries d and matrix S (columns = new basis) with S^T G S = diag(d).
struct Diagonalization {
  std::vector<Scalar> d;
  Matrix s;
};
Diagonalization diagonalize(const QuadraticForm& q);

/// A vector y with q(y) = 0 and G y != 0, found by pairing diagonal entries
/// whose ratio is a square, then by a bounded search over small Gaussian
/// integer coordinates.
std::optional<std::vector<Scalar>> find_isotropic(const QuadraticForm& q, long bound = 6);

struct Representation {
  bool complete = false;
  std::vector<std::pair<LinearForm, LinearForm>> terms;
  std::vector<LinearForm> span_certificate;  // gradient span when incomplete
};
/// Tries to write q as sum of rank_s(q) products over Q(i). Declines (complete
/// = false) when a needed isotropic vector is not found in Q(i).
Representation minimal_representation(const QuadraticForm& q);

QuadraticForm expand(const std::vector<std::pair<LinearForm, LinearForm>>& terms, std::size_t nvars);

/// Coefficient matrix (one row per form) of coeff_vector().
Matrix coefficient_matrix(const std::vector<QuadraticForm>& forms);

/// Random integer linear form with entries in [-bound, bound].
LinearForm random_linear(Rng& rng, std::size_t n, long bound = 5, bool gaussian = false);
QuadraticForm random_quadratic(Rng& rng, std::size_t n, long bound = 5, bool gaussian = false);
/// Random invertible integer matrix.
Matrix random_invertible(Rng& rng, std::size_t n, long bound = 3);

}  // namespace quadsg
