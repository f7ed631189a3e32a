#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "quadsg/scalar.hpp"

namespace quadsg {

/// Dense row-major matrix over Q(i).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::span<const Scalar> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }
  std::vector<Scalar> row_vector(std::size_t i) const;
  void append_row(std::span<const Scalar> r);

  Matrix transpose() const;
  bool is_symmetric() const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& m);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> a_;
};

struct RankResult {
  std::size_t rank = 0;
  Matrix rref;
  std::vector<std::size_t> pivot_columns;
};

/// Rank and reduced row echelon form. Columns are scanned left to right and
/// the pivot is the first remaining row with a nonzero entry, so the result
/// is reproducible; the RREF itself is unique.
RankResult exact_rank(const Matrix& m);

inline std::size_t rank_of(const Matrix& m) { return exact_rank(m).rank; }

/// Rank of the matrix whose rows are the given vectors.
std::size_t rank_of_vectors(const std::vector<std::vector<Scalar>>& vectors);

/// Some solution x of A x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
std::optional<std::vector<Scalar>> solve(const Matrix& a, std::span<const Scalar> b);

/// Basis of {x : A x = 0}, returned as the rows of a matrix.
Matrix nullspace(const Matrix& a);

/// Rows of the RREF that are nonzero: a canonical basis of the row space.
Matrix row_space_basis(const Matrix& m);

Scalar determinant(Matrix m);

/// Inverse of a square nonsingular matrix; throws DegenerateInput otherwise.
Matrix inverse(const Matrix& m);

/// True when v lies in the row space of the matrix whose rows are `basis`.
bool in_span(const std::vector<std::vector<Scalar>>& basis, std::span<const Scalar> v);

}  // namespace quadsg
