#include "quadsg/matrix.hpp"

#include <utility>

namespace quadsg {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows * cols) throw PreconditionViolation("Matrix: entry count mismatch");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols) {
  Matrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

std::vector<Scalar> Matrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return {r.begin(), r.end()};
}

void Matrix::append_row(std::span<const Scalar> r) {
  if (r.size() != cols_) throw PreconditionViolation("Matrix::append_row: width mismatch");
  a_.insert(a_.end(), r.begin(), r.end());
  ++rows_;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (!((*this)(i, j) == (*this)(j, i))) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionViolation("Matrix product: shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b(k, j).is_zero()) continue;
        c(i, j) += aik * b(k, j);
      }
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw PreconditionViolation("Matrix sum: shape mismatch");
  Matrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] += b.a_[k];
  return c;
}

Matrix operator*(const Scalar& s, const Matrix& m) {
  Matrix c = m;
  for (auto& x : c.a_) x *= s;
  return c;
}

namespace {

// In-place Gauss-Jordan on the first `ncols` columns of a row-major buffer of
// width `width`. Returns pivot columns.
std::vector<std::size_t> gauss_jordan(std::vector<std::vector<Scalar>>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    auto& prow = rows[r];
    if (!prow[c].is_one()) {
      Scalar inv = prow[c].inverse();
      for (std::size_t j = c; j < prow.size(); ++j)
        if (!prow[j].is_zero()) prow[j] *= inv;
    }
    std::vector<std::size_t> nz;
    for (std::size_t j = c + 1; j < prow.size(); ++j)
      if (!prow[j].is_zero()) nz.push_back(j);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Scalar f = rows[i][c];
      rows[i][c] = 0;
      for (std::size_t j : nz) rows[i][j] -= f * prow[j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Scalar>> to_rows(const Matrix& m) {
  std::vector<std::vector<Scalar>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = m.row_vector(i);
  return rows;
}

}  // namespace

RankResult exact_rank(const Matrix& m) {
  auto rows = to_rows(m);
  auto pivots = gauss_jordan(rows, m.cols());
  Matrix rref(m.rows(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rref(i, j) = rows[i][j];
  return {pivots.size(), std::move(rref), std::move(pivots)};
}

std::size_t rank_of_vectors(const std::vector<std::vector<Scalar>>& vectors) {
  if (vectors.empty()) return 0;
  auto rows = vectors;
  return gauss_jordan(rows, rows.front().size()).size();
}

std::optional<std::vector<Scalar>> solve(const Matrix& a, std::span<const Scalar> b) {
  if (b.size() != a.rows()) throw PreconditionViolation("solve: rhs length mismatch");
  std::vector<std::vector<Scalar>> rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    rows[i] = a.row_vector(i);
    rows[i].push_back(b[i]);
  }
  auto pivots = gauss_jordan(rows, a.cols() + 1);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<Scalar> x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rows[r][a.cols()];
  return x;
}

Matrix nullspace(const Matrix& a) {
  auto rows = to_rows(a);
  auto pivots = gauss_jordan(rows, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis(0, a.cols());
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(a.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][f];
    basis.append_row(v);
  }
  return basis;
}

Matrix row_space_basis(const Matrix& m) {
  auto res = exact_rank(m);
  Matrix basis(0, m.cols());
  for (std::size_t i = 0; i < res.rank; ++i) basis.append_row(res.rref.row(i));
  return basis;
}

Scalar determinant(Matrix m) {
  if (m.rows() != m.cols()) throw PreconditionViolation("determinant: matrix not square");
  const std::size_t n = m.rows();
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    Scalar inv = m(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Scalar f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw PreconditionViolation("inverse: matrix not square");
  const std::size_t n = m.rows();
  std::vector<std::vector<Scalar>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i] = m.row_vector(i);
    rows[i].resize(2 * n);
    rows[i][n + i] = 1;
  }
  auto pivots = gauss_jordan(rows, n);
  if (pivots.size() != n) throw DegenerateInput("inverse: matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = rows[i][n + j];
  return inv;
}

bool in_span(const std::vector<std::vector<Scalar>>& basis, std::span<const Scalar> v) {
  auto rows = basis;
  std::size_t r0 = basis.empty() ? 0 : rank_of_vectors(basis);
  rows.emplace_back(v.begin(), v.end());
  return rank_of_vectors(rows) == r0;
}

}  // namespace quadsg
