#include "quadsg/quadratic_form.hpp"

#include <cmath>
#include <algorithm>
#include <functional>

#include "quadsg/unipoly.hpp"

namespace quadsg {

LinearForm LinearForm::unit(std::size_t n, std::size_t i) {
  LinearForm l = zero(n);
  l.coeffs[i] = 1;
  return l;
}

bool LinearForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Scalar& c) { return c.is_zero(); });
}

Scalar LinearForm::operator()(std::span<const Scalar> x) const {
  if (x.size() != coeffs.size()) throw PreconditionViolation("LinearForm: point has wrong length");
  Scalar s = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) s += coeffs[i] * x[i];
  return s;
}

LinearForm LinearForm::normalized() const {
  for (const auto& c : coeffs)
    if (!c.is_zero()) return c.inverse() * *this;
  return *this;
}

LinearForm operator+(const LinearForm& a, const LinearForm& b) {
  if (a.nvars() != b.nvars()) throw PreconditionViolation("LinearForm: nvars mismatch");
  LinearForm r = a;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  return r;
}

LinearForm operator-(const LinearForm& a, const LinearForm& b) { return a + Scalar(-1) * b; }

LinearForm operator*(const Scalar& s, const LinearForm& l) {
  LinearForm r = l;
  for (auto& c : r.coeffs) c *= s;
  return r;
}

QuadraticForm::QuadraticForm(Matrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_symmetric()) throw PreconditionViolation("QuadraticForm: gram matrix must be symmetric");
}

QuadraticForm QuadraticForm::from_poly(const MultiPoly& p) {
  QuadraticForm q(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() != 2) throw PreconditionViolation("QuadraticForm: polynomial is not a homogeneous quadratic");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < p.nvars(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) idx.push_back(i);
    if (idx[0] == idx[1]) {
      q.gram_(idx[0], idx[0]) = c;
    } else {
      Scalar half = c / Scalar(2);
      q.gram_(idx[0], idx[1]) = half;
      q.gram_(idx[1], idx[0]) = half;
    }
  }
  return q;
}

QuadraticForm QuadraticForm::product(const LinearForm& a, const LinearForm& b) {
  if (a.nvars() != b.nvars()) throw PreconditionViolation("QuadraticForm::product: nvars mismatch");
  const std::size_t n = a.nvars();
  Matrix g(n, n);
  Scalar half = Scalar::fraction(1, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = half * (a.coeffs[i] * b.coeffs[j] + a.coeffs[j] * b.coeffs[i]);
  return QuadraticForm(std::move(g));
}

MultiPoly QuadraticForm::to_poly() const {
  const std::size_t n = nvars();
  MultiPoly p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.add_term(Monomial::unit(n, i, 2), gram_(i, i));
    for (std::size_t j = i + 1; j < n; ++j) {
      Monomial m(n);
      m.set(i, 1);
      m.set(j, 1);
      p.add_term(m, Scalar(2) * gram_(i, j));
    }
  }
  return p;
}

std::vector<Scalar> QuadraticForm::coeff_vector() const {
  std::vector<Scalar> v;
  for (const auto& m : monomials_of_degree(nvars(), 2)) {
    std::size_t i = 0;
    while (m[i] == 0) ++i;
    if (m[i] == 2) {
      v.push_back(gram_(i, i));
    } else {
      std::size_t j = i + 1;
      while (m[j] == 0) ++j;
      v.push_back(Scalar(2) * gram_(i, j));
    }
  }
  return v;
}

Scalar QuadraticForm::bilinear(std::span<const Scalar> x, std::span<const Scalar> y) const {
  if (x.size() != nvars() || y.size() != nvars()) throw PreconditionViolation("QuadraticForm: point has wrong length");
  Scalar s = 0;
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < nvars(); ++j)
      if (!y[j].is_zero() && !gram_(i, j).is_zero()) s += x[i] * gram_(i, j) * y[j];
  }
  return s;
}

Scalar QuadraticForm::evaluate(std::span<const Scalar> x) const { return bilinear(x, x); }

LinearForm QuadraticForm::polar(std::span<const Scalar> x) const {
  LinearForm l = LinearForm::zero(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < nvars(); ++j) l.coeffs[j] += x[i] * gram_(i, j);
  }
  return l;
}

QuadraticForm QuadraticForm::compose(const Matrix& a) const {
  if (a.rows() != nvars()) throw PreconditionViolation("QuadraticForm::compose: shape mismatch");
  return QuadraticForm(a.transpose() * gram_ * a);
}

QuadraticForm operator+(const QuadraticForm& a, const QuadraticForm& b) { return QuadraticForm(a.gram_ + b.gram_); }
QuadraticForm operator-(const QuadraticForm& a, const QuadraticForm& b) {
  return QuadraticForm(a.gram_ + Scalar(-1) * b.gram_);
}
QuadraticForm operator*(const Scalar& s, const QuadraticForm& q) { return QuadraticForm(s * q.gram_); }

std::size_t gram_rank(const QuadraticForm& q) { return rank_of(q.gram()); }

std::size_t rank_s(const QuadraticForm& q) { return (gram_rank(q) + 1) / 2; }

std::vector<LinearForm> gradient_span(const QuadraticForm& q) {
  if (q.is_zero()) throw DegenerateInput("gradient_span: zero form");
  Matrix b = row_space_basis(q.gram());
  std::vector<LinearForm> out;
  for (std::size_t i = 0; i < b.rows(); ++i) out.emplace_back(b.row_vector(i));
  return out;
}

std::optional<SquareData> is_square(const QuadraticForm& q) {
  if (q.is_zero()) return SquareData{Scalar(0), LinearForm::zero(q.nvars()), true};
  auto rr = exact_rank(q.gram());
  if (rr.rank > 1) return std::nullopt;
  LinearForm l(rr.rref.row_vector(0));  // pivot entry is 1
  std::size_t p = rr.pivot_columns[0];
  SquareData s{q.gram()(p, p), l, false};
  if (!(s.c * QuadraticForm::square(l) == q)) throw SoundnessError("is_square: reconstruction mismatch");
  return s;
}

bool is_irreducible(const QuadraticForm& q) {
  if (q.is_zero()) throw DegenerateInput("is_irreducible: zero form");
  return gram_rank(q) >= 3;
}

MultiPoly quad_resultant(const MultiPoly& q1, const MultiPoly& q2, std::size_t var) {
  if (q1.nvars() != q2.nvars()) throw PreconditionViolation("quad_resultant: nvars mismatch");
  if (q1.degree() > 2 || q2.degree() > 2) throw PreconditionViolation("quad_resultant: degree exceeds 2");
  if (q1.degree_in(var) <= 0 && q2.degree_in(var) <= 0) {
    throw DegenerateInput("quad_resultant: neither input involves the eliminated variable");
  }
  auto padded = [&](const MultiPoly& p) {
    UniPoly u;
    u.var = var;
    u.coeffs = p.is_zero() ? std::vector<MultiPoly>{} : coefficients_in(p, var);
    u.coeffs.resize(3, MultiPoly(p.nvars()));
    return u;
  };
  return poly_determinant(sylvester_matrix(padded(q1), padded(q2)), q1.nvars());
}

MultiPoly quad_resultant(const QuadraticForm& q1, const QuadraticForm& q2, std::size_t var) {
  return quad_resultant(q1.to_poly(), q2.to_poly(), var);
}

MultiPoly restrict_mod_pair(const MultiPoly& q, const LinearForm& l1, const LinearForm& l2) {
  const std::size_t n = l1.nvars();
  if (l2.nvars() != n || q.nvars() != n) throw PreconditionViolation("restrict_mod_pair: nvars mismatch");
  Matrix m = Matrix::from_rows({l1.coeffs, l2.coeffs}, n);
  auto rr = exact_rank(m);
  if (rr.rank != 2) throw PreconditionViolation("restrict_mod_pair: linear forms are dependent");
  auto images = identity_images(n);
  for (std::size_t k = 0; k < 2; ++k) {
    std::size_t p = rr.pivot_columns[k];
    std::vector<Scalar> img(n);
    for (std::size_t j = 0; j < n; ++j)
      if (j != rr.pivot_columns[0] && j != rr.pivot_columns[1]) img[j] = -rr.rref(k, j);
    images[p].coeffs = std::move(img);
  }
  return substitute(q, images, n);
}

QuadraticForm restrict_mod_linear(const QuadraticForm& g, const LinearForm& a_in) {
  if (a_in.is_zero()) throw PreconditionViolation("restrict_mod_linear: zero linear form");
  LinearForm a = a_in.normalized();
  const std::size_t n = a.nvars();
  std::size_t p = 0;
  while (a.coeffs[p].is_zero()) ++p;
  Matrix m = Matrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) m(p, j) = j == p ? Scalar(0) : -a.coeffs[j];
  return g.compose(m);
}

std::optional<LinearForm> projection_residue(const QuadraticForm& f, const ProjectionMap& pm) {
  MultiPoly img = pm.apply(f.to_poly());
  const std::size_t z = pm.z();
  LinearForm rho = LinearForm::zero(pm.nvars + 1);
  for (const auto& [m, c] : img.terms()) {
    if (m[z] == 0) return std::nullopt;
    Monomial rest = m;
    rest.set(z, static_cast<std::uint16_t>(m[z] - 1));
    std::size_t v = 0;
    while (v < rest.nvars() && rest[v] == 0) ++v;
    rho.coeffs[v] += c;
  }
  return rho;
}

LinearForm ProjectionMap::apply(const LinearForm& l) const {
  LinearForm out = LinearForm::zero(nvars + 1);
  for (std::size_t i = 0; i < nvars; ++i) {
    if (l.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j <= nvars; ++j) out.coeffs[j] += l.coeffs[i] * images[i].coeffs[j];
  }
  return out;
}

ProjectionMap random_projection(const std::vector<LinearForm>& v_basis, std::uint64_t seed) {
  if (v_basis.empty()) throw PreconditionViolation("random_projection: empty basis");
  const std::size_t n = v_basis.front().nvars();
  std::vector<std::vector<Scalar>> rows;
  for (const auto& l : v_basis) rows.push_back(l.coeffs);
  Matrix v = Matrix::from_rows(rows, n);
  auto rr = exact_rank(v);
  if (rr.rank != v_basis.size()) throw PreconditionViolation("random_projection: basis is dependent");

  ProjectionMap pm;
  pm.nvars = n;
  pm.basis = v_basis;
  pm.seed = seed;
  Rng rng(seed);
  for (std::size_t j = 0; j < v_basis.size(); ++j) pm.multipliers.push_back(rng.multiplier());

  Matrix full = v;
  std::vector<std::size_t> completion;
  std::vector<bool> pivot(n, false);
  for (auto p : rr.pivot_columns) pivot[p] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (!pivot[i]) {
      full.append_row(LinearForm::unit(n, i).coeffs);
      completion.push_back(i);
    }
  Matrix inv = inverse(full);
  // image of y_j in the target ring
  std::vector<std::vector<Scalar>> yimg(n, std::vector<Scalar>(n + 1));
  for (std::size_t j = 0; j < v_basis.size(); ++j) yimg[j][n] = pm.multipliers[j];
  for (std::size_t k = 0; k < completion.size(); ++k) yimg[v_basis.size() + k][completion[k]] = 1;
  pm.images.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    pm.images[i].coeffs.assign(n + 1, Scalar(0));
    for (std::size_t j = 0; j < n; ++j) {
      if (inv(i, j).is_zero()) continue;
      for (std::size_t t = 0; t <= n; ++t)
        if (!yimg[j][t].is_zero()) pm.images[i].coeffs[t] += inv(i, j) * yimg[j][t];
    }
  }
  return pm;
}

std::optional<std::pair<LinearForm, LinearForm>> factor_quadratic(const QuadraticForm& q) {
  const std::size_t n = q.nvars();
  if (q.is_zero()) return std::make_pair(LinearForm::zero(n), LinearForm::zero(n));
  auto rr = exact_rank(q.gram());
  if (rr.rank > 2) return std::nullopt;
  std::optional<std::pair<LinearForm, LinearForm>> out;
  if (rr.rank == 1) {
    auto sq = is_square(q);
    out = std::make_pair(sq->c * sq->l, sq->l);
  } else {
    LinearForm u(rr.rref.row_vector(0));
    LinearForm v(rr.rref.row_vector(1));
    std::size_t p1 = rr.pivot_columns[0];
    std::size_t p2 = rr.pivot_columns[1];
    const Scalar& h11 = q.gram()(p1, p1);
    const Scalar& h12 = q.gram()(p1, p2);
    const Scalar& h22 = q.gram()(p2, p2);
    if (h11.is_zero()) {
      out = std::make_pair(v, Scalar(2) * h12 * u + h22 * v);
    } else {
      auto s = exact_sqrt(h12 * h12 - h11 * h22);
      if (!s) return std::nullopt;
      Scalar t1 = (-h12 + *s) / h11;
      Scalar t2 = (-h12 - *s) / h11;
      out = std::make_pair(h11 * (u - t1 * v), u - t2 * v);
    }
  }
  if (!(QuadraticForm::product(out->first, out->second) == q)) throw SoundnessError("factor_quadratic: mismatch");
  return out;
}

Diagonalization diagonalize(const QuadraticForm& q) {
  const std::size_t n = q.nvars();
  Matrix a = q.gram();
  Matrix s = Matrix::identity(n);
  std::vector<Scalar> d(n);
  auto swap_basis = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t t = 0; t < n; ++t) std::swap(a(i, t), a(j, t));
    for (std::size_t t = 0; t < n; ++t) std::swap(a(t, i), a(t, j));
    for (std::size_t t = 0; t < n; ++t) std::swap(s(t, i), s(t, j));
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n && piv == n; ++i)
      if (!a(i, i).is_zero()) piv = i;
    if (piv == n) {
      // no diagonal entry: e_i <- e_i + e_j for some off-diagonal a(i, j) != 0
      for (std::size_t i = k; i < n && piv == n; ++i)
        for (std::size_t j = i + 1; j < n && piv == n; ++j)
          if (!a(i, j).is_zero()) {
            for (std::size_t t = 0; t < n; ++t) a(i, t) += a(j, t);
            for (std::size_t t = 0; t < n; ++t) a(t, i) += a(t, j);
            for (std::size_t t = 0; t < n; ++t) s(t, i) += s(t, j);
            piv = i;
          }
      if (piv == n) break;
    }
    swap_basis(k, piv);
    d[k] = a(k, k);
    Scalar inv = d[k].inverse();
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j).is_zero()) continue;
      Scalar f = a(k, j) * inv;
      for (std::size_t t = 0; t < n; ++t) a(t, j) -= f * a(t, k);
      for (std::size_t t = 0; t < n; ++t) a(j, t) -= f * a(k, t);
      for (std::size_t t = 0; t < n; ++t) s(t, j) -= f * s(t, k);
    }
  }
  return {std::move(d), std::move(s)};
}

namespace {

std::vector<Scalar> column(const Matrix& m, std::size_t j) {
  std::vector<Scalar> c(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, j);
  return c;
}

std::vector<Scalar> combine(const Matrix& s, const std::vector<std::size_t>& cols, const std::vector<Scalar>& w) {
  std::vector<Scalar> y(s.rows());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (w[k].is_zero()) continue;
    auto c = column(s, cols[k]);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += w[k] * c[i];
  }
  return y;
}

}  // namespace

std::optional<std::vector<Scalar>> find_isotropic(const QuadraticForm& q, long bound) {
  auto dg = diagonalize(q);
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < dg.d.size(); ++i)
    if (!dg.d[i].is_zero()) nz.push_back(i);
  if (nz.size() < 2) return std::nullopt;
  for (std::size_t a = 0; a < nz.size(); ++a)
    for (std::size_t b = a + 1; b < nz.size(); ++b) {
      auto s = exact_sqrt(-dg.d[nz[b]] / dg.d[nz[a]]);
      if (s) return combine(dg.s, {nz[a], nz[b]}, {*s, Scalar(1)});
    }
  // small integer vectors in the original coordinates, last coordinate
  // from the quadratic q(u + t e_last) = 0
  const std::size_t n = q.nvars();
  {
    std::vector<Scalar> e(n);
    for (std::size_t j = 0; j < n; ++j) {
      e.assign(n, Scalar(0));
      e[j] = 1;
      if (q.evaluate(e).is_zero()) return e;
    }
    // widest gaussian box that keeps the sweep under ~1e5 cells
    long r = 2;
    while (r < 8 && std::pow(double((2 * r + 3) * (2 * r + 3)), double(n - 1)) <= 1e5) ++r;
    std::vector<Scalar> vals;
    for (long re = -r; re <= r; ++re)
      for (long im = -r; im <= r; ++im) vals.emplace_back(Rational(re), Rational(im));
    double cells = std::pow(double(vals.size()), double(n - 1));
    if (n >= 2 && cells <= 1e5) {
      std::vector<std::size_t> u(n - 1, 0);
      while (true) {
        std::vector<Scalar> v(n);
        bool any = false;
        for (std::size_t k = 0; k + 1 < n; ++k) {
          v[k] = vals[u[k]];
          any = any || !v[k].is_zero();
        }
        if (any) {
          Scalar c = q.evaluate(v);
          v[n - 1] = 1;
          Scalar f1 = q.evaluate(v);
          v[n - 1] = -1;
          Scalar fm = q.evaluate(v);
          Scalar a = (f1 + fm) / Scalar(2) - c;
          Scalar b = (f1 - fm) / Scalar(2);
          std::optional<Scalar> t;
          if (a.is_zero()) {
            if (!b.is_zero()) t = -c / b;
            else if (c.is_zero()) t = Scalar(0);
          } else if (auto s = exact_sqrt(b * b - Scalar(4) * a * c)) {
            t = (-b + *s) / (Scalar(2) * a);
          }
          if (t) {
            v[n - 1] = *t;
            return v;
          }
        }
        std::size_t k = 0;
        while (k < u.size() && u[k] + 1 == vals.size()) u[k++] = 0;
        if (k == u.size()) break;
        ++u[k];
      }
    }
  }
  // bounded search: projective coordinates on all but the last nonzero
  // direction, first nonzero coordinate 1, last one solved by a square root
  std::vector<Scalar> values;
  for (long v = -bound; v <= bound; ++v)
    if (v != 0) values.emplace_back(v);
  for (long re = -2; re <= 2; ++re)
    for (long im = 1; im <= 2; ++im) {
      values.emplace_back(Rational(re), Rational(im));
      values.emplace_back(Rational(re), Rational(-im));
    }
  const std::size_t free = nz.size() - 1;
  const Scalar& dlast = dg.d[nz.back()];
  std::vector<Scalar> u(free);
  std::optional<std::vector<Scalar>> found;
  std::function<void(std::size_t, bool)> rec = [&](std::size_t i, bool started) {
    if (found) return;
    if (i == free) {
      if (!started) return;
      Scalar acc = 0;
      for (std::size_t k = 0; k < free; ++k) acc += dg.d[nz[k]] * u[k] * u[k];
      auto w = exact_sqrt(-acc / dlast);
      if (!w) return;
      std::vector<Scalar> coords = u;
      coords.push_back(*w);
      found = combine(dg.s, nz, coords);
      return;
    }
    u[i] = 0;
    rec(i + 1, started);
    if (!started) {
      u[i] = 1;
      rec(i + 1, true);
    } else {
      for (const auto& v : values) {
        u[i] = v;
        rec(i + 1, true);
        if (found) return;
      }
    }
  };
  rec(0, false);
  return found;
}

QuadraticForm expand(const std::vector<std::pair<LinearForm, LinearForm>>& terms, std::size_t nvars) {
  QuadraticForm q(nvars);
  for (const auto& [a, b] : terms) q = q + QuadraticForm::product(a, b);
  return q;
}

Representation minimal_representation(const QuadraticForm& q) {
  const std::size_t n = q.nvars();
  Representation rep;
  QuadraticForm cur = q;
  while (!cur.is_zero()) {
    if (gram_rank(cur) <= 2) {
      auto f = factor_quadratic(cur);
      if (!f) break;
      rep.terms.push_back(*f);
      cur = QuadraticForm(n);
      break;
    }
    auto y = find_isotropic(cur);
    if (!y) break;
    // split off the hyperbolic plane spanned by y and z with B(y, z) = 1
    LinearForm a = cur.polar(*y);
    std::size_t i = 0;
    while (a.coeffs[i].is_zero()) ++i;
    std::vector<Scalar> z(n);
    z[i] = a.coeffs[i].inverse();
    Scalar qz = cur.evaluate(z);
    LinearForm bz = cur.polar(z);
    LinearForm alpha = bz - qz * a;
    rep.terms.emplace_back(a, Scalar(2) * bz - qz * a);
    Matrix w = Matrix::identity(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) w(r, c) -= (*y)[r] * alpha.coeffs[c] + z[r] * a.coeffs[c];
    cur = cur.compose(w);
  }
  if (cur.is_zero()) {
    rep.complete = true;
    if (!(expand(rep.terms, n) == q)) throw SoundnessError("minimal_representation: re-expansion mismatch");
    if (rep.terms.size() != rank_s(q)) throw SoundnessError("minimal_representation: term count differs from rank_s");
  } else {
    rep.terms.clear();
    if (!q.is_zero()) rep.span_certificate = gradient_span(q);
  }
  return rep;
}

Matrix coefficient_matrix(const std::vector<QuadraticForm>& forms) {
  if (forms.empty()) return Matrix();
  std::size_t width = forms.front().coeff_vector().size();
  Matrix m(0, width);
  for (const auto& f : forms) m.append_row(f.coeff_vector());
  return m;
}

LinearForm random_linear(Rng& rng, std::size_t n, long bound, bool gaussian) {
  LinearForm l = LinearForm::zero(n);
  do
    for (auto& c : l.coeffs) c = rng.small(bound, gaussian);
  while (l.is_zero());
  return l;
}

QuadraticForm random_quadratic(Rng& rng, std::size_t n, long bound, bool gaussian) {
  MultiPoly p(n);
  for (const auto& m : monomials_of_degree(n, 2)) p.add_term(m, rng.small(bound, gaussian));
  return QuadraticForm::from_poly(p);
}

Matrix random_invertible(Rng& rng, std::size_t n, long bound) {
  while (true) {
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.small(bound);
    if (!determinant(a).is_zero()) return a;
  }
}

}  // namespace quadsg
