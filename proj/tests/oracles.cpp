#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

namespace {

struct GaussInt {
  mpz_class re, im;
  bool zero() const { return re == 0 && im == 0; }
};

GaussInt mul(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
GaussInt sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
GaussInt exact_div(const GaussInt& a, const GaussInt& b) {
  mpz_class n = b.re * b.re + b.im * b.im;
  GaussInt num = mul(a, GaussInt{b.re, -b.im});
  if (num.re % n != 0 || num.im % n != 0) throw std::logic_error("oracle: inexact Bareiss division");
  return {num.re / n, num.im / n};
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

std::size_t bareiss_rank(const std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  const std::size_t c = rows[0].size();
  std::vector<std::vector<GaussInt>> m;
  for (const auto& r : rows) {
    mpz_class d = 1;
    for (const auto& s : r) d = lcm(lcm(d, s.re().get_den()), s.im().get_den());
    std::vector<GaussInt> row;
    for (const auto& s : r) {
      Rational re = s.re() * d, im = s.im() * d;
      row.push_back({re.get_num(), im.get_num()});
    }
    m.push_back(std::move(row));
  }
  GaussInt prev{1, 0};
  std::size_t rank = 0;
  for (std::size_t col = 0; col < c && rank < m.size(); ++col) {
    // last nonzero row as pivot (deliberately unlike the library)
    std::size_t p = m.size();
    for (std::size_t i = m.size(); i-- > rank;)
      if (!m[i][col].zero()) {
        p = i;
        break;
      }
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      for (std::size_t j = col + 1; j < c; ++j)
        m[i][j] = exact_div(sub(mul(m[rank][col], m[i][j]), mul(m[i][col], m[rank][j])), prev);
      m[i][col] = {0, 0};
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

Scalar leibniz_det(const std::vector<Vec>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Scalar total = 0;
  do {
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
    Scalar term = inv % 2 ? Scalar(-1) : Scalar(1);
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Scalar eval(const MultiPoly& p, const Vec& x) {
  Scalar total = 0;
  for (const auto& [mono, c] : p.terms()) {
    Scalar t = c;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (unsigned e = 0; e < mono[i]; ++e) t *= x[i];
    total += t;
  }
  return total;
}

Scalar eval_quadratic(const QuadraticForm& q, const Vec& x) {
  Scalar total = 0;
  const auto& g = q.gram();
  for (std::size_t i = 0; i < x.size(); ++i) {
    total += g(i, i) * x[i] * x[i];
    for (std::size_t j = i + 1; j < x.size(); ++j) total += Scalar(2) * g(i, j) * x[i] * x[j];
  }
  return total;
}

Vec random_point(Rng& rng, std::size_t n, long bound, bool gaussian) {
  Vec v(n);
  for (auto& s : v) s = rng.small(bound, gaussian);
  return v;
}

bool agree_at_random_points(const MultiPoly& a, const MultiPoly& b, Rng& rng, int trials) {
  for (int t = 0; t < trials; ++t) {
    Vec x = random_point(rng, std::max(a.nvars(), b.nvars()), 1000);
    if (!(eval(a, x) == eval(b, x))) return false;
  }
  return true;
}

bool in_span_of_pair(const Vec& a, const Vec& b, const Vec& c) {
  if (a.size() == 3) return leibniz_det({a, b, c}).is_zero();
  return bareiss_rank({a, b, c}) == 2;
}

Rational sg_delta(const std::vector<Vec>& pts) {
  const std::size_t m = pts.size();
  if (m == 0) return 0;
  std::size_t best = m;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < m; ++k)
        if (k != i && k != j && in_span_of_pair(pts[i], pts[j], pts[k])) {
          ++count;
          break;
        }
    }
    best = std::min(best, count);
  }
  Rational r(static_cast<unsigned long>(best), static_cast<unsigned long>(m));
  r.canonicalize();
  return r;
}

namespace {
bool spans_third(const Vec& p, const Vec& q, const std::vector<Vec>& third) {
  return std::any_of(third.begin(), third.end(), [&](const Vec& r) { return in_span_of_pair(p, q, r); });
}
}  // namespace

bool ek_holds(const std::vector<Vec>& t1, const std::vector<Vec>& t2, const std::vector<Vec>& t3) {
  const std::vector<Vec>* s[3] = {&t1, &t2, &t3};
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (const auto& p : *s[a])
        for (const auto& q : *s[b])
          if (!spans_third(p, q, *s[3 - a - b])) return false;
  return true;
}

Rational ek_delta(const std::vector<Vec>& t1, const std::vector<Vec>& t2, const std::vector<Vec>& t3) {
  const std::vector<Vec>* s[3] = {&t1, &t2, &t3};
  std::optional<Rational> best;
  for (int i = 0; i < 3; ++i)
    for (const auto& p : *s[i])
      for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        const int k = 3 - i - j;
        std::size_t c = 0;
        for (const auto& q : *s[j]) c += spans_third(p, q, *s[k]);
        Rational f(static_cast<unsigned long>(c), static_cast<unsigned long>(s[j]->size()));
        f.canonicalize();
        if (!best || f < *best) best = f;
      }
  return best.value_or(Rational(0));
}

std::size_t rank_s_lower_bound(const QuadraticForm& q) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < q.nvars(); ++i) rows.push_back(q.gram().row_vector(i));
  return (bareiss_rank(rows) + 1) / 2;
}

}  // namespace oracle
