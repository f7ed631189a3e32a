#include "quadsg/unipoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace quadsg {

DensePoly::DensePoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

void DensePoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

DensePoly DensePoly::constant(const Scalar& c) { return DensePoly(std::vector<Scalar>{c}); }

DensePoly DensePoly::monomial(const Scalar& c, std::size_t degree) {
  std::vector<Scalar> v(degree + 1);
  v[degree] = c;
  return DensePoly(std::move(v));
}

DensePoly DensePoly::linear_root(const Scalar& root) { return DensePoly({-root, Scalar(1)}); }

DensePoly DensePoly::from_multipoly(const MultiPoly& p, std::size_t var) {
  std::vector<Scalar> v(static_cast<std::size_t>(std::max(p.degree_in(var), 0)) + 1);
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() != m[var]) throw PreconditionViolation("DensePoly::from_multipoly: other variables present");
    v[m[var]] += c;
  }
  return DensePoly(std::move(v));
}

DensePoly DensePoly::monic() const {
  if (is_zero()) return *this;
  Scalar inv = leading().inverse();
  DensePoly r = *this;
  for (auto& x : r.c_) x *= inv;
  return r;
}

DensePoly DensePoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Scalar> v(c_.size() - 1);
  for (std::size_t d = 1; d < c_.size(); ++d) v[d - 1] = c_[d] * Scalar(static_cast<long>(d));
  return DensePoly(std::move(v));
}

Scalar DensePoly::evaluate(const Scalar& t) const {
  Scalar acc = 0;
  for (std::size_t d = c_.size(); d-- > 0;) {
    acc *= t;
    acc += c_[d];
  }
  return acc;
}

DensePoly& DensePoly::operator+=(const DensePoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t d = 0; d < o.c_.size(); ++d) c_[d] += o.c_[d];
  trim();
  return *this;
}

DensePoly& DensePoly::operator-=(const DensePoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t d = 0; d < o.c_.size(); ++d) c_[d] -= o.c_[d];
  trim();
  return *this;
}

DensePoly operator*(const DensePoly& a, const DensePoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return DensePoly(std::move(v));
}

DensePoly operator*(const Scalar& s, const DensePoly& p) {
  std::vector<Scalar> v = p.c_;
  for (auto& x : v) x *= s;
  return DensePoly(std::move(v));
}

std::string DensePoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  MultiPoly m(1);
  for (std::size_t d = 0; d < c_.size(); ++d) m.add_term(Monomial::unit(1, 0, static_cast<unsigned>(d)), c_[d]);
  return m.str({var});
}

std::pair<DensePoly, DensePoly> divmod(const DensePoly& a, const DensePoly& b) {
  if (b.is_zero()) throw DegenerateInput("divmod: division by the zero polynomial");
  std::vector<Scalar> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {DensePoly(), a};
  std::vector<Scalar> quo(static_cast<std::size_t>(a.degree() - db) + 1);
  Scalar inv = b.leading().inverse();
  for (int d = a.degree(); d >= db; --d) {
    const Scalar& top = rem[static_cast<std::size_t>(d)];
    if (top.is_zero()) continue;
    Scalar f = top * inv;
    quo[static_cast<std::size_t>(d - db)] = f;
    for (int k = 0; k <= db; ++k) rem[static_cast<std::size_t>(d - db + k)] -= f * b.coeffs()[static_cast<std::size_t>(k)];
  }
  return {DensePoly(std::move(quo)), DensePoly(std::move(rem))};
}

bool divides(const DensePoly& d, const DensePoly& p) {
  if (d.is_zero()) return p.is_zero();
  return divmod(p, d).second.is_zero();
}

DensePoly exact_quotient(const DensePoly& a, const DensePoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw SoundnessError("exact_quotient: nonzero remainder");
  return q;
}

DensePoly uni_gcd(const DensePoly& p, const DensePoly& q) {
  if (p.is_zero() && q.is_zero()) throw DegenerateInput("uni_gcd: both inputs are zero");
  DensePoly a = p.monic();
  DensePoly b = q.monic();
  while (!b.is_zero()) {
    DensePoly r = divmod(a, b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

DensePoly squarefree_part(const DensePoly& p) {
  if (p.is_zero()) throw DegenerateInput("squarefree_part: zero polynomial");
  if (p.degree() == 0) return DensePoly::constant(1);
  DensePoly g = uni_gcd(p, p.derivative());
  return exact_quotient(p, g).monic();
}

namespace {

struct GaussInt {
  mpz_class re;
  mpz_class im;

  mpz_class norm() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }
  GaussInt operator*(const GaussInt& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
};

// q = a / b if exact.
std::optional<GaussInt> exact_div(const GaussInt& a, const GaussInt& b) {
  mpz_class n = b.norm();
  mpz_class r = a.re * b.re + a.im * b.im;
  mpz_class i = a.im * b.re - a.re * b.im;
  if (!mpz_divisible_p(r.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(i.get_mpz_t(), n.get_mpz_t())) {
    return std::nullopt;
  }
  return GaussInt{r / n, i / n};
}

const mpz_class kNormCap("1000000000000");

// Prime factorisation of a positive integer by trial division; empty on cap.
std::optional<std::map<mpz_class, unsigned>> factor_integer(mpz_class n) {
  std::map<mpz_class, unsigned> f;
  if (n > kNormCap) return std::nullopt;
  for (mpz_class p = 2; p * p <= n; ++p) {
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      ++f[p];
      n /= p;
    }
  }
  if (n > 1) ++f[n];
  return f;
}

// Gaussian primes (up to units) dividing a, with multiplicity.
std::optional<std::vector<std::pair<GaussInt, unsigned>>> gaussian_factor(const GaussInt& a) {
  auto rational = factor_integer(a.norm());
  if (!rational) return std::nullopt;
  std::vector<GaussInt> candidates;
  for (const auto& [p, e] : *rational) {
    if (p == 2) {
      candidates.push_back({1, 1});
    } else if (mpz_class(p % 4) == 3) {
      candidates.push_back({p, 0});
    } else {
      mpz_class x = 1;
      while (true) {
        mpz_class rest = p - x * x;
        if (mpz_perfect_square_p(rest.get_mpz_t())) {
          mpz_class y = sqrt(rest);
          candidates.push_back({x, y});
          candidates.push_back({x, -y});
          break;
        }
        ++x;
      }
    }
  }
  std::vector<std::pair<GaussInt, unsigned>> out;
  GaussInt rest = a;
  for (const auto& pi : candidates) {
    unsigned e = 0;
    while (true) {
      auto q = exact_div(rest, pi);
      if (!q) break;
      rest = *q;
      ++e;
    }
    if (e > 0) out.emplace_back(pi, e);
  }
  return out;
}

std::vector<GaussInt> divisors_up_to_units(const std::vector<std::pair<GaussInt, unsigned>>& factors) {
  std::vector<GaussInt> divs{{1, 0}};
  for (const auto& [pi, e] : factors) {
    std::vector<GaussInt> next;
    for (const auto& d : divs) {
      GaussInt cur = d;
      for (unsigned k = 0; k <= e; ++k) {
        next.push_back(cur);
        cur = cur * pi;
      }
    }
    divs = std::move(next);
  }
  return divs;
}

// Scale p to Gaussian-integer coefficients.
std::vector<GaussInt> integer_coefficients(const DensePoly& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im().get_den_mpz_t());
  }
  std::vector<GaussInt> out;
  for (const auto& c : p.coeffs()) {
    Rational r = c.re() * l;
    Rational i = c.im() * l;
    out.push_back({r.get_num(), i.get_num()});
  }
  return out;
}

std::vector<Scalar> quadratic_roots(const DensePoly& p) {
  const Scalar& a = p.coeffs()[2];
  const Scalar& b = p.coeffs()[1];
  const Scalar& c = p.coeffs()[0];
  Scalar disc = b * b - Scalar(4) * a * c;
  auto s = exact_sqrt(disc);
  if (!s) return {};
  Scalar two_a = Scalar(2) * a;
  if (s->is_zero()) return {-b / two_a};
  return {(-b + *s) / two_a, (-b - *s) / two_a};
}

// One root of p in Q(i) via the Gaussian rational root test.
// Returns {found, root, complete}.
struct OneRoot {
  bool found = false;
  Scalar root;
  bool complete = true;
};

OneRoot find_one_root(const DensePoly& p) {
  auto ints = integer_coefficients(p);
  const GaussInt& a0 = ints.front();
  const GaussInt& an = ints.back();
  auto f0 = gaussian_factor(a0);
  auto fn = gaussian_factor(an);
  if (!f0 || !fn) return {false, Scalar(0), false};
  auto num = divisors_up_to_units(*f0);
  auto den = divisors_up_to_units(*fn);
  if (num.size() * den.size() > 200000) return {false, Scalar(0), false};
  const GaussInt units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& u : num)
    for (const auto& v : den)
      for (const auto& e : units) {
        GaussInt uu = u * e;
        Scalar cand = Scalar(Rational(uu.re), Rational(uu.im)) / Scalar(Rational(v.re), Rational(v.im));
        if (p.evaluate(cand).is_zero()) return {true, cand, true};
      }
  return {false, Scalar(0), true};
}

}  // namespace

RootSearch gaussian_rational_roots(const DensePoly& p_in) {
  RootSearch out;
  if (p_in.is_zero()) throw DegenerateInput("gaussian_rational_roots: zero polynomial");
  DensePoly p = squarefree_part(p_in);
  while (p.degree() >= 1) {
    if (p.degree() == 1) {
      out.roots.push_back(-p.coeffs()[0] / p.coeffs()[1]);
      break;
    }
    if (p.degree() == 2) {
      for (auto& r : quadratic_roots(p)) out.roots.push_back(r);
      break;
    }
    if (p.coeffs()[0].is_zero()) {
      out.roots.push_back(0);
      p = exact_quotient(p, DensePoly::monomial(1, 1));
      continue;
    }
    auto one = find_one_root(p);
    if (!one.complete) {
      out.complete = false;
      break;
    }
    if (!one.found) break;
    out.roots.push_back(one.root);
    p = exact_quotient(p, DensePoly::linear_root(one.root));
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
  return out;
}

UniPoly UniPoly::from_multipoly(const MultiPoly& p, std::size_t var) {
  UniPoly u;
  u.var = var;
  if (p.is_zero()) return u;
  u.coeffs = coefficients_in(p, var);
  return u;
}

MultiPoly UniPoly::to_multipoly() const {
  if (coeffs.empty()) return MultiPoly();
  const std::size_t n = coeffs.front().nvars();
  MultiPoly out(n);
  MultiPoly x = MultiPoly::variable(n, var);
  MultiPoly xp = MultiPoly::constant(n, 1);
  for (const auto& c : coeffs) {
    out += c * xp;
    xp = xp * x;
  }
  return out;
}

std::vector<std::vector<MultiPoly>> sylvester_matrix(const UniPoly& f, const UniPoly& g) {
  if (f.coeffs.empty() || g.coeffs.empty()) throw DegenerateInput("sylvester_matrix: zero polynomial");
  const std::size_t nv = f.coeffs.front().nvars();
  const std::size_t m = static_cast<std::size_t>(f.degree());
  const std::size_t n = static_cast<std::size_t>(g.degree());
  const std::size_t size = m + n;
  std::vector<std::vector<MultiPoly>> s(size, std::vector<MultiPoly>(size, MultiPoly(nv)));
  for (std::size_t col = 0; col < n; ++col)
    for (std::size_t d = 0; d <= m; ++d) s[col + d][col] = f.coeffs[d];
  for (std::size_t col = 0; col < m; ++col)
    for (std::size_t d = 0; d <= n; ++d) s[col + d][n + col] = g.coeffs[d];
  return s;
}

MultiPoly uni_resultant(const UniPoly& f, const UniPoly& g) {
  if (f.coeffs.empty() || g.coeffs.empty()) throw DegenerateInput("uni_resultant: zero polynomial");
  if (f.degree() < 1 || g.degree() < 1) {
    throw DegenerateInput("uni_resultant: both inputs need positive degree in the eliminated variable");
  }
  return poly_determinant(sylvester_matrix(f, g), f.coeffs.front().nvars());
}

MultiPoly uni_resultant(const MultiPoly& f, const MultiPoly& g, std::size_t var) {
  if (f.is_zero() || g.is_zero()) throw DegenerateInput("uni_resultant: zero polynomial");
  return uni_resultant(UniPoly::from_multipoly(f, var), UniPoly::from_multipoly(g, var));
}

}  // namespace quadsg
