#include "quadsg/multipoly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace quadsg {

Monomial::Monomial(std::vector<std::uint16_t> exps) : e_(std::move(exps)) {
  degree_ = std::accumulate(e_.begin(), e_.end(), 0u);
}

Monomial Monomial::unit(std::size_t nvars, std::size_t var, unsigned power) {
  Monomial m(nvars);
  m.set(var, static_cast<std::uint16_t>(power));
  return m;
}

void Monomial::set(std::size_t i, std::uint16_t v) {
  degree_ = degree_ - e_[i] + v;
  e_[i] = v;
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (o.e_.size() != e_.size()) throw PreconditionViolation("Monomial: nvars mismatch");
  Monomial r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = static_cast<std::uint16_t>(r.e_[i] + o.e_[i]);
  r.degree_ = degree_ + o.degree_;
  return r;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return a.exponents() > b.exponents();
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  std::vector<std::uint16_t> e(nvars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == nvars) {
      e[i] = static_cast<std::uint16_t>(left);
      out.emplace_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[i] = static_cast<std::uint16_t>(k);
      rec(i + 1, left - k);
    }
  };
  rec(0, d);
  return out;
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Scalar& c) {
  MultiPoly p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t var) {
  MultiPoly p(nvars);
  p.add_term(Monomial::unit(nvars, var), 1);
  return p;
}

MultiPoly MultiPoly::term(const Monomial& m, const Scalar& c) {
  MultiPoly p(m.nvars());
  p.add_term(m, c);
  return p;
}

MultiPoly MultiPoly::linear(std::span<const Scalar> coeffs) {
  MultiPoly p(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term(Monomial::unit(coeffs.size(), i), coeffs[i]);
  return p;
}

int MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.degree());
}

int MultiPoly::degree_in(std::size_t var) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  unsigned d = terms_.begin()->first.degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
}

Scalar MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void MultiPoly::add_term(const Monomial& m, const Scalar& c) {
  if (m.nvars() != nvars_) throw PreconditionViolation("MultiPoly: monomial has wrong nvars");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.nvars_ != nvars_) throw PreconditionViolation("MultiPoly: nvars mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.nvars_ != nvars_) throw PreconditionViolation("MultiPoly: nvars mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) throw PreconditionViolation("MultiPoly: nvars mismatch");
  MultiPoly r(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(nvars_, 1);
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Scalar MultiPoly::evaluate(std::span<const Scalar> point) const {
  if (point.size() != nvars_) throw PreconditionViolation("MultiPoly::evaluate: point has wrong length");
  Scalar sum = 0;
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned e = 0; e < m[i]; ++e) t *= point[i];
    sum += t;
  }
  return sum;
}

std::vector<std::string> default_names(std::size_t nvars) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

std::string MultiPoly::str(const std::vector<std::string>& names_in) const {
  if (terms_.empty()) return "0";
  auto names = names_in.empty() ? default_names(nvars_) : names_in;
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string coef = c.str();
    bool compound = !c.is_real() && sgn(c.re()) != 0;
    if (compound) coef = "(" + coef + ")";
    bool negative = !compound && coef[0] == '-';
    if (!first) os << (negative ? " - " : " + ");
    else if (negative) os << "-";
    if (negative) coef.erase(0, 1);
    bool unit = coef == "1";
    if (m.degree() == 0 || !unit) {
      os << coef;
      if (m.degree() > 0) os << "*";
    }
    bool first_var = true;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (!first_var) os << "*";
      os << names[i];
      if (m[i] > 1) os << "^" << m[i];
      first_var = false;
    }
    first = false;
  }
  return os.str();
}

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op, unsigned k) {
  switch (op) {
    case PolyOp::Add:
      return a + b;
    case PolyOp::Mul:
      return a * b;
    case PolyOp::Power:
      return a.pow(k);
  }
  return a;
}

std::vector<AffineImage> identity_images(std::size_t nvars) {
  std::vector<AffineImage> images(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    images[i].coeffs.assign(nvars, Scalar(0));
    images[i].coeffs[i] = 1;
  }
  return images;
}

MultiPoly substitute(const MultiPoly& p, const std::vector<AffineImage>& images, std::size_t target_nvars) {
  if (images.size() != p.nvars()) throw PreconditionViolation("substitute: one image per variable required");
  std::vector<MultiPoly> img;
  img.reserve(images.size());
  for (const auto& a : images) {
    if (a.coeffs.size() != target_nvars) throw PreconditionViolation("substitute: image has wrong length");
    MultiPoly q = MultiPoly::linear(a.coeffs);
    q.add_term(Monomial(target_nvars), a.constant);
    img.push_back(std::move(q));
  }
  // cache powers of each image
  std::vector<std::vector<MultiPoly>> powers(img.size());
  auto power_of = [&](std::size_t var, unsigned e) -> const MultiPoly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(MultiPoly::constant(target_nvars, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * img[var]);
    return cache[e];
  };
  MultiPoly out(target_nvars);
  for (const auto& [m, c] : p.terms()) {
    MultiPoly t = MultiPoly::constant(target_nvars, c);
    for (std::size_t i = 0; i < p.nvars(); ++i)
      if (m[i] > 0) t = t * power_of(i, m[i]);
    out += t;
  }
  return out;
}

std::vector<MultiPoly> coefficients_in(const MultiPoly& p, std::size_t var) {
  int d = p.degree_in(var);
  std::vector<MultiPoly> out(static_cast<std::size_t>(std::max(d, 0)) + 1, MultiPoly(p.nvars()));
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    unsigned e = m[var];
    rest.set(var, 0);
    out[e].add_term(rest, c);
  }
  return out;
}

MultiPoly poly_determinant(const std::vector<std::vector<MultiPoly>>& m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly::constant(nvars, 1);
  for (const auto& row : m)
    if (row.size() != n) throw PreconditionViolation("poly_determinant: matrix not square");
  if (n > 20) throw PreconditionViolation("poly_determinant: matrix too large");
  // memo[mask] = determinant of the minor using the last popcount(mask) rows
  // and the columns in mask.
  std::unordered_map<std::uint32_t, MultiPoly> memo;
  std::function<MultiPoly(std::uint32_t, std::size_t)> minor = [&](std::uint32_t mask, std::size_t row) -> MultiPoly {
    if (row == n) return MultiPoly::constant(nvars, 1);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    MultiPoly acc(nvars);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      if (!m[row][c].is_zero()) {
        MultiPoly sub = minor(mask & ~(1u << c), row + 1);
        if (!sub.is_zero()) {
          MultiPoly t = m[row][c] * sub;
          if (sign > 0) acc += t;
          else acc -= t;
        }
      }
      sign = -sign;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return minor((n == 32 ? 0xffffffffu : ((1u << n) - 1u)), 0);
}

}  // namespace quadsg
