#include "quadsg/structure.hpp"

#include <algorithm>

namespace quadsg {

const char* case_name(const CaseWitness& w) {
  switch (w.index()) {
    case 0:
      return "Span";
    case 1:
      return "PencilSquare";
    default:
      return "Codim2";
  }
}

const char* search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found:
      return "Found";
    case SearchStatus::None:
      return "None";
    case SearchStatus::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

namespace {

void require_independent(const QuadraticForm& q1, const QuadraticForm& q2, const char* who) {
  if (q1.nvars() != q2.nvars()) throw PreconditionViolation(std::string(who) + ": nvars mismatch");
  if (rank_of(coefficient_matrix({q1, q2})) != 2) {
    throw PreconditionViolation(std::string(who) + ": Q1 and Q2 are linearly dependent");
  }
}

bool proportional(const QuadraticForm& a, const QuadraticForm& b) {
  return rank_of(coefficient_matrix({a, b})) <= 1;
}

}  // namespace

std::optional<SpanWitness> span_case(const QuadraticForm& q, const QuadraticForm& q1, const QuadraticForm& q2) {
  require_independent(q1, q2, "span_case");
  if (q.nvars() != q1.nvars()) throw PreconditionViolation("span_case: nvars mismatch");
  Matrix a = coefficient_matrix({q1, q2}).transpose();
  auto x = solve(a, q.coeff_vector());
  if (!x) return std::nullopt;
  return SpanWitness{(*x)[0], (*x)[1]};
}

std::optional<PencilWitness> pencil_square(const QuadraticForm& q1, const QuadraticForm& q2) {
  require_independent(q1, q2, "pencil_square");
  const std::size_t n = q1.nvars();
  auto explicit_witness = [&](const Scalar& alpha, const Scalar& beta) {
    auto sq = is_square(alpha * q1 + beta * q2);
    PencilWitness w;
    w.alpha = alpha;
    w.beta = beta;
    w.c = sq->c;
    w.l = sq->l;
    return w;
  };
  if (gram_rank(q1) <= 1) return explicit_witness(1, 0);
  const Matrix& m1 = q1.gram();
  const Matrix& m2 = q2.gram();
  auto entry = [&](std::size_t i, std::size_t j) { return DensePoly({m2(i, j), m1(i, j)}); };
  DensePoly g;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = j + 1; l < n; ++l) {
          DensePoly minor = entry(i, j) * entry(k, l) - entry(i, l) * entry(k, j);
          if (minor.is_zero()) continue;
          g = g.is_zero() ? minor.monic() : uni_gcd(g, minor);
        }
  if (g.is_zero()) return explicit_witness(0, 1);
  if (g.degree() < 1) return std::nullopt;
  auto roots = gaussian_rational_roots(g);
  if (!roots.roots.empty()) return explicit_witness(roots.roots.front(), 1);
  PencilWitness w;
  w.explicit_root = false;
  w.beta = 1;
  w.defining = g;
  return w;
}

bool verify_case3(const QuadraticForm& q, const QuadraticForm& q1, const QuadraticForm& q2, const LinearForm& l1,
                  const LinearForm& l2) {
  for (const auto* f : {&q, &q1, &q2})
    if (!restrict_mod_pair(f->to_poly(), l1, l2).is_zero()) return false;
  return true;
}

namespace {

using PolyVec = std::vector<DensePoly>;

PolyVec constant_vec(const std::vector<Scalar>& v) {
  PolyVec out;
  for (const auto& x : v) out.push_back(DensePoly::constant(x));
  return out;
}

PolyVec axpy(const DensePoly& s, const PolyVec& x, PolyVec y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
  return y;
}

DensePoly bilinear(const Matrix& g, const PolyVec& u, const PolyVec& v) {
  DensePoly acc;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!g(i, j).is_zero() && !v[j].is_zero()) acc += g(i, j) * (u[i] * v[j]);
  }
  return acc;
}

std::vector<Scalar> eval(const PolyVec& v, const Scalar& t) {
  std::vector<Scalar> out;
  for (const auto& p : v) out.push_back(p.evaluate(t));
  return out;
}

std::vector<Scalar> axpy(const Scalar& s, const std::vector<Scalar>& x, std::vector<Scalar> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
  return y;
}

enum class FactorKind { Zero, Rational, Irrational, NoFactor };

struct FactorInfo {
  FactorKind kind;
  std::vector<LinearForm> factors;  // normalized, distinct
};

FactorInfo factor_info(const QuadraticForm& g) {
  if (g.is_zero()) return {FactorKind::Zero, {}};
  if (gram_rank(g) >= 3) return {FactorKind::NoFactor, {}};
  auto f = factor_quadratic(g);
  if (!f) return {FactorKind::Irrational, {}};
  FactorInfo info{FactorKind::Rational, {f->first.normalized()}};
  LinearForm second = f->second.normalized();
  if (!(second == info.factors.front())) info.factors.push_back(second);
  return info;
}

struct Search {
  const QuadraticForm& q;
  const QuadraticForm& q1;
  const QuadraticForm& q2;
  std::optional<Codim2Witness> found;
  bool unknown = false;

  bool accept(const LinearForm& l1, const LinearForm& l2) {
    if (rank_of_vectors({l1.coeffs, l2.coeffs}) != 2) return false;
    if (!verify_case3(q, q1, q2, l1, l2)) return false;
    found = Codim2Witness{l1, l2};
    return true;
  }

  // L = span{a, l} with l a common linear factor of the other forms mod a.
  void factor_branch(const LinearForm& a, const std::vector<const QuadraticForm*>& others) {
    const std::size_t n = a.nvars();
    std::vector<FactorInfo> infos;
    std::vector<QuadraticForm> restricted;
    for (const auto* g : others) {
      restricted.push_back(restrict_mod_linear(*g, a));
      FactorInfo fi = factor_info(restricted.back());
      if (fi.kind == FactorKind::Zero) {
        restricted.pop_back();
        continue;
      }
      if (fi.kind == FactorKind::NoFactor) return;
      infos.push_back(std::move(fi));
    }
    if (infos.empty()) {
      for (std::size_t i = 0; i < n; ++i)
        if (accept(a, LinearForm::unit(n, i))) return;
      return;
    }
    bool any_irrational = std::any_of(infos.begin(), infos.end(),
                                      [](const FactorInfo& f) { return f.kind == FactorKind::Irrational; });
    if (any_irrational) {
      // a shared factor is then irrational, possible only when the
      // restricted forms are proportional
      if (infos.size() == 1 || (infos[0].kind == infos[1].kind && proportional(restricted[0], restricted[1]))) {
        unknown = true;
      }
      return;
    }
    for (const auto& l : infos[0].factors) {
      bool common = infos.size() == 1 ||
                    std::any_of(infos[1].factors.begin(), infos[1].factors.end(),
                                [&](const LinearForm& m) { return m == l; });
      if (common && accept(a, l)) return;
    }
  }

  void quadric_branch(const QuadraticForm& f, const std::vector<const QuadraticForm*>& others);
};

Matrix sub_gram(const Matrix& g, const std::vector<std::size_t>& piv) {
  Matrix h(piv.size(), piv.size());
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < piv.size(); ++j) h(i, j) = g(piv[i], piv[j]);
  return h;
}

DensePoly det3(const std::vector<std::vector<DensePoly>>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Points of the conic fq = 0 on the line {l = 0} in projective r-space.
std::vector<std::vector<Scalar>> conic_line_points(const QuadraticForm& fq, const LinearForm& l) {
  Matrix ns = nullspace(Matrix::from_rows({l.coeffs}, l.nvars()));
  std::vector<std::vector<Scalar>> pts;
  if (ns.rows() != 2) return pts;
  auto e = ns.row_vector(0);
  auto e2 = ns.row_vector(1);
  Scalar fe = fq.evaluate(e), b = fq.bilinear(e, e2), fe2 = fq.evaluate(e2);
  if (fe.is_zero()) {
    pts.push_back(e);
    if (!b.is_zero()) pts.push_back(axpy(-fe2 / (Scalar(2) * b), e, e2));
    else if (fe2.is_zero()) pts.push_back(e2);
    return pts;
  }
  auto s = exact_sqrt(b * b - fe * fe2);
  if (!s) return pts;
  pts.push_back(axpy((-b + *s) / fe, e, e2));
  pts.push_back(axpy((-b - *s) / fe, e, e2));
  return pts;
}

void Search::quadric_branch(const QuadraticForm& f, const std::vector<const QuadraticForm*>& others) {
  const std::size_t n = f.nvars();
  auto rr = exact_rank(f.gram());
  const std::size_t r = rr.rank;
  const auto& piv = rr.pivot_columns;
  QuadraticForm fq(sub_gram(f.gram(), piv));
  Matrix kernel = nullspace(Matrix::from_rows([&] {
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t i = 0; i < r; ++i) rows.push_back(rr.rref.row_vector(i));
    return rows;
  }(), n));
  auto lift = [&](const PolyVec& m) {
    PolyVec out(n);
    for (std::size_t k = 0; k < r; ++k) out[piv[k]] = m[k];
    return out;
  };

  // kernel directions must already be isotropic for every other form
  std::vector<PolyVec> kbasis;
  for (std::size_t i = 0; i < kernel.rows(); ++i) kbasis.push_back(constant_vec(kernel.row_vector(i)));
  for (const auto* g : others)
    for (std::size_t a = 0; a < kbasis.size(); ++a)
      for (std::size_t b = a; b < kbasis.size(); ++b)
        if (!bilinear(g->gram(), kbasis[a], kbasis[b]).is_zero()) return;

  auto try_m = [&](const std::vector<std::vector<Scalar>>& mrows) {
    Matrix lam = nullspace(Matrix::from_rows(mrows, r));
    if (lam.rows() != 2) return false;
    std::vector<LinearForm> ls;
    for (std::size_t k = 0; k < 2; ++k) {
      LinearForm l = LinearForm::zero(n);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) l.coeffs[j] += lam(k, i) * rr.rref(i, j);
      ls.push_back(l);
    }
    return accept(ls[0], ls[1]);
  };

  // conditions on a family M(tau); returns true when a member is accepted
  auto solve_family = [&](const std::vector<PolyVec>& mbasis) {
    std::vector<PolyVec> basis = kbasis;
    for (const auto& m : mbasis) basis.push_back(lift(m));
    DensePoly g;
    for (const auto* form : others)
      for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = std::max(a, kbasis.size()); b < basis.size(); ++b) {
          DensePoly c = bilinear(form->gram(), basis[a], basis[b]);
          if (c.is_zero()) continue;
          g = g.is_zero() ? c.monic() : uni_gcd(g, c);
        }
    auto member = [&](const Scalar& t) {
      std::vector<std::vector<Scalar>> rows;
      for (const auto& m : mbasis) rows.push_back(eval(m, t));
      return try_m(rows);
    };
    if (g.is_zero()) return member(0);
    if (g.degree() < 1) return false;
    auto roots = gaussian_rational_roots(g);
    for (const auto& t : roots.roots)
      if (member(t)) return true;
    if (!roots.complete || static_cast<std::size_t>(squarefree_part(g).degree()) > roots.roots.size()) unknown = true;
    return false;
  };

  // rational points of fq = 0
  std::vector<std::vector<Scalar>> y0s;
  if (auto y = find_isotropic(fq)) y0s.push_back(*y);
  if (r == 3) {
    for (const auto* g : others) {
      Matrix h2 = sub_gram(g->gram(), piv);
      std::vector<std::vector<DensePoly>> m(3, std::vector<DensePoly>(3));
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m[i][j] = DensePoly({h2(i, j), fq.gram()(i, j)});
      DensePoly d = det3(m);
      if (d.degree() < 1) continue;
      for (const auto& lam : gaussian_rational_roots(d).roots) {
        QuadraticForm c = lam * fq + QuadraticForm(h2);
        auto fac = factor_quadratic(c);
        if (!fac || c.is_zero()) continue;
        for (const auto* l : {&fac->first, &fac->second})
          for (auto& p : conic_line_points(fq, *l)) y0s.push_back(std::move(p));
      }
    }
    for (const auto& y : y0s)
      if (try_m({y})) return;
  }
  if (y0s.empty()) {
    unknown = true;
    return;
  }
  const auto& y0 = y0s.front();

  if (r == 3) {
    std::size_t p = 0;
    while (y0[p].is_zero()) ++p;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 3; ++i)
      if (i != p) idx.push_back(i);
    std::vector<Scalar> ea(3), eb(3);
    ea[idx[0]] = 1;
    eb[idx[1]] = 1;
    // y(tau) = -f(v) y0 + 2 B(y0, v) v with v = ea + tau eb
    DensePoly fv({fq.evaluate(ea), Scalar(2) * fq.bilinear(ea, eb), fq.evaluate(eb)});
    DensePoly bv({fq.bilinear(y0, ea), fq.bilinear(y0, eb)});
    PolyVec v = axpy(DensePoly::monomial(1, 1), constant_vec(eb), constant_vec(ea));
    PolyVec y = axpy(Scalar(2) * bv, v, axpy(Scalar(-1) * fv, constant_vec(y0), PolyVec(3)));
    if (solve_family({y})) return;
    auto inf = axpy(Scalar(2) * fq.bilinear(y0, eb), eb, axpy(-fq.evaluate(eb), y0, std::vector<Scalar>(3)));
    try_m({inf});
    return;
  }

  // r == 4: the two lines through y0 lie in the tangent plane
  Matrix tangent = nullspace(Matrix::from_rows({fq.polar(y0).coeffs}, 4));
  std::vector<std::vector<Scalar>> tb;
  for (std::size_t i = 0; i < tangent.rows(); ++i) {
    auto t = tangent.row_vector(i);
    std::vector<std::vector<Scalar>> trial = {y0};
    for (const auto& x : tb) trial.push_back(x);
    trial.push_back(t);
    if (rank_of_vectors(trial) == trial.size()) tb.push_back(t);
  }
  if (tb.size() != 2) return;
  Scalar b11 = fq.evaluate(tb[0]), b12 = fq.bilinear(tb[0], tb[1]), b22 = fq.evaluate(tb[1]);
  std::vector<std::pair<Scalar, Scalar>> dirs;
  if (b11.is_zero()) {
    dirs = {{Scalar(1), Scalar(0)}, {-b22, Scalar(2) * b12}};
  } else {
    auto s = exact_sqrt(b12 * b12 - b11 * b22);
    if (!s) {
      unknown = true;
      return;
    }
    dirs = {{(-b12 + *s) / b11, Scalar(1)}, {(-b12 - *s) / b11, Scalar(1)}};
  }
  for (const auto& [c1, c2] : dirs) {
    auto y1 = axpy(c1, tb[0], axpy(c2, tb[1], std::vector<Scalar>(4)));
    Matrix dual = Matrix::from_rows({fq.polar(y0).coeffs, fq.polar(y1).coeffs}, 4);
    auto f0 = solve(dual, std::vector<Scalar>{1, 0});
    auto f1 = solve(dual, std::vector<Scalar>{0, 1});
    if (!f0 || !f1) continue;
    // lines meeting span{y0, y1}: through p = y0 + tau y1 and
    // r = u + f(u)/2 y1 with u = tau f0 - f1
    PolyVec pt = axpy(DensePoly::monomial(1, 1), constant_vec(y1), constant_vec(y0));
    PolyVec u = axpy(DensePoly::monomial(1, 1), constant_vec(*f0), constant_vec(axpy(-1, *f1, std::vector<Scalar>(4))));
    DensePoly fu({fq.evaluate(*f1), Scalar(-2) * fq.bilinear(*f0, *f1), fq.evaluate(*f0)});
    PolyVec rt = axpy(Scalar::fraction(1, 2) * fu, constant_vec(y1), u);
    if (solve_family({pt, rt})) return;
    if (try_m({y1, axpy(-fq.evaluate(*f0) / Scalar(2), y0, *f0)})) return;
  }
}

}  // namespace

Case3Result case3_witness_search(const QuadraticForm& q, const QuadraticForm& q1, const QuadraticForm& q2) {
  Case3Result res;
  const std::vector<const QuadraticForm*> forms = {&q1, &q2, &q};
  for (const auto* f : forms)
    if (f->nvars() != q1.nvars()) throw PreconditionViolation("case3_witness_search: nvars mismatch");
  for (const auto* f : forms)
    if (rank_s(*f) > 2) return res;
  if (q1.nvars() < 2) return res;

  Search s{q, q1, q2, std::nullopt, false};
  std::vector<std::pair<std::size_t, const QuadraticForm*>> ranked;
  for (const auto* f : forms)
    if (!f->is_zero()) ranked.emplace_back(gram_rank(*f), f);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  auto others_of = [&](const QuadraticForm* f) {
    std::vector<const QuadraticForm*> o;
    for (const auto* g : forms)
      if (g != f) o.push_back(g);
    return o;
  };

  bool rational_pivot = false;
  for (const auto& [rank, f] : ranked) {
    if (rank > 2) break;
    auto fi = factor_info(*f);
    if (fi.kind != FactorKind::Rational) continue;
    rational_pivot = true;
    for (const auto& a : fi.factors) {
      s.factor_branch(a, others_of(f));
      if (s.found) break;
    }
    break;
  }
  if (!rational_pivot) {
    if (ranked.front().first <= 2) {
      s.unknown = true;
    } else {
      s.quadric_branch(*ranked.front().second, others_of(ranked.front().second));
    }
  }
  if (s.found) {
    res.status = SearchStatus::Found;
    res.witness = s.found;
  } else if (s.unknown) {
    res.status = SearchStatus::Unknown;
  }
  return res;
}

bool verify_witness(const CaseWitness& w, const QuadraticForm& q, const QuadraticForm& q1, const QuadraticForm& q2) {
  if (const auto* sw = std::get_if<SpanWitness>(&w)) return q == sw->alpha * q1 + sw->beta * q2;
  if (const auto* pw = std::get_if<PencilWitness>(&w)) {
    if (!pw->explicit_root) {
      // every root alpha of the defining polynomial gives rank <= 1; checked
      // on the 2x2 minors as polynomials
      if (pw->defining.degree() < 1) return false;
      const std::size_t n = q1.nvars();
      auto entry = [&](std::size_t i, std::size_t j) { return DensePoly({q2.gram()(i, j), q1.gram()(i, j)}); };
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = j + 1; l < n; ++l)
              if (!divides(pw->defining, entry(i, j) * entry(k, l) - entry(i, l) * entry(k, j))) return false;
      return true;
    }
    if (pw->alpha.is_zero() && pw->beta.is_zero()) return false;
    QuadraticForm m = pw->alpha * q1 + pw->beta * q2;
    return gram_rank(m) <= 1 && m == pw->c * QuadraticForm::square(pw->l);
  }
  const auto& cw = std::get<Codim2Witness>(w);
  return verify_case3(q, q1, q2, cw.l1, cw.l2);
}

Classification classify(const QuadraticForm& q, const QuadraticForm& q1, const QuadraticForm& q2,
                        const MembershipBudget& budget) {
  require_independent(q1, q2, "classify");
  Classification c;
  if (auto s = span_case(q, q1, q2)) c.witnesses.emplace_back(*s);
  if (auto p = pencil_square(q1, q2)) c.witnesses.emplace_back(*p);
  auto c3 = case3_witness_search(q, q1, q2);
  c.case3 = c3.status;
  if (c3.witness) c.witnesses.emplace_back(*c3.witness);
  for (const auto& w : c.witnesses)
    if (!verify_witness(w, q, q1, q2)) throw SoundnessError(std::string("classify: witness fails: ") + case_name(w));
  if (c.witnesses.empty()) {
    auto v = radical_member(q.to_poly(), q1, q2, budget);
    c.membership = v.outcome;
    c.incomplete = v.outcome == Outcome::Member;
  }
  return c;
}

GeneratedCase gen_case(int kind, std::size_t nvars, std::uint64_t seed) {
  if (nvars < 4) throw PreconditionViolation("gen_case: nvars must be at least 4");
  if (kind < 1 || kind > 3) throw PreconditionViolation("gen_case: case must be 1, 2 or 3");
  Rng rng(seed);
  GeneratedCase g;
  g.kind = kind;
  const std::size_t n = nvars;
  auto independent = [](const QuadraticForm& a, const QuadraticForm& b) {
    return rank_of(coefficient_matrix({a, b})) == 2;
  };
  while (true) {
    if (kind == 1) {
      g.q1 = random_quadratic(rng, n);
      g.q2 = random_quadratic(rng, n);
      g.alpha = rng.nonzero_small(5);
      g.beta = rng.nonzero_small(5);
      g.q = g.alpha * g.q1 + g.beta * g.q2;
      if (independent(g.q1, g.q2)) return g;
    } else if (kind == 2) {
      g.q1 = random_quadratic(rng, n);
      g.a = random_linear(rng, n);
      g.b = random_linear(rng, n);
      g.alpha = rng.nonzero_small(5);
      g.beta = rng.nonzero_small(5);
      g.q2 = g.alpha * g.q1 + QuadraticForm::square(g.b);
      g.q = g.beta * g.q1 + QuadraticForm::product(g.b, g.a);
      if (gram_rank(g.q1) >= 3 && independent(g.q1, g.q2)) return g;
    } else {
      LinearForm a = random_linear(rng, n), b = random_linear(rng, n), c = random_linear(rng, n);
      if (rank_of_vectors({a.coeffs, b.coeffs, c.coeffs}) != 3) continue;
      LinearForm d = rng.nonzero_small(4) * a + rng.nonzero_small(4) * c;
      QuadraticForm p1 = QuadraticForm::product(a, b);
      QuadraticForm p2 = QuadraticForm::product(c, d);
      QuadraticForm pq = QuadraticForm::product(b, c);
      Scalar m11 = rng.small(4), m12 = rng.small(4), m21 = rng.small(4), m22 = rng.small(4);
      if ((m11 * m22 - m12 * m21).is_zero()) continue;
      g.q1 = m11 * p1 + m12 * p2;
      g.q2 = m21 * p1 + m22 * p2;
      g.q = pq + rng.small(3) * p1 + rng.small(3) * p2;
      g.l1 = a;
      g.l2 = c;
      if (gram_rank(g.q1) >= 3 && gram_rank(g.q2) >= 3 && independent(g.q1, g.q2)) return g;
    }
  }
}

}  // namespace quadsg
