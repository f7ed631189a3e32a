#include "quadsg/configurations.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace quadsg {

namespace {

std::string set_label(int set, std::size_t index) {
  return "T" + std::to_string(set) + "[" + std::to_string(index) + "]";
}

Vec normalized(Vec v) {
  auto it = std::find_if(v.begin(), v.end(), [](const Scalar& s) { return !s.is_zero(); });
  if (it == v.end() || it->is_one()) return v;
  Scalar inv = it->inverse();
  *it = 1;
  for (++it; it != v.end(); ++it)
    if (!it->is_zero()) *it *= inv;
  return v;
}

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

// Coordinates with respect to the RREF basis of the span of everything seen:
// v = sum_k v[pivot_k] * rref_row_k, so v[pivots] determines v.
struct Frame {
  std::vector<std::size_t> pivots;

  Vec reduce(const Vec& v) const {
    Vec r;
    r.reserve(pivots.size());
    for (auto p : pivots) r.push_back(v[p]);
    return r;
  }
  std::size_t dim() const { return pivots.size(); }
};

Frame make_frame(const std::vector<const std::vector<Vec>*>& groups, std::size_t n) {
  Matrix m(0, n);
  for (const auto* g : groups)
    for (const auto& v : *g) m.append_row(v);
  return Frame{exact_rank(m).pivot_columns};
}

// Classes of the projection from p: q and q' share a key iff span{p, q} = span{p, q'}.
class Projector {
 public:
  explicit Projector(const Vec& p) : p_(p) {
    while (p_[i0_].is_zero()) ++i0_;
    inv_ = p_[i0_].inverse();
  }

  std::optional<Vec> key(const Vec& q) const {
    Vec w;
    w.reserve(p_.size() - 1);
    Scalar f = q[i0_] * inv_;
    for (std::size_t t = 0; t < p_.size(); ++t) {
      if (t == i0_) continue;
      w.push_back(f.is_zero() || p_[t].is_zero() ? q[t] : q[t] - f * p_[t]);
    }
    if (is_zero_vec(w)) return std::nullopt;
    return normalized(std::move(w));
  }

 private:
  const Vec& p_;
  std::size_t i0_ = 0;
  Scalar inv_;
};

class SpanTracker {
 public:
  Vec reduce(Vec v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Scalar f = v[piv_[r]];
      if (f.is_zero()) continue;
      for (std::size_t t = 0; t < v.size(); ++t)
        if (!rows_[r][t].is_zero()) v[t] -= f * rows_[r][t];
    }
    return v;
  }
  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }
  bool add(const Vec& v) {
    Vec r = reduce(v);
    auto it = std::find_if(r.begin(), r.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (it == r.end()) return false;
    piv_.push_back(static_cast<std::size_t>(it - r.begin()));
    rows_.push_back(normalized(std::move(r)));
    return true;
  }
  std::size_t dim() const { return rows_.size(); }

 private:
  std::vector<Vec> rows_;
  std::vector<std::size_t> piv_;
};

std::size_t ambient_of(const std::vector<const std::vector<Vec>*>& groups, const std::string& who) {
  std::optional<std::size_t> n;
  for (const auto* g : groups)
    for (const auto& v : *g) {
      if (!n) n = v.size();
      if (v.size() != *n) throw PreconditionViolation(who + ": points have different lengths");
    }
  return n.value_or(0);
}

// |Gamma_j(p)| and |Gamma_k(p)|: points of tj (tk) whose span with p holds a point of tk (tj).
std::pair<std::size_t, std::size_t> neighbour_counts(const Vec& p, const std::vector<Vec>& tj,
                                                     const std::vector<Vec>& tk) {
  Projector pr(p);
  std::vector<std::optional<Vec>> kj, kk;
  std::set<Vec> sj, sk;
  for (const auto& q : tj) {
    kj.push_back(pr.key(q));
    if (kj.back()) sj.insert(*kj.back());
  }
  for (const auto& q : tk) {
    kk.push_back(pr.key(q));
    if (kk.back()) sk.insert(*kk.back());
  }
  std::size_t cj = 0, ck = 0;
  for (const auto& k : kj) cj += k && sk.count(*k);
  for (const auto& k : kk) ck += k && sj.count(*k);
  return {cj, ck};
}

std::vector<std::size_t> gamma_indices(const Vec& p, const std::vector<Vec>& tj, const std::vector<Vec>& tk) {
  Projector pr(p);
  std::set<Vec> sk;
  for (const auto& q : tk)
    if (auto k = pr.key(q)) sk.insert(*k);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tj.size(); ++i) {
    auto k = pr.key(tj[i]);
    if (k && sk.count(*k)) out.push_back(i);
  }
  return out;
}

struct Reduced {
  Frame frame;
  std::array<std::vector<Vec>, 3> sets;
  std::vector<Vec> w;
};

Reduced reduce_triple(const PointSet& t1, const PointSet& t2, const PointSet& t3, const std::vector<Vec>& w,
                      const std::string& who) {
  std::vector<const std::vector<Vec>*> groups{&t1.points, &t2.points, &t3.points, &w};
  const std::size_t n = ambient_of(groups, who);
  std::vector<Vec> all;
  for (const auto* s : {&t1, &t2, &t3}) all.insert(all.end(), s->points.begin(), s->points.end());
  require_pairwise_independent(all, who);
  Reduced r;
  r.frame = make_frame(groups, n);
  const std::array<const PointSet*, 3> in{&t1, &t2, &t3};
  for (int s = 0; s < 3; ++s)
    for (const auto& v : in[s]->points) r.sets[s].push_back(r.frame.reduce(v));
  for (const auto& v : w) r.w.push_back(r.frame.reduce(v));
  return r;
}

Rational fraction(std::size_t num, std::size_t den) {
  Rational q(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

Rational size_q(std::size_t n) { return Rational(static_cast<unsigned long>(n)); }

}  // namespace

void require_pairwise_independent(const std::vector<Vec>& points, const std::string& who) {
  std::map<Vec, std::size_t> seen;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (is_zero_vec(points[i])) throw PreconditionViolation(who + ": point " + std::to_string(i) + " is zero");
    auto [it, fresh] = seen.emplace(normalized(points[i]), i);
    if (!fresh) {
      throw PreconditionViolation(who + ": points " + std::to_string(it->second) + " and " + std::to_string(i) +
                                  " are linearly dependent");
    }
  }
}

std::string point_ref_str(const PointRef& r) { return set_label(r.set, r.index); }

const char* regime_name(Regime r) { return r == Regime::Balanced ? "balanced" : "unbalanced"; }

const char* hypothesis_name(Hypothesis h) {
  switch (h) {
    case Hypothesis::Holds:
      return "holds";
    case Hypothesis::Fails:
      return "fails";
    case Hypothesis::Undetermined:
      return "undetermined";
  }
  return "undetermined";
}

SGReport check_delta_sg(const PointSet& ps) {
  const std::size_t n = ambient_of({&ps.points}, "check_delta_sg");
  require_pairwise_independent(ps.points, "check_delta_sg");
  Frame fr = make_frame({&ps.points}, n);
  std::vector<Vec> red;
  for (const auto& v : ps.points) red.push_back(fr.reduce(v));
  const std::size_t m = red.size();
  SGReport rep;
  rep.dim = fr.dim();
  rep.counts.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    Projector pr(red[i]);
    std::map<Vec, std::vector<std::size_t>> classes;
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) classes[*pr.key(red[j])].push_back(j);
    std::optional<std::array<std::size_t, 3>> first;
    for (const auto& [key, members] : classes) {
      if (members.size() < 2) continue;
      rep.counts[i] += members.size();
      if (!first || members[0] < (*first)[1]) first = std::array<std::size_t, 3>{i, members[0], members[1]};
    }
    if (first) rep.witness_triples.push_back(*first);
  }
  if (m == 0) {
    rep.delta_hat = 0;
    return rep;
  }
  rep.delta_hat = fraction(*std::min_element(rep.counts.begin(), rep.counts.end()), m);
  return rep;
}

EKReport check_ek(const PointSet& t1, const PointSet& t2, const PointSet& t3) {
  Reduced r = reduce_triple(t1, t2, t3, {}, "check_ek");
  EKReport rep;
  rep.dim = r.frame.dim();
  // pairs (T1,T2), (T1,T3) from T1 and (T2,T3) from T2
  for (int s = 0; s < 2 && !rep.violating_pair; ++s) {
    for (std::size_t i = 0; i < r.sets[s].size() && !rep.violating_pair; ++i) {
      Projector pr(r.sets[s][i]);
      std::array<std::set<Vec>, 3> keys;
      for (int o = 0; o < 3; ++o) {
        if (o == s) continue;
        for (const auto& q : r.sets[o]) keys[o].insert(*pr.key(q));
      }
      for (int j = s + 1; j < 3 && !rep.violating_pair; ++j) {
        const int k = 3 - s - j;
        for (std::size_t q = 0; q < r.sets[j].size(); ++q) {
          if (!keys[k].count(*pr.key(r.sets[j][q]))) {
            rep.violating_pair = std::make_pair(PointRef{s + 1, i}, PointRef{j + 1, q});
            break;
          }
        }
      }
    }
  }
  rep.holds = !rep.violating_pair;
  return rep;
}

DeltaEKReport check_delta_ek(const PointSet& t1, const PointSet& t2, const PointSet& t3) {
  Reduced r = reduce_triple(t1, t2, t3, {}, "check_delta_ek");
  for (int s = 0; s < 3; ++s)
    if (r.sets[s].empty()) throw PreconditionViolation("check_delta_ek: set T" + std::to_string(s + 1) + " is empty");
  DeltaEKReport rep;
  bool first = true;
  for (int s = 0; s < 3; ++s) {
    const int j = s == 0 ? 1 : 0;
    const int k = 3 - s - j;
    for (std::size_t i = 0; i < r.sets[s].size(); ++i) {
      auto [cj, ck] = neighbour_counts(r.sets[s][i], r.sets[j], r.sets[k]);
      for (auto [target, c] : {std::pair{j, cj}, std::pair{k, ck}}) {
        Rational f = fraction(c, r.sets[target].size());
        if (first || f < rep.delta_hat) {
          rep.delta_hat = f;
          rep.worst = PointRef{s + 1, i};
          rep.worst_target = target + 1;
          first = false;
        }
      }
    }
  }
  return rep;
}

EKCertificate certify_ek_span(const PointSet& t1, const PointSet& t2, const PointSet& t3, const EKOptions& opt) {
  const std::string who = "certify_ek_span";
  if (opt.delta <= 0 || opt.delta > 1) throw PreconditionViolation(who + ": delta must lie in (0, 1]");
  Reduced r = reduce_triple(t1, t2, t3, opt.w, who);
  const auto& sets = r.sets;

  SpanTracker span;
  for (const auto& v : r.w) span.add(v);
  std::array<std::vector<bool>, 3> exempt, in_w;
  for (int s = 0; s < 3; ++s) {
    for (const auto& v : sets[s]) in_w[s].push_back(span.contains(v));
    exempt[s] = in_w[s];
  }
  for (const auto& e : opt.exceptional) {
    if (e.set < 1 || e.set > 3 || e.index >= sets[e.set - 1].size()) {
      throw PreconditionViolation(who + ": exceptional point " + point_ref_str(e) + " does not exist");
    }
    exempt[e.set - 1][e.index] = true;
  }

  for (int s = 0; s < 3; ++s) {
    const int j = s == 0 ? 1 : 0;
    const int k = 3 - s - j;
    for (std::size_t i = 0; i < sets[s].size(); ++i) {
      if (exempt[s][i]) continue;
      auto [cj, ck] = neighbour_counts(sets[s][i], sets[j], sets[k]);
      for (auto [target, c] : {std::pair{j, cj}, std::pair{k, ck}}) {
        if (size_q(c) < opt.delta * size_q(sets[target].size())) {
          throw PreconditionViolation(who + ": point " + set_label(s + 1, i) + " sees only " + std::to_string(c) +
                                      " of " + std::to_string(sets[target].size()) + " points of T" +
                                      std::to_string(target + 1));
        }
      }
    }
  }

  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sets[a].size() > sets[b].size(); });
  const int A = order[0], B = order[1], C = order[2];
  const std::size_t m1 = sets[A].size(), m2 = sets[B].size(), m3 = sets[C].size();

  EKCertificate cert;
  mpz_class m3pow;
  mpz_pow_ui(m3pow.get_mpz_t(), mpz_class(static_cast<unsigned long>(m3)).get_mpz_t(), opt.regime_power);
  cert.regime = m3pow <= mpz_class(static_cast<unsigned long>(m1)) ? Regime::Unbalanced : Regime::Balanced;

  auto add = [&](int s, std::size_t i) {
    if (span.add(sets[s][i])) cert.spanning_set.push_back(PointRef{s + 1, i});
  };
  for (const auto& e : opt.exceptional)
    if (!in_w[e.set - 1][e.index]) add(e.set - 1, e.index);

  Rng rng(opt.seed);
  if (cert.regime == Regime::Balanced) {
    const Rational rate = m1 == 0 ? Rational(1) : fraction(m2, m1);
    const Rational sg_delta = opt.delta / 8;
    std::vector<std::size_t> sample;
    while (cert.sample_attempts < opt.max_sample_attempts && !cert.sample_accepted) {
      ++cert.sample_attempts;
      sample.clear();
      for (std::size_t i = 0; i < m1; ++i)
        if (rng.bernoulli(rate)) sample.push_back(i);
      if (sample.size() > 2 * m2) continue;
      std::vector<std::pair<int, std::size_t>> uni;
      for (auto i : sample) uni.emplace_back(A, i);
      for (int s : {B, C})
        for (std::size_t i = 0; i < sets[s].size(); ++i) uni.emplace_back(s, i);
      const Rational need = sg_delta * size_q(uni.size());
      bool ok = true;
      for (std::size_t u = 0; u < uni.size() && ok; ++u) {
        auto [s, i] = uni[u];
        if (exempt[s][i]) continue;
        Projector pr(sets[s][i]);
        std::map<Vec, std::size_t> classes;
        for (std::size_t v = 0; v < uni.size(); ++v)
          if (v != u) ++classes[*pr.key(sets[uni[v].first][uni[v].second])];
        std::size_t count = 0;
        for (const auto& [key, c] : classes)
          if (c >= 2) count += c;
        ok = size_q(count) >= need;
      }
      cert.sample_accepted = ok;
    }
    if (cert.sample_accepted) {
      for (int s : {B, C})
        for (std::size_t i = 0; i < sets[s].size(); ++i) add(s, i);
      for (auto i : sample) add(A, i);
    }
  } else {
    const Rational cutoff = opt.cover_factor * opt.delta * opt.delta * size_q(m1);
    for (std::size_t p = 0; p < m2; ++p) {
      if (span.contains(sets[B][p])) continue;
      ++cert.greedy_steps;
      add(B, p);
      Projector pr(sets[B][p]);
      std::map<Vec, std::vector<std::size_t>> classes;
      for (std::size_t a = 0; a < m1; ++a) classes[*pr.key(sets[A][a])].push_back(a);
      std::set<Vec> taken;
      for (const auto& q : sets[C]) {
        Vec key = *pr.key(q);
        auto it = classes.find(key);
        if (it == classes.end() || size_q(it->second.size()) < cutoff || !taken.insert(key).second) continue;
        add(A, it->second.front());
      }
    }
    std::vector<bool> used(m1, false);
    for (std::size_t q = 0; q < m3; ++q) {
      auto g = gamma_indices(sets[C][q], sets[A], sets[B]);
      if (g.empty() || std::any_of(g.begin(), g.end(), [&](std::size_t a) { return used[a]; })) continue;
      for (auto a : g) used[a] = true;
      ++cert.t3_disjoint;
      add(C, q);
    }
  }

  for (int s = 0; s < 3; ++s)
    for (std::size_t i = 0; i < sets[s].size(); ++i)
      if (span.add(sets[s][i])) {
        cert.spanning_set.push_back(PointRef{s + 1, i});
        ++cert.fallback_extensions;
      }

  cert.span_dim = span.dim();
  cert.union_dim = r.frame.dim();
  cert.spans = cert.span_dim == cert.union_dim;
  if (!cert.spans) throw SoundnessError(who + ": certificate does not span the union");

  const Rational d = opt.delta;
  Rational bound = cert.regime == Regime::Balanced
                       ? Rational(Rational(96) / d)
                       : Rational(Rational(2) / d * (1 + 1 / (opt.cover_factor * d * d)) + 1 / d);
  mpz_class fl = bound.get_num() / bound.get_den();
  cert.size_bound_claimed = fl.get_ui() + opt.exceptional.size();
  return cert;
}

// --- quadratic checkers ---

namespace {

void require_independent_forms(const std::vector<QuadraticForm>& f, const std::string& who) {
  std::vector<Vec> vs;
  for (const auto& q : f) vs.push_back(q.coeff_vector());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i > 0 && f[i].nvars() != f[0].nvars()) throw PreconditionViolation(who + ": nvars mismatch");
    if (f[i].is_zero()) throw PreconditionViolation(who + ": form " + std::to_string(i) + " is zero");
  }
  try {
    require_pairwise_independent(vs, who);
  } catch (const PreconditionViolation& e) {
    throw PreconditionViolation(std::string(e.what()) + " (as quadratic forms)");
  }
}

QuadPairResult search_pair(const std::vector<QuadraticForm>& f, std::size_t i, std::size_t j,
                           const std::vector<std::size_t>& cands, const MembershipBudget& budget) {
  QuadPairResult r;
  r.i = i;
  r.j = j;
  auto found = [&](std::size_t k, std::string via) {
    r.k = k;
    r.via = std::move(via);
    return r;
  };
  for (auto k : cands)
    if (span_case(f[k], f[i], f[j])) return found(k, "span");
  auto si = is_square(f[i]);
  auto sj = is_square(f[j]);
  if (si && sj) {
    for (auto k : cands)
      if (restrict_mod_pair(f[k].to_poly(), si->l, sj->l).is_zero()) return found(k, "pencil-factor");
  } else if (auto pw = pencil_square(f[i], f[j]); pw && pw->explicit_root) {
    for (auto k : cands)
      if (restrict_mod_linear(f[k], pw->l).is_zero()) return found(k, "pencil-factor");
  }
  for (auto k : cands) {
    auto v = radical_member(f[k].to_poly(), f[i], f[j], budget);
    if (v.outcome == Outcome::Member) return found(k, "radical(k=" + std::to_string(v.k) + ")");
    if (v.outcome == Outcome::Unknown) r.undetermined = true;
  }
  return r;
}

void finish_report(QuadSetReport& rep, const std::vector<QuadraticForm>& f, const MembershipBudget& budget) {
  for (const auto& p : rep.pairs) {
    if (p.k) {
      Classification c = classify(f[*p.k], f[p.i], f[p.j], budget);
      if (c.witnesses.empty()) ++rep.census.unknown;
      for (const auto& w : c.witnesses) {
        switch (w.index()) {
          case 0:
            ++rep.census.span;
            break;
          case 1:
            ++rep.census.pencil;
            break;
          default:
            ++rep.census.codim2;
        }
      }
    } else if (p.undetermined) {
      rep.undetermined_pairs.emplace_back(p.i, p.j);
    } else {
      rep.missing_pairs.emplace_back(p.i, p.j);
    }
  }
  rep.status = !rep.missing_pairs.empty()        ? Hypothesis::Fails
               : !rep.undetermined_pairs.empty() ? Hypothesis::Undetermined
                                                 : Hypothesis::Holds;
  rep.hypothesis_holds = rep.status == Hypothesis::Holds;
  rep.span_dim = f.empty() ? 0 : rank_of(coefficient_matrix(f));
}

}  // namespace

QuadSetReport check_quadratic_sg(const std::vector<QuadraticForm>& forms, const MembershipBudget& budget,
                                 bool strict) {
  const std::string who = "check_quadratic_sg";
  require_independent_forms(forms, who);
  if (strict) {
    for (std::size_t i = 0; i < forms.size(); ++i) {
      auto r = gram_rank(forms[i]);
      if (r == 2) throw PreconditionViolation(who + ": form " + std::to_string(i) + " is neither irreducible nor a square");
    }
  }
  QuadSetReport rep;
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      std::vector<std::size_t> cands;
      for (std::size_t k = 0; k < forms.size(); ++k)
        if (k != i && k != j) cands.push_back(k);
      rep.pairs.push_back(search_pair(forms, i, j, cands, budget));
    }
  finish_report(rep, forms, budget);
  return rep;
}

QuadEKReport check_quadratic_ek(const std::vector<QuadraticForm>& t1, const std::vector<QuadraticForm>& t2,
                                const std::vector<QuadraticForm>& t3, const MembershipBudget& budget) {
  const std::string who = "check_quadratic_ek";
  QuadEKReport rep;
  std::vector<QuadraticForm> all;
  const std::array<const std::vector<QuadraticForm>*, 3> sets{&t1, &t2, &t3};
  for (int s = 0; s < 3; ++s) {
    rep.offsets[s] = all.size();
    all.insert(all.end(), sets[s]->begin(), sets[s]->end());
  }
  require_independent_forms(all, who);
  for (int s = 0; s < 3; ++s) rep.set_span_dims[s] = sets[s]->empty() ? 0 : rank_of(coefficient_matrix(*sets[s]));
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const int c = 3 - a - b;
      std::vector<std::size_t> cands(sets[c]->size());
      std::iota(cands.begin(), cands.end(), rep.offsets[c]);
      for (std::size_t i = 0; i < sets[a]->size(); ++i)
        for (std::size_t j = 0; j < sets[b]->size(); ++j)
          rep.combined.pairs.push_back(search_pair(all, rep.offsets[a] + i, rep.offsets[b] + j, cands, budget));
    }
  finish_report(rep.combined, all, budget);
  return rep;
}

// --- generators ---

std::array<PointSet, 3> planted_ek(std::array<std::size_t, 3> sizes, std::size_t subspaces, std::size_t ambient,
                                   std::uint64_t seed, std::size_t dim) {
  if (subspaces == 0 || dim < 2 || ambient < dim) throw PreconditionViolation("planted_ek: bad shape");
  Rng rng(seed);
  auto draw = [&](std::size_t len, long bound) {
    Vec v(len);
    for (auto& x : v) x = rng.small(bound);
    return v;
  };
  std::vector<std::pair<Vec, Vec>> planes;
  while (planes.size() < subspaces) {
    Vec e1 = draw(dim, 9), e2 = draw(dim, 9);
    if (rank_of_vectors({e1, e2}) != 2) continue;
    bool ok = std::all_of(planes.begin(), planes.end(), [&](const auto& pl) {
      return rank_of_vectors({e1, e2, pl.first, pl.second}) == std::min<std::size_t>(4, dim);
    });
    if (ok) planes.emplace_back(std::move(e1), std::move(e2));
  }
  Matrix emb;
  do {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < ambient; ++i) rows.push_back(draw(dim, 5));
    emb = Matrix::from_rows(rows, dim);
  } while (rank_of(emb) != dim);

  std::array<PointSet, 3> out;
  std::vector<long> next_t(subspaces, 1);
  for (int c = 0; c < 3; ++c) {
    out[c].color = c + 1;
    for (std::size_t s = 0; s < subspaces; ++s) {
      const std::size_t cnt = sizes[c] / subspaces + (s < sizes[c] % subspaces ? 1 : 0);
      for (std::size_t n = 0; n < cnt; ++n) {
        const Scalar t(next_t[s]++);
        Vec x(dim);
        for (std::size_t i = 0; i < dim; ++i) x[i] = planes[s].first[i] + t * planes[s].second[i];
        Vec p(ambient);
        for (std::size_t i = 0; i < ambient; ++i)
          for (std::size_t j = 0; j < dim; ++j)
            if (!emb(i, j).is_zero() && !x[j].is_zero()) p[i] += emb(i, j) * x[j];
        out[c].points.push_back(std::move(p));
      }
    }
  }
  return out;
}

PointSet three_line_family(std::size_t per_line) {
  PointSet ps;
  for (long a = 0; a < static_cast<long>(per_line); ++a) ps.points.push_back({1, 0, a});
  for (long b = 0; b < static_cast<long>(per_line); ++b) ps.points.push_back({0, 1, b});
  for (long c = 0; c < static_cast<long>(per_line); ++c) ps.points.push_back({1, 1, c});
  return ps;
}

std::vector<Vec> fermat_points() {
  const std::array<Scalar, 4> zeta{Scalar(1), Scalar::imaginary_unit(), Scalar(-1), -Scalar::imaginary_unit()};
  std::vector<Vec> out;
  for (const auto& z : zeta) out.push_back({1, -z, 0});
  for (const auto& z : zeta) out.push_back({0, 1, -z});
  for (const auto& z : zeta) out.push_back({-z, 0, 1});
  return out;
}

PencilFamily gen_pencil_family(std::size_t nvars, std::size_t members, std::uint64_t seed, bool single_beta) {
  if (nvars < 2) throw PreconditionViolation("gen_pencil_family: need at least two variables");
  Rng rng(seed);
  const Scalar half = Scalar::fraction(1, 2);
  for (;;) {
    std::array<LinearForm, 2> u{random_linear(rng, nvars), random_linear(rng, nvars)};
    std::array<LinearForm, 2> v{random_linear(rng, nvars), random_linear(rng, nvars)};
    std::array<Scalar, 2> beta{rng.nonzero_small(5), rng.nonzero_small(5)};
    if (beta[0] == beta[1]) continue;
    // Q1 - beta_s Q2 = u_s v_s for s = 0, 1
    QuadraticForm p0 = QuadraticForm::product(u[0], v[0]);
    QuadraticForm p1 = QuadraticForm::product(u[1], v[1]);
    PencilFamily fam;
    fam.q2 = (beta[1] - beta[0]).inverse() * (p0 - p1);
    fam.q1 = p0 + beta[0] * fam.q2;
    if (fam.q1.is_zero() || fam.q2.is_zero() || rank_of(coefficient_matrix({fam.q1, fam.q2})) != 2) continue;
    for (std::size_t m = 0; m < members; ++m) {
      const int s = single_beta ? 0 : static_cast<int>(rng.below(2));
      const Scalar lambda = rng.nonzero_small(4);
      const Scalar inv = lambda.inverse();
      LinearForm b = half * (lambda * u[s] + inv * v[s]);
      LinearForm ell = half * (inv * v[s] - lambda * u[s]);
      if (!(fam.q1 + QuadraticForm::square(ell) == beta[s] * fam.q2 + QuadraticForm::square(b))) {
        throw SoundnessError("gen_pencil_family: member identity failed");
      }
      fam.betas.push_back(beta[s]);
      fam.ell.push_back(std::move(ell));
      fam.b.push_back(std::move(b));
    }
    return fam;
  }
}

}  // namespace quadsg
