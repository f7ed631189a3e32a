#include "quadsg/membership.hpp"

#include <map>

namespace quadsg {

std::vector<AffineImage> Plane::images() const {
  std::vector<AffineImage> img(p0.size());
  for (std::size_t i = 0; i < p0.size(); ++i) img[i] = AffineImage{{u[i], v[i]}, p0[i]};
  return img;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Member:
      return "Member";
    case Outcome::NonMember:
      return "NonMember";
    case Outcome::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

std::optional<std::pair<MultiPoly, MultiPoly>> ideal_membership_power(const MultiPoly& q, const QuadraticForm& q1,
                                                                      const QuadraticForm& q2, unsigned k) {
  const std::size_t n = q1.nvars();
  if (q.nvars() != n || q2.nvars() != n) throw PreconditionViolation("ideal_membership_power: nvars mismatch");
  if (k == 0) throw PreconditionViolation("ideal_membership_power: k must be positive");
  if (!q.is_homogeneous()) throw PreconditionViolation("ideal_membership_power: Q must be homogeneous");
  MultiPoly target = q.pow(k);
  if (target.is_zero()) return std::make_pair(MultiPoly(n), MultiPoly(n));
  const int d = target.degree();
  if (d < 2) return std::nullopt;

  auto rows = monomials_of_degree(n, static_cast<unsigned>(d));
  auto cols = monomials_of_degree(n, static_cast<unsigned>(d - 2));
  std::map<Monomial, std::size_t, GrlexGreater> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], i);

  const MultiPoly p1 = q1.to_poly();
  const MultiPoly p2 = q2.to_poly();
  Matrix a(rows.size(), 2 * cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [m, c] : p1.terms()) a(row_index.at(cols[j] * m), j) += c;
    for (const auto& [m, c] : p2.terms()) a(row_index.at(cols[j] * m), cols.size() + j) += c;
  }
  std::vector<Scalar> b(rows.size());
  for (const auto& [m, c] : target.terms()) b[row_index.at(m)] = c;

  auto x = solve(a, b);
  if (!x) return std::nullopt;
  MultiPoly ca(n), cb(n);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    ca.add_term(cols[j], (*x)[j]);
    cb.add_term(cols[j], (*x)[cols.size() + j]);
  }
  if (!(ca * p1 + cb * p2 == target)) throw SoundnessError("ideal_membership_power: certificate does not re-expand");
  return std::make_pair(std::move(ca), std::move(cb));
}

namespace {

struct Restricted {
  MultiPoly f1, f2, fq;  // in (s, t)
};

Restricted restrict_to(const MultiPoly& q, const QuadraticForm& q1, const QuadraticForm& q2, const Plane& plane) {
  auto img = plane.images();
  return {substitute(q1.to_poly(), img, 2), substitute(q2.to_poly(), img, 2), substitute(q, img, 2)};
}

constexpr std::size_t kS = 0;
constexpr std::size_t kT = 1;

// Res_t(f, g) as a polynomial in s; g may be free of t.
DensePoly resultant_in_s(const MultiPoly& f, const MultiPoly& g) {
  if (g.is_zero()) return DensePoly();
  if (g.degree_in(kT) <= 0) {
    DensePoly gs = DensePoly::from_multipoly(g, kS);
    DensePoly r = DensePoly::constant(1);
    for (int i = 0; i < f.degree_in(kT); ++i) r = r * gs;
    return r;
  }
  return DensePoly::from_multipoly(uni_resultant(f, g, kT), kS);
}

DensePoly leading_in_t(const MultiPoly& f) {
  return DensePoly::from_multipoly(coefficients_in(f, kT).back(), kS);
}

}  // namespace

PlaneOutcome falsify_on_plane(const MultiPoly& q, const QuadraticForm& q1, const QuadraticForm& q2,
                              const Plane& plane) {
  const std::size_t n = q1.nvars();
  if (plane.p0.size() != n || plane.u.size() != n || plane.v.size() != n) {
    throw PreconditionViolation("falsify_on_plane: plane has wrong dimension");
  }
  if (rank_of_vectors({plane.u, plane.v}) != 2) throw PreconditionViolation("falsify_on_plane: u, v dependent");
  PlaneOutcome out;
  auto r = restrict_to(q, q1, q2, plane);
  if (r.f1.degree_in(kT) <= 0 || r.f2.degree_in(kT) <= 0) {
    out.degenerate = true;
    return out;
  }
  DensePoly r12 = resultant_in_s(r.f1, r.f2);
  if (r12.is_zero()) {
    out.degenerate = true;
    return out;
  }
  if (r12.degree() < 1) return out;
  DensePoly h = squarefree_part(r12);
  DensePoly r1q = resultant_in_s(r.f1, r.fq);
  h = exact_quotient(h, uni_gcd(h, r1q));
  h = exact_quotient(h, uni_gcd(h, leading_in_t(r.f1)));
  if (h.degree() >= 1) out.evidence = NonMemberEvidence{plane, h.monic()};
  return out;
}

bool verify_nonmember(const MultiPoly& q, const QuadraticForm& q1, const QuadraticForm& q2,
                      const NonMemberEvidence& ev) {
  if (ev.factor.degree() < 1) return false;
  auto r = restrict_to(q, q1, q2, ev.plane);
  if (r.f1.degree_in(kT) <= 0 || r.f2.degree_in(kT) <= 0) return false;
  DensePoly r12 = resultant_in_s(r.f1, r.f2);
  if (r12.is_zero() || !divides(ev.factor, r12)) return false;
  DensePoly r1q = resultant_in_s(r.f1, r.fq);
  if (r1q.is_zero() || uni_gcd(ev.factor, r1q).degree() > 0) return false;
  return uni_gcd(ev.factor, leading_in_t(r.f1)).degree() == 0;
}

Plane random_plane(Rng& rng, std::size_t n, long bound) {
  Plane p;
  p.p0.resize(n);
  p.u.resize(n);
  p.v.resize(n);
  do {
    for (std::size_t i = 0; i < n; ++i) {
      p.p0[i] = rng.small(bound);
      p.u[i] = rng.small(bound);
      p.v[i] = rng.small(bound);
    }
  } while (rank_of_vectors({p.u, p.v}) != 2);
  return p;
}

MembershipVerdict radical_member(const MultiPoly& q, const QuadraticForm& q1, const QuadraticForm& q2,
                                 const MembershipBudget& budget) {
  const std::size_t n = q1.nvars();
  if (q2.nvars() != n || q.nvars() != n) throw PreconditionViolation("radical_member: nvars mismatch");
  if (q1.is_zero() || q2.is_zero()) throw PreconditionViolation("radical_member: generators must be nonzero");
  if (rank_of(coefficient_matrix({q1, q2})) != 2) {
    throw PreconditionViolation("radical_member: generators are scalar multiples of each other");
  }
  if (!q.is_homogeneous()) throw PreconditionViolation("radical_member: Q must be homogeneous");
  if (n < 2) throw PreconditionViolation("radical_member: need at least two variables");

  MembershipVerdict v;
  Rng rng(budget.seed);
  const unsigned max_attempts = 4 * budget.planes + 20;
  unsigned attempts = 0;

  auto try_k = [&](unsigned k) {
    v.kmax_tried = k;
    auto cof = ideal_membership_power(q, q1, q2, k);
    if (!cof) return false;
    v.outcome = Outcome::Member;
    v.k = k;
    v.cofactor_a = std::move(cof->first);
    v.cofactor_b = std::move(cof->second);
    return true;
  };
  // one counted (non-degenerate) plane; false once the budget is spent
  auto try_plane = [&]() {
    while (v.planes_tried < budget.planes && attempts < max_attempts) {
      ++attempts;
      Plane p = random_plane(rng, n);
      auto res = falsify_on_plane(q, q1, q2, p);
      if (res.degenerate) {
        ++v.planes_discarded;
        continue;
      }
      ++v.planes_tried;
      if (res.evidence) {
        v.outcome = Outcome::NonMember;
        v.evidence = std::move(res.evidence);
        return true;
      }
      return false;
    }
    return false;
  };

  for (unsigned k = 1; k <= budget.kmax; ++k) {
    if (try_k(k)) return v;
    if (try_plane()) return v;
  }
  while (v.planes_tried < budget.planes && attempts < max_attempts)
    if (try_plane()) return v;
  return v;
}

}  // namespace quadsg
