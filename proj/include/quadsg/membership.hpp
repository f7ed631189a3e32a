#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "quadsg/multipoly.hpp"
#include "quadsg/quadratic_form.hpp"
#include "quadsg/unipoly.hpp"

namespace quadsg {

/// Affine plane x = p0 + s*u + t*v.
struct Plane {
  std::vector<Scalar> p0, u, v;
  std::vector<AffineImage> images() const;
};

struct NonMemberEvidence {
  Plane plane;
  /// Product of the irreducible factors (in s) of the squarefree part of
  /// Res_t(Q1|, Q2|) that divide neither Res_t(Q1|, Q|) nor lc_t(Q1|).
  DensePoly factor;
};

struct PlaneOutcome {
  std::optional<NonMemberEvidence> evidence;
  bool degenerate = false;
};

/// Cofactors with Q^k = A*Q1 + B*Q2, if they exist (deg A = deg B = k deg Q - 2).
std::optional<std::pair<MultiPoly, MultiPoly>> ideal_membership_power(const MultiPoly& q, const QuadraticForm& q1,
                                                                      const QuadraticForm& q2, unsigned k);

PlaneOutcome falsify_on_plane(const MultiPoly& q, const QuadraticForm& q1, const QuadraticForm& q2,
                              const Plane& plane);

/// Independent re-check of NonMember evidence: recomputes both resultants on
/// the recorded plane and confirms the factor divides the first, is coprime to
/// the second and to lc_t(Q1|).
bool verify_nonmember(const MultiPoly& q, const QuadraticForm& q1, const QuadraticForm& q2,
                      const NonMemberEvidence& ev);

Plane random_plane(Rng& rng, std::size_t n, long bound = 10);

enum class Outcome { Member, NonMember, Unknown };
const char* outcome_name(Outcome o);

struct MembershipBudget {
  unsigned kmax = 4;
  unsigned planes = 50;
  std::uint64_t seed = 0;
};

struct MembershipVerdict {
  Outcome outcome = Outcome::Unknown;
  unsigned k = 0;
  MultiPoly cofactor_a, cofactor_b;
  std::optional<NonMemberEvidence> evidence;
  unsigned kmax_tried = 0;
  unsigned planes_tried = 0;
  unsigned planes_discarded = 0;
};

/// Interleaves k = 1..kmax membership with plane falsification: k=1, plane 1,
/// k=2, plane 2, ..., then the remaining planes. First certificate wins.
MembershipVerdict radical_member(const MultiPoly& q, const QuadraticForm& q1, const QuadraticForm& q2,
                                 const MembershipBudget& budget = {});

}  // namespace quadsg
