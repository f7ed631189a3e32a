#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "quadsg/membership.hpp"
#include "quadsg/structure.hpp"

using namespace quadsg;
using th::P;
using th::Q;

namespace {

const QuadraticForm kQ1 = Q("x*y + z*w");
const QuadraticForm kQ2 = Q("x*y - z*w");

void expect_member_certificate(const MultiPoly& q, const QuadraticForm& q1, const QuadraticForm& q2,
                               const MembershipVerdict& v) {
  ASSERT_EQ(v.outcome, Outcome::Member);
  MultiPoly lhs = q.pow(v.k);
  MultiPoly rhs = v.cofactor_a * q1.to_poly() + v.cofactor_b * q2.to_poly();
  EXPECT_TRUE((lhs - rhs).is_zero());
}

// Q1, Q2 through a common point p; Q with Q(p) != 0
struct NonMemberCase {
  QuadraticForm q, q1, q2;
  oracle::Vec p;
};

NonMemberCase constructed_nonmember(Rng& rng, std::size_t n) {
  NonMemberCase c;
  do {
    c.p.assign(n, Scalar(0));
    for (auto& x : c.p) x = rng.small(3);
  } while (std::all_of(c.p.begin(), c.p.end(), [](const Scalar& s) { return s.is_zero(); }));
  auto through_p = [&]() {
    while (true) {
      QuadraticForm r = random_quadratic(rng, n, 4);
      LinearForm l = random_linear(rng, n, 3);
      Scalar lp = l(c.p);
      if (lp.is_zero()) continue;
      QuadraticForm f = r - (oracle::eval_quadratic(r, c.p) / (lp * lp)) * QuadraticForm::square(l);
      if (!f.is_zero()) return f;
    }
  };
  do {
    c.q1 = through_p();
    c.q2 = through_p();
  } while (oracle::bareiss_rank({c.q1.coeff_vector(), c.q2.coeff_vector()}) < 2);
  do c.q = random_quadratic(rng, n, 4);
  while (oracle::eval_quadratic(c.q, c.p).is_zero());
  return c;
}

}  // namespace

TEST(IdealMembershipPower, Examples) {
  auto one = ideal_membership_power(kQ1.to_poly(), kQ1, kQ2, 1);
  ASSERT_TRUE(one);
  EXPECT_EQ(one->first, MultiPoly::constant(4, Scalar(1)));
  EXPECT_TRUE(one->second.is_zero());

  MultiPoly q = Scalar(3) * kQ1.to_poly() - Scalar(5) * kQ2.to_poly();
  auto two = ideal_membership_power(q, kQ1, kQ2, 1);
  ASSERT_TRUE(two);
  EXPECT_EQ(two->first, MultiPoly::constant(4, Scalar(3)));
  EXPECT_EQ(two->second, MultiPoly::constant(4, Scalar(-5)));

  MultiPoly xyzw = P("x*y*z*w");
  auto three = ideal_membership_power(xyzw, kQ1, kQ2, 1);
  ASSERT_TRUE(three);
  EXPECT_TRUE((xyzw - three->first * kQ1.to_poly() - three->second * kQ2.to_poly()).is_zero());

  EXPECT_FALSE(ideal_membership_power(P("x*w"), kQ1, kQ2, 1));
}

TEST(IdealMembershipPower, NeedsSecondPower) {
  QuadraticForm q1 = Q("x^2"), q2 = Q("y^2");
  EXPECT_FALSE(ideal_membership_power(P("x*y"), q1, q2, 1));
  auto sq = ideal_membership_power(P("x*y"), q1, q2, 2);
  ASSERT_TRUE(sq);
  EXPECT_TRUE((P("x^2*y^2") - sq->first * q1.to_poly() - sq->second * q2.to_poly()).is_zero());

  auto v = radical_member(P("x*y"), q1, q2);
  expect_member_certificate(P("x*y"), q1, q2, v);
  EXPECT_EQ(v.k, 2u);
}

TEST(FalsifyOnPlane, Examples) {
  Rng rng(21);
  int found = 0;
  for (int trial = 0; trial < 10; ++trial) {
    Plane pl = random_plane(rng, 4);
    auto out = falsify_on_plane(P("x*w"), kQ1, kQ2, pl);
    if (out.evidence) {
      ++found;
      EXPECT_TRUE(verify_nonmember(P("x*w"), kQ1, kQ2, *out.evidence));
    }
    EXPECT_FALSE(falsify_on_plane(kQ1.to_poly(), kQ1, kQ2, pl).evidence);
    EXPECT_FALSE(falsify_on_plane(P("x*y*z*w"), kQ1, kQ2, pl).evidence);
  }
  EXPECT_GT(found, 5);
}

TEST(RadicalMember, IntroFamily) {
  auto v3 = radical_member(P("x*w"), kQ1, kQ2);
  EXPECT_EQ(v3.outcome, Outcome::NonMember);
  ASSERT_TRUE(v3.evidence);
  EXPECT_TRUE(verify_nonmember(P("x*w"), kQ1, kQ2, *v3.evidence));

  auto v4 = radical_member(P("y*z"), kQ1, kQ2);
  EXPECT_EQ(v4.outcome, Outcome::NonMember);

  auto v34 = radical_member(P("x*y*z*w"), kQ1, kQ2);
  expect_member_certificate(P("x*y*z*w"), kQ1, kQ2, v34);
  EXPECT_EQ(v34.k, 1u);

  auto v2 = radical_member(kQ2.to_poly(), kQ1, kQ2);
  expect_member_certificate(kQ2.to_poly(), kQ1, kQ2, v2);
  EXPECT_EQ(v2.k, 1u);
  EXPECT_TRUE(v2.cofactor_a.is_zero());
  EXPECT_EQ(v2.cofactor_b, MultiPoly::constant(4, Scalar(1)));
}

TEST(RadicalMember, RejectsProportionalGenerators) {
  EXPECT_THROW(radical_member(P("x*w"), kQ1, Scalar(2) * kQ1), PreconditionViolation);
  EXPECT_THROW(radical_member(P("x*w"), kQ1, QuadraticForm(4)), PreconditionViolation);
}

TEST(RadicalMember, DeterministicGivenSeed) {
  MembershipBudget b{4, 20, 77};
  auto a = radical_member(P("x*w"), kQ1, kQ2, b);
  auto c = radical_member(P("x*w"), kQ1, kQ2, b);
  EXPECT_EQ(a.outcome, c.outcome);
  ASSERT_TRUE(a.evidence && c.evidence);
  EXPECT_EQ(a.evidence->plane.p0, c.evidence->plane.p0);
  EXPECT_EQ(a.evidence->factor, c.evidence->factor);
}

TEST(RadicalMember, SpanCaseImpliesMemberWithKOne) {
  Rng rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 3 + trial % 2;
    QuadraticForm q1 = random_quadratic(rng, n, 4), q2 = random_quadratic(rng, n, 4, trial % 2 == 0);
    if (oracle::bareiss_rank({q1.coeff_vector(), q2.coeff_vector()}) < 2) continue;
    QuadraticForm q = Scalar(rng.small(5, true)) * q1 + Scalar(rng.small(5)) * q2;
    if (q.is_zero()) continue;
    ASSERT_TRUE(span_case(q, q1, q2));
    auto v = radical_member(q.to_poly(), q1, q2);
    expect_member_certificate(q.to_poly(), q1, q2, v);
    EXPECT_EQ(v.k, 1u);
  }
}

TEST(RadicalMember, SwapAndShiftInvariance) {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 3 + trial % 2;
    QuadraticForm q1 = random_quadratic(rng, n, 3), q2 = random_quadratic(rng, n, 3);
    if (oracle::bareiss_rank({q1.coeff_vector(), q2.coeff_vector()}) < 2) continue;
    // alternate members (products in the ideal) and generic forms
    MultiPoly q = trial % 2 ? (q1.to_poly() * random_linear(rng, n, 2).to_poly() * random_linear(rng, n, 2).to_poly() +
                               q2.to_poly() * random_quadratic(rng, n, 2).to_poly())
                            : random_quadratic(rng, n, 3).to_poly();
    MembershipBudget b{3, 20, std::uint64_t(trial)};
    Outcome base = radical_member(q, q1, q2, b).outcome;
    Outcome swapped = radical_member(q, q2, q1, b).outcome;
    Scalar alpha = rng.small(4, true);
    Outcome shifted = radical_member(q, q1, q2 - alpha * q1, b).outcome;
    if (base != Outcome::Unknown && swapped != Outcome::Unknown) EXPECT_EQ(base, swapped);
    if (base != Outcome::Unknown && shifted != Outcome::Unknown) EXPECT_EQ(base, shifted);
    EXPECT_EQ(base, trial % 2 ? Outcome::Member : Outcome::NonMember) << "trial " << trial;
  }
}

TEST(RadicalMember, ConstructedNonMembersAreFalsified) {
  Rng rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = constructed_nonmember(rng, 3 + trial % 2);
    ASSERT_TRUE(oracle::eval_quadratic(c.q1, c.p).is_zero());
    ASSERT_TRUE(oracle::eval_quadratic(c.q2, c.p).is_zero());
    MembershipBudget b{2, 50, std::uint64_t(trial)};
    auto v = radical_member(c.q.to_poly(), c.q1, c.q2, b);
    ASSERT_EQ(v.outcome, Outcome::NonMember) << "trial " << trial;
    EXPECT_TRUE(verify_nonmember(c.q.to_poly(), c.q1, c.q2, *v.evidence));
  }
}

TEST(VerifyNonmember, RejectsTamperedEvidence) {
  auto v = radical_member(P("x*w"), kQ1, kQ2);
  ASSERT_TRUE(v.evidence);
  // same evidence does not certify a genuine member
  EXPECT_FALSE(verify_nonmember(P("x*y*z*w"), kQ1, kQ2, *v.evidence));
  EXPECT_FALSE(verify_nonmember(kQ1.to_poly(), kQ1, kQ2, *v.evidence));
}
