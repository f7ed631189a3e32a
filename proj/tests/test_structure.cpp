#include <gtest/gtest.h>

#include <set>
#include <string>

#include "helpers.hpp"
#include "oracles.hpp"
#include "quadsg/structure.hpp"

using namespace quadsg;
using th::L;
using th::Q;

namespace {

// a codimension-2 triple and a mixed version of it
const QuadraticForm kQp = Q("y*z"), kQp1 = Q("x*y"), kQp2 = Q("z*(x + z)");
const QuadraticForm kMixQ1 = kQp1 + kQp2, kMixQ2 = kQp1 - kQp2, kMixQ = kQp + kQp1 + kQp2;

std::set<std::string> labels(const Classification& c) {
  std::set<std::string> out;
  for (const auto& w : c.witnesses) out.insert(case_name(w));
  return out;
}

bool has_case(const Classification& c, const char* name) { return labels(c).count(name) > 0; }

std::size_t span_dim(const std::vector<LinearForm>& ls) {
  std::vector<oracle::Vec> rows;
  for (const auto& l : ls) rows.push_back(l.coeffs);
  return oracle::bareiss_rank(rows);
}

}  // namespace

TEST(SpanCase, Examples) {
  QuadraticForm q1 = Q("x*y + z*w"), q2 = Q("x*y - z*w");
  auto a = span_case(Scalar(2) * q1 + Scalar(3) * q2, q1, q2);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->alpha, Scalar(2));
  EXPECT_EQ(a->beta, Scalar(3));
  EXPECT_FALSE(span_case(Q("x*w"), q1, q2));
  auto b = span_case(q1, q1, q2);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->alpha, Scalar(1));
  EXPECT_EQ(b->beta, Scalar(0));
  EXPECT_THROW(span_case(q1, q1, Scalar(-2) * q1), PreconditionViolation);
}

TEST(PencilSquare, Examples) {
  {
    auto p = pencil_square(Q("x*y"), Q("x*y + z^2"));
    ASSERT_TRUE(p);
    ASSERT_TRUE(p->explicit_root);
    // alpha Q1 + beta Q2 is proportional to z^2
    QuadraticForm comb = p->alpha * Q("x*y") + p->beta * Q("x*y + z^2");
    EXPECT_EQ(comb, p->c * QuadraticForm::square(p->l));
    EXPECT_EQ(p->l, L("z"));
    EXPECT_EQ(p->alpha, -p->beta);
  }
  {
    QuadraticForm q1 = Q("x^2 + y^2"), q2 = Q("x*y");
    auto p = pencil_square(q1, q2);
    ASSERT_TRUE(p);
    ASSERT_TRUE(p->explicit_root);
    EXPECT_TRUE(p->beta == Scalar(2) * p->alpha || p->beta == Scalar(-2) * p->alpha);
    EXPECT_TRUE(p->l == L("x + y") || p->l == L("x - y"));
    EXPECT_EQ(p->alpha * q1 + p->beta * q2, p->c * QuadraticForm::square(p->l));
  }
  EXPECT_FALSE(pencil_square(Q("x*y + z*w"), Q("x*y - z*w")));
  EXPECT_THROW(pencil_square(Q("x*y"), Q("3x*y")), PreconditionViolation);
}

TEST(PencilSquare, IrrationalRootsGiveDefiningPolynomial) {
  // det(alpha M1 + M2) = 2 - alpha^2/4, so alpha = +-2 sqrt(2)
  QuadraticForm q1 = Q("x*y"), q2 = Q("x^2 + 2y^2");
  auto p = pencil_square(q1, q2);
  ASSERT_TRUE(p);
  EXPECT_FALSE(p->explicit_root);
  EXPECT_GE(p->defining.degree(), 1);
  CaseWitness w = *p;
  EXPECT_TRUE(verify_witness(w, q1, q1, q2));
}

TEST(PencilSquare, SymmetricUnderSwapAndScaling) {
  Rng rng(31);
  int found = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + trial % 2;
    QuadraticForm q1 = random_quadratic(rng, n, 3);
    QuadraticForm q2 = trial % 2 ? Scalar(rng.small(3)) * q1 + QuadraticForm::square(random_linear(rng, n, 3, true))
                                 : random_quadratic(rng, n, 3);
    if (oracle::bareiss_rank({q1.coeff_vector(), q2.coeff_vector()}) < 2) continue;
    bool base = pencil_square(q1, q2).has_value();
    EXPECT_EQ(base, pencil_square(q2, q1).has_value());
    Scalar s1 = rng.small(5, true), s2 = rng.small(5);
    if (s1.is_zero() || s2.is_zero()) continue;
    EXPECT_EQ(base, pencil_square(s1 * q1, s2 * q2).has_value());
    found += base;
  }
  EXPECT_GT(found, 20);
}

TEST(VerifyCase3, Examples) {
  EXPECT_TRUE(verify_case3(kQp, kQp1, kQp2, L("x"), L("z")));
  EXPECT_FALSE(verify_case3(kQp, kQp1, kQp2, L("x"), L("y")));
  EXPECT_TRUE(verify_case3(kMixQ, kMixQ1, kMixQ2, L("x"), L("z")));
  EXPECT_THROW(verify_case3(kQp, kQp1, kQp2, L("x"), L("2x")), PreconditionViolation);
}

TEST(Case3Search, Examples) {
  // both (x, z) and (y, z) work for the mixed triple
  auto r = case3_witness_search(kMixQ, kMixQ1, kMixQ2);
  ASSERT_EQ(r.status, SearchStatus::Found);
  EXPECT_TRUE(verify_case3(kMixQ, kMixQ1, kMixQ2, r.witness->l1, r.witness->l2));
  EXPECT_TRUE(span_dim({r.witness->l1, r.witness->l2, L("x"), L("z")}) == 2 ||
              span_dim({r.witness->l1, r.witness->l2, L("y"), L("z")}) == 2);
  EXPECT_TRUE(verify_case3(kMixQ, kMixQ1, kMixQ2, L("y"), L("z")));

  QuadraticForm xy = Q("x*y");
  auto t = case3_witness_search(xy, xy, xy);
  ASSERT_EQ(t.status, SearchStatus::Found);
  EXPECT_TRUE(verify_case3(xy, xy, xy, t.witness->l1, t.witness->l2));

  const std::vector<std::string> five{"x", "y", "z", "w", "u"};
  QuadraticForm full = Q("x^2 + y^2 + z^2 + w^2 + u^2", five);
  ASSERT_EQ(rank_s(full), 3u);
  EXPECT_EQ(case3_witness_search(Q("x*y", five), full, Q("z*w", five)).status, SearchStatus::None);
}

TEST(Case3Search, FindsRulingsOfRankFourQuadric) {
  // Q1 = xy + zw contains the plane {x = z = 0}; Q2 and Q vanish on it too
  QuadraticForm q1 = Q("x*y + z*w"), q2 = Q("x*w + z*y + x^2"), q = Q("x*(x + y) + z*(w - y)");
  auto r = case3_witness_search(q, q1, q2);
  ASSERT_EQ(r.status, SearchStatus::Found);
  EXPECT_TRUE(verify_case3(q, q1, q2, r.witness->l1, r.witness->l2));
}

TEST(Classify, Examples) {
  QuadraticForm q1 = Q("x*y + z*w"), q2 = Q("x*y - z*w");
  auto c = classify(q1 + q2, q1, q2);
  ASSERT_FALSE(c.witnesses.empty());
  ASSERT_TRUE(std::holds_alternative<SpanWitness>(c.witnesses.front()));
  EXPECT_EQ(std::get<SpanWitness>(c.witnesses.front()).alpha, Scalar(1));
  EXPECT_EQ(std::get<SpanWitness>(c.witnesses.front()).beta, Scalar(1));

  auto m = classify(kMixQ, kMixQ1, kMixQ2);
  EXPECT_TRUE(has_case(m, "Codim2"));
  EXPECT_FALSE(has_case(m, "Span"));

  // xw and the intro pair all vanish on x = z = 0 even though xw is not in the radical
  auto intro = classify(Q("x*w"), q1, q2);
  EXPECT_EQ(labels(intro), std::set<std::string>{"Codim2"});
  EXPECT_FALSE(intro.membership);

  const std::vector<std::string> five{"x", "y", "z", "w", "u"};
  auto none = classify(Q("x*w", five), Q("x^2 + y^2 + z^2 + w^2 + u^2", five), Q("x*y + z*u", five));
  EXPECT_TRUE(none.witnesses.empty());
  EXPECT_EQ(none.case3, SearchStatus::None);
  ASSERT_TRUE(none.membership);
  EXPECT_EQ(*none.membership, Outcome::NonMember);
  EXPECT_FALSE(none.incomplete);
}

TEST(Classify, WitnessesAreCanonicallyOrdered) {
  // all three cases at once: the forms also lie in (x, z)
  QuadraticForm q1 = Q("x*y"), q2 = Q("x*y + z^2");
  auto c = classify(q1 + q2, q1, q2);
  std::vector<std::string> names;
  for (const auto& w : c.witnesses) names.push_back(case_name(w));
  ASSERT_EQ(names.size(), 3u);
  EXPECT_EQ(names[0], "Span");
  EXPECT_EQ(names[1], "PencilSquare");
  EXPECT_EQ(names[2], "Codim2");
  for (const auto& w : c.witnesses) EXPECT_TRUE(verify_witness(w, q1 + q2, q1, q2));
}

TEST(GenCase, EachConstructionIsRecognised) {
  for (int kind = 1; kind <= 3; ++kind)
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      auto g = gen_case(kind, 4 + seed % 2, seed);
      auto c = classify(g.q, g.q1, g.q2);
      const char* want = kind == 1 ? "Span" : kind == 2 ? "PencilSquare" : "Codim2";
      EXPECT_TRUE(has_case(c, want)) << "kind " << kind << " seed " << seed;
      for (const auto& w : c.witnesses) EXPECT_TRUE(verify_witness(w, g.q, g.q1, g.q2));
      if (kind == 1) EXPECT_EQ(g.q, g.alpha * g.q1 + g.beta * g.q2);
      if (kind == 2) {
        EXPECT_EQ(g.q2, g.alpha * g.q1 + QuadraticForm::square(g.b));
        EXPECT_EQ(g.q, g.beta * g.q1 + QuadraticForm::product(g.b, g.a));
        auto v = radical_member(g.q.to_poly(), g.q1, g.q2);
        EXPECT_EQ(v.outcome, Outcome::Member);
      }
      if (kind == 3) EXPECT_TRUE(verify_case3(g.q, g.q1, g.q2, g.l1, g.l2));
    }
  EXPECT_THROW(gen_case(1, 3, 0), PreconditionViolation);
  EXPECT_THROW(gen_case(4, 4, 0), PreconditionViolation);
}

TEST(Classify, BasisInvariance) {
  Rng rng(32);
  for (int trial = 0; trial < 18; ++trial) {
    auto g = gen_case(1 + trial % 3, 4, 40 + trial);
    Matrix a = random_invertible(rng, 4, 2);
    auto base = labels(classify(g.q, g.q1, g.q2));
    auto moved = labels(classify(g.q.compose(a), g.q1.compose(a), g.q2.compose(a)));
    EXPECT_EQ(base, moved) << "trial " << trial;
  }
}

TEST(Classify, Codim2ImpliesSmallRank) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = gen_case(1 + seed % 3, 4, 100 + seed);
    auto c = classify(g.q, g.q1, g.q2);
    if (!has_case(c, "Codim2")) continue;
    EXPECT_LE(rank_s(g.q), 2u);
    EXPECT_LE(rank_s(g.q1), 2u);
    EXPECT_LE(rank_s(g.q2), 2u);
  }
}

TEST(Classify, WitnessNeverMeetsNonMember) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = gen_case(1 + seed % 3, 4, 200 + seed);
    auto c = classify(g.q, g.q1, g.q2);
    if (c.witnesses.empty()) continue;
    EXPECT_NE(radical_member(g.q.to_poly(), g.q1, g.q2).outcome, Outcome::NonMember) << "seed " << seed;
  }
}
