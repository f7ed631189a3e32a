#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace quadsg;
using th::L;
using th::P;
using th::Q;

namespace {

bool same_span(const std::vector<LinearForm>& a, const std::vector<LinearForm>& b) {
  std::vector<oracle::Vec> ra, rab;
  for (const auto& l : a) ra.push_back(l.coeffs);
  rab = ra;
  for (const auto& l : b) rab.push_back(l.coeffs);
  std::vector<oracle::Vec> rb;
  for (const auto& l : b) rb.push_back(l.coeffs);
  std::size_t r = oracle::bareiss_rank(ra);
  return r == oracle::bareiss_rank(rb) && r == oracle::bareiss_rank(rab);
}

bool in_span(const LinearForm& l, const std::vector<LinearForm>& basis) {
  std::vector<oracle::Vec> rows;
  for (const auto& b : basis) rows.push_back(b.coeffs);
  std::size_t r = oracle::bareiss_rank(rows);
  rows.push_back(l.coeffs);
  return oracle::bareiss_rank(rows) == r;
}

// q in (l1, l2) decided by rank: q must be a combination of the products x_k l1, x_k l2
bool in_ideal_by_rank(const QuadraticForm& q, const LinearForm& l1, const LinearForm& l2) {
  const std::size_t n = q.nvars();
  std::vector<oracle::Vec> rows;
  for (std::size_t k = 0; k < n; ++k) {
    rows.push_back(QuadraticForm::product(LinearForm::unit(n, k), l1).coeff_vector());
    rows.push_back(QuadraticForm::product(LinearForm::unit(n, k), l2).coeff_vector());
  }
  std::size_t r = oracle::bareiss_rank(rows);
  rows.push_back(q.coeff_vector());
  return oracle::bareiss_rank(rows) == r;
}

QuadraticForm sum_of_products(Rng& rng, std::size_t n, std::size_t r, bool gaussian) {
  std::vector<std::pair<LinearForm, LinearForm>> t;
  for (std::size_t k = 0; k < r; ++k) t.emplace_back(random_linear(rng, n, 3, gaussian), random_linear(rng, n, 3, gaussian));
  return expand(t, n);
}

}  // namespace

TEST(RankS, Examples) {
  EXPECT_EQ(rank_s(Q("x*y + z*w")), 2u);
  EXPECT_EQ(rank_s(Q("(x + 2y)^2")), 1u);
  EXPECT_EQ(rank_s(Q("x^2 + y^2 + z^2")), 2u);
  EXPECT_EQ(rank_s(Q("x*y")), 1u);
  EXPECT_EQ(rank_s(QuadraticForm(4)), 0u);
}

TEST(RankS, InvariantUnderChangeOfVariables) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + trial % 4;
    QuadraticForm q = sum_of_products(rng, n, 1 + trial % 3, trial % 2 == 0);
    Matrix a = random_invertible(rng, n);
    QuadraticForm qa = q.compose(a);
    EXPECT_EQ(rank_s(qa), rank_s(q));
    EXPECT_EQ(rank_s(q), oracle::rank_s_lower_bound(q));
  }
}

TEST(GradientSpan, Examples) {
  EXPECT_TRUE(same_span(gradient_span(Q("x*y + z*w")), {L("x"), L("y"), L("z"), L("w")}));
  EXPECT_TRUE(same_span(gradient_span(Q("(x + y)^2")), {L("x + y")}));
  EXPECT_TRUE(same_span(gradient_span(Q("x^2 + y*z")), {L("x"), L("y"), L("z")}));
  EXPECT_THROW(gradient_span(QuadraticForm(3)), DegenerateInput);
}

TEST(GradientSpan, ContainsEveryRepresentationForm) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 3 + trial % 3;
    std::vector<std::pair<LinearForm, LinearForm>> t;
    std::size_t r = 1 + trial % 2;
    for (std::size_t k = 0; k < r; ++k) t.emplace_back(random_linear(rng, n, 4), random_linear(rng, n, 4, true));
    QuadraticForm q = expand(t, n);
    if (q.is_zero()) continue;
    auto span = gradient_span(q);
    std::vector<oracle::Vec> gram_rows;
    for (std::size_t i = 0; i < n; ++i) gram_rows.push_back(q.gram().row_vector(i));
    EXPECT_EQ(span.size(), oracle::bareiss_rank(gram_rows));
    if (rank_s(q) == r) {
      // minimal representation: every factor lies in the span
      for (const auto& [a, b] : t) {
        EXPECT_TRUE(in_span(a, span));
        EXPECT_TRUE(in_span(b, span));
      }
    }
  }
}

TEST(IsSquare, Examples) {
  auto s = is_square(Q("x^2 + 2x*y + y^2"));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->c, Scalar(1));
  EXPECT_EQ(s->l, L("x + y"));
  EXPECT_FALSE(is_square(Q("x*y")));
  auto t = is_square(Q("-4z^2"));
  ASSERT_TRUE(t);
  EXPECT_EQ(t->c, Scalar(-4));
  EXPECT_EQ(t->l, L("z"));
  auto zero = is_square(QuadraticForm(4));
  ASSERT_TRUE(zero);
  EXPECT_TRUE(zero->zero);
}

TEST(IsSquare, SucceedsExactlyForRankAtMostOne) {
  Rng rng(13);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 2 + trial % 3;
    QuadraticForm q = trial % 2 ? Scalar(rng.small(5, true)) * QuadraticForm::square(random_linear(rng, n, 4, true))
                                : sum_of_products(rng, n, 1, trial % 3 == 0);
    if (q.is_zero()) continue;
    auto s = is_square(q);
    EXPECT_EQ(s.has_value(), rank_s(q) <= 1 && gram_rank(q) <= 1);
    if (s) EXPECT_TRUE((q - s->c * QuadraticForm::square(s->l)).is_zero());
  }
}

TEST(IsIrreducible, Examples) {
  EXPECT_FALSE(is_irreducible(Q("x*y")));
  EXPECT_TRUE(is_irreducible(Q("x*y + z*w")));
  EXPECT_TRUE(is_irreducible(Q("x^2 + y*z")));
  EXPECT_FALSE(is_irreducible(Q("(x - 3z)^2")));
  EXPECT_THROW(is_irreducible(QuadraticForm(2)), DegenerateInput);
}

TEST(QuadResultant, Examples) {
  EXPECT_EQ(quad_resultant(P("x^2 + y*z"), P("x*y - z"), 0), P("z^2 + y^3*z"));
  EXPECT_TRUE(quad_resultant(P("x^2"), P("x*y"), 0).is_zero());
  EXPECT_TRUE(quad_resultant(P("x^2 - y^2"), P("x - y"), 0).is_zero());
  EXPECT_THROW(quad_resultant(P("y^2"), P("z*w"), 0), DegenerateInput);
}

TEST(QuadResultant, NormalFormIdentity) {
  Rng rng(14);
  const std::size_t n = 4;
  auto rest = [&](long bound) {
    // a polynomial free of x_0
    LinearForm l = random_linear(rng, n, bound, true);
    l.coeffs[0] = 0;
    return l;
  };
  for (int trial = 0; trial < 100; ++trial) {
    LinearForm b2 = rest(4);
    // A quadratic in the other variables, Q1' too
    MultiPoly a = rest(3).to_poly() * rest(3).to_poly();
    MultiPoly q1p = rest(3).to_poly() * rest(3).to_poly() + rest(2).to_poly() * rest(2).to_poly();
    MultiPoly x = MultiPoly::variable(n, 0);
    MultiPoly q1 = x * x + q1p;
    MultiPoly q2 = x * b2.to_poly() - a;
    MultiPoly expected = a * a + b2.to_poly() * b2.to_poly() * q1p;
    MultiPoly got = quad_resultant(q1, q2, 0);
    ASSERT_EQ(got, expected) << "trial " << trial;
    EXPECT_TRUE(oracle::agree_at_random_points(got, expected, rng, 2));
  }
}

TEST(RestrictModPair, Examples) {
  EXPECT_TRUE(restrict_mod_pair(P("x*y"), L("x"), L("z")).is_zero());
  EXPECT_TRUE(restrict_mod_pair(P("y*z"), L("x"), L("z")).is_zero());
  EXPECT_EQ(restrict_mod_pair(P("y^2"), L("x"), L("z")), P("y^2"));
  EXPECT_THROW(restrict_mod_pair(P("y^2"), L("x + y"), L("2x + 2y")), PreconditionViolation);
}

TEST(RestrictModPair, ZeroExactlyOnTheIdeal) {
  Rng rng(15);
  int members = 0, others = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 3 + trial % 2;
    LinearForm l1 = random_linear(rng, n, 3), l2 = random_linear(rng, n, 3, trial % 3 == 0);
    if (oracle::bareiss_rank({l1.coeffs, l2.coeffs}) < 2) continue;
    QuadraticForm q;
    if (trial % 2 == 0) {
      q = QuadraticForm::product(l1, random_linear(rng, n, 3)) + QuadraticForm::product(l2, random_linear(rng, n, 3));
    } else {
      q = sum_of_products(rng, n, 1, false);
    }
    bool zero = restrict_mod_pair(q.to_poly(), l1, l2).is_zero();
    bool member = in_ideal_by_rank(q, l1, l2);
    EXPECT_EQ(zero, member) << q.str();
    (member ? members : others)++;
  }
  EXPECT_GT(members, 20);
  EXPECT_GT(others, 20);
}

TEST(RestrictModLinear, ZeroIffDivisible) {
  EXPECT_TRUE(restrict_mod_linear(Q("x*y + x*z"), L("x")).is_zero());
  EXPECT_TRUE(restrict_mod_linear(Q("(x - y)*(z + w)"), L("2x - 2y")).is_zero());
  EXPECT_FALSE(restrict_mod_linear(Q("x*y + z*w"), L("x")).is_zero());
}

TEST(RandomProjection, Examples) {
  {
    auto pm = random_projection({L("x")}, 7);
    ASSERT_EQ(pm.multipliers.size(), 1u);
    Scalar c(pm.multipliers[0]);
    MultiPoly z = MultiPoly::variable(5, pm.z()), y = MultiPoly::variable(5, 1);
    EXPECT_EQ(pm.apply(P("x*y")), c * (z * y));
  }
  {
    auto pm = random_projection({L("x"), L("y")}, 8);
    ASSERT_EQ(pm.multipliers.size(), 2u);
    Scalar c = Scalar(pm.multipliers[0]) * Scalar(pm.multipliers[1]);
    MultiPoly z = MultiPoly::variable(5, pm.z());
    EXPECT_EQ(pm.apply(P("x*y")), c * (z * z));
  }
  {
    QuadraticForm q = Q("x^2 + y*z");
    auto pm = random_projection(gradient_span(q), 9);
    MultiPoly img = pm.apply(q.to_poly());
    ASSERT_FALSE(img.is_zero());
    ASSERT_EQ(img.terms().size(), 1u);
    EXPECT_EQ(img.terms().begin()->first, Monomial::unit(5, pm.z(), 2));
  }
  EXPECT_THROW(random_projection({L("x + y"), L("3x + 3y")}, 1), PreconditionViolation);
}

TEST(RandomProjection, DeterministicAndNonzeroMultipliers) {
  Rng rng(16);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<LinearForm> v{random_linear(rng, 5, 4), random_linear(rng, 5, 4)};
    if (oracle::bareiss_rank({v[0].coeffs, v[1].coeffs}) < 2) continue;
    auto a = random_projection(v, 100 + trial), b = random_projection(v, 100 + trial);
    EXPECT_EQ(a.multipliers, b.multipliers);
    for (const auto& m : a.multipliers) EXPECT_NE(m, 0);
    EXPECT_EQ(a.seed, std::uint64_t(100 + trial));
  }
}

TEST(RandomProjection, KeepsPairsIndependent) {
  Rng rng(17);
  const std::size_t n = 5;
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t d = 1 + trial % 3;
    std::vector<LinearForm> v;
    for (std::size_t k = 0; k < d; ++k) v.push_back(random_linear(rng, n, 3));
    std::vector<oracle::Vec> vr;
    for (const auto& l : v) vr.push_back(l.coeffs);
    if (oracle::bareiss_rank(vr) < d) continue;
    // q1 in the ideal of V half the time, q2 never
    QuadraticForm q1 = trial % 2 ? QuadraticForm::product(v[0], random_linear(rng, n, 3)) : random_quadratic(rng, n, 3);
    QuadraticForm q2 = random_quadratic(rng, n, 3, trial % 5 == 0);
    if (oracle::bareiss_rank({q1.coeff_vector(), q2.coeff_vector()}) < 2) continue;
    auto pm = random_projection(v, 500 + trial);
    MultiPoly p1 = pm.apply(q1.to_poly()), p2 = pm.apply(q2.to_poly());
    auto qp1 = QuadraticForm::from_poly(p1), qp2 = QuadraticForm::from_poly(p2);
    EXPECT_EQ(oracle::bareiss_rank({qp1.coeff_vector(), qp2.coeff_vector()}), 2u) << "trial " << trial;
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(RandomProjection, IdealMembersBecomeMultiplesOfZ) {
  Rng rng(18);
  const std::size_t n = 4;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<LinearForm> v{random_linear(rng, n, 3), random_linear(rng, n, 3)};
    if (oracle::bareiss_rank({v[0].coeffs, v[1].coeffs}) < 2) continue;
    QuadraticForm f = QuadraticForm::product(v[0], random_linear(rng, n, 3, true)) +
                      QuadraticForm::product(v[1], random_linear(rng, n, 3));
    auto pm = random_projection(v, 900 + trial);
    auto rho = projection_residue(f, pm);
    ASSERT_TRUE(rho);
    MultiPoly z = MultiPoly::variable(n + 1, pm.z());
    EXPECT_EQ(pm.apply(f.to_poly()), z * rho->to_poly());
    // a generic form is not in the ideal and keeps a z-free part
    QuadraticForm g = random_quadratic(rng, n, 3);
    if (!in_ideal_by_rank(g, v[0], v[1])) EXPECT_FALSE(projection_residue(g, pm));
  }
}

TEST(MinimalRepresentation, Examples) {
  for (const char* text : {"x*y + z*w", "x^2 + y^2 + z^2", "(x + 2y)^2", "x^2 + y*z", "x*y"}) {
    QuadraticForm q = Q(text);
    auto rep = minimal_representation(q);
    ASSERT_TRUE(rep.complete) << text;
    EXPECT_EQ(rep.terms.size(), rank_s(q)) << text;
    EXPECT_EQ(expand(rep.terms, 4), q) << text;
    auto span = gradient_span(q);
    for (const auto& [a, b] : rep.terms) {
      EXPECT_TRUE(in_span(a, span));
      EXPECT_TRUE(in_span(b, span));
    }
  }
}

TEST(MinimalRepresentation, IncompleteCarriesSpanCertificate) {
  // either outcome is allowed; each has its own contract
  QuadraticForm q = Q("x^2 + 2y^2 + 3z^2 + 5w^2");
  auto rep = minimal_representation(q);
  if (rep.complete) {
    EXPECT_EQ(expand(rep.terms, 4), q);
    EXPECT_EQ(rep.terms.size(), 2u);
  } else {
    EXPECT_TRUE(rep.terms.empty());
    EXPECT_TRUE(same_span(rep.span_certificate, gradient_span(q)));
  }
}

TEST(Factor, RankTwoSplits) {
  auto f = factor_quadratic(Q("x^2 - 4y^2"));
  ASSERT_TRUE(f);
  EXPECT_EQ(QuadraticForm::product(f->first, f->second), Q("x^2 - 4y^2"));
  auto g = factor_quadratic(Q("x^2 + y^2"));
  ASSERT_TRUE(g);  // (x + iy)(x - iy)
  EXPECT_EQ(QuadraticForm::product(g->first, g->second), Q("x^2 + y^2"));
  EXPECT_FALSE(factor_quadratic(Q("x^2 + y*z")));
}
