#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's elimination, resultant or projection-hashing code.

#include <vector>

#include "quadsg/configurations.hpp"
#include "quadsg/multipoly.hpp"
#include "quadsg/quadratic_form.hpp"
#include "quadsg/random.hpp"
#include "quadsg/scalar.hpp"

namespace oracle {

using quadsg::MultiPoly;
using quadsg::QuadraticForm;
using quadsg::Rational;
using quadsg::Rng;
using quadsg::Scalar;
using Vec = std::vector<Scalar>;

/// Fraction-free (Bareiss) rank over the Gaussian integers after clearing
/// denominators row by row.
std::size_t bareiss_rank(const std::vector<Vec>& rows);

/// Permutation expansion; fine up to ~7x7.
Scalar leibniz_det(const std::vector<Vec>& m);

/// Term-by-term evaluation with repeated multiplication.
Scalar eval(const MultiPoly& p, const Vec& x);

/// x^T G x computed from the monomial coefficients of q.
Scalar eval_quadratic(const QuadraticForm& q, const Vec& x);

Vec random_point(Rng& rng, std::size_t n, long bound = 20, bool gaussian = true);

/// Schwartz-Zippel comparison at `trials` random Gaussian-integer points.
bool agree_at_random_points(const MultiPoly& a, const MultiPoly& b, Rng& rng, int trials = 8);

/// min_i #{j : some k outside {i, j} lies in span{v_i, v_j}} / m by triple enumeration.
Rational sg_delta(const std::vector<Vec>& pts);

/// Every cross pair spans a point of the third set.
bool ek_holds(const std::vector<Vec>& t1, const std::vector<Vec>& t2, const std::vector<Vec>& t3);

/// min over points and target sets of |Gamma_j(p)| / |T_j|.
Rational ek_delta(const std::vector<Vec>& t1, const std::vector<Vec>& t2, const std::vector<Vec>& t3);

/// rank [a; b; c] == 2 for pairwise independent a, b.
bool in_span_of_pair(const Vec& a, const Vec& b, const Vec& c);

/// Brute-force minimal number of product terms over Q for tiny integer forms
/// is out of reach; instead: the smallest r with 2r >= gram rank, rank by Bareiss.
std::size_t rank_s_lower_bound(const QuadraticForm& q);

}  // namespace oracle
