#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadsg/membership.hpp"
#include "quadsg/quadratic_form.hpp"
#include "quadsg/structure.hpp"

namespace quadsg {

using Vec = std::vector<Scalar>;

struct PointSet {
  std::vector<Vec> points;
  int color = 0;  // 0 = uncoloured, else 1..3
};

/// Throws PreconditionViolation on a zero vector or a dependent pair.
void require_pairwise_independent(const std::vector<Vec>& points, const std::string& who);

struct SGReport {
  Rational delta_hat;
  std::size_t dim = 0;
  std::vector<std::size_t> counts;  // per point: partners j whose span holds a third point
  std::vector<std::array<std::size_t, 3>> witness_triples;  // first (i, j, k) per point
};
/// delta_hat = min_i counts[i] / m.
SGReport check_delta_sg(const PointSet& ps);

struct PointRef {
  int set = 0;  // 1..3
  std::size_t index = 0;
  friend bool operator==(const PointRef&, const PointRef&) = default;
};
std::string point_ref_str(const PointRef& r);

struct EKReport {
  bool holds = false;
  std::size_t dim = 0;
  std::optional<std::pair<PointRef, PointRef>> violating_pair;
};
EKReport check_ek(const PointSet& t1, const PointSet& t2, const PointSet& t3);

struct DeltaEKReport {
  Rational delta_hat;
  PointRef worst;  // a point attaining the minimum
  int worst_target = 0;
};
/// Largest delta such that the triple is a delta-EK configuration; fractions
/// are counted against |T_j|.
DeltaEKReport check_delta_ek(const PointSet& t1, const PointSet& t2, const PointSet& t3);

enum class Regime { Balanced, Unbalanced };
const char* regime_name(Regime r);

struct EKOptions {
  Rational delta{1, 4};
  std::uint64_t seed = 0;
  std::vector<Vec> w;                  // basis of a pre-spanned subspace (may be empty)
  std::vector<PointRef> exceptional;   // points exempt from the delta-EK property
  Rational cover_factor{1, 100};       // large-class cutoff is cover_factor * delta^2 * m1
  unsigned regime_power = 3;           // unbalanced iff m3^regime_power <= m1
  unsigned max_sample_attempts = 8;
};

/// Documented constant: every certificate satisfies |I| <= kEkConstant / delta^3
/// (plus the number of exceptional points) when the fallback is not used.
inline constexpr long kEkConstant = 203;

struct EKCertificate {
  std::vector<PointRef> spanning_set;
  Regime regime = Regime::Balanced;
  std::size_t size_bound_claimed = 0;
  std::size_t fallback_extensions = 0;
  std::size_t greedy_steps = 0;        // unbalanced regime
  std::size_t t3_disjoint = 0;         // unbalanced regime
  unsigned sample_attempts = 0;        // balanced regime
  bool sample_accepted = false;        // balanced regime
  std::size_t span_dim = 0;            // dim span(I + W)
  std::size_t union_dim = 0;           // dim span(all points + W)
  bool spans = false;
};
EKCertificate certify_ek_span(const PointSet& t1, const PointSet& t2, const PointSet& t3, const EKOptions& opt);

// --- quadratic hypothesis checkers ---

struct QuadPairResult {
  std::size_t i = 0, j = 0;       // pair (indices into the flattened family)
  std::optional<std::size_t> k;   // witness index
  std::string via;                // "span", "pencil-factor", "radical(k=..)"
  bool undetermined = false;
};

struct CaseCensus {
  std::size_t span = 0, pencil = 0, codim2 = 0, unknown = 0;
};

enum class Hypothesis { Holds, Fails, Undetermined };
const char* hypothesis_name(Hypothesis h);

struct QuadSetReport {
  Hypothesis status = Hypothesis::Holds;
  bool hypothesis_holds = true;
  std::vector<std::pair<std::size_t, std::size_t>> missing_pairs;
  std::vector<std::pair<std::size_t, std::size_t>> undetermined_pairs;
  std::vector<QuadPairResult> pairs;
  std::size_t span_dim = 0;
  CaseCensus census;
};

/// No two forms may be proportional. With `strict`, each form must also be
/// irreducible or a square.
QuadSetReport check_quadratic_sg(const std::vector<QuadraticForm>& forms, const MembershipBudget& budget = {},
                                 bool strict = true);

struct QuadEKReport {
  QuadSetReport combined;           // pair indices refer to the flattened T1, T2, T3 list
  std::array<std::size_t, 3> set_span_dims{};
  std::array<std::size_t, 3> offsets{};
};
QuadEKReport check_quadratic_ek(const std::vector<QuadraticForm>& t1, const std::vector<QuadraticForm>& t2,
                                const std::vector<QuadraticForm>& t3, const MembershipBudget& budget = {});

// --- generators for planted families ---

/// Points s*e1 + t*e2 of `subspaces` random 2-dim subspaces of Q^dim, each set
/// split as evenly as possible across subspaces, embedded into Q^ambient by a
/// random integer matrix.
std::array<PointSet, 3> planted_ek(std::array<std::size_t, 3> sizes, std::size_t subspaces, std::size_t ambient,
                                   std::uint64_t seed, std::size_t dim = 4);

/// Points (1,0,a), (0,1,b), (1,1,c) for a, b, c in {0, ..., per_line - 1}:
/// three concurrent lines of the projective plane.
PointSet three_line_family(std::size_t per_line);

/// The 3k points (1,-z^a,0), (0,1,-z^b), (-z^c,0,1) for z = i (k = 4).
std::vector<Vec> fermat_points();

struct PencilFamily {
  QuadraticForm q1, q2;
  std::vector<Scalar> betas;
  std::vector<LinearForm> ell, b;  // F_i = q1 + ell_i^2 = betas_i q2 + b_i^2
};
PencilFamily gen_pencil_family(std::size_t nvars, std::size_t members, std::uint64_t seed, bool single_beta = false);

}  // namespace quadsg
