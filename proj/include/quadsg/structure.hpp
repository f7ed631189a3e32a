#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "quadsg/membership.hpp"
#include "quadsg/quadratic_form.hpp"
#include "quadsg/unipoly.hpp"

namespace quadsg {

struct SpanWitness {
  Scalar alpha, beta;  // Q = alpha Q1 + beta Q2
};

struct PencilWitness {
  /// With explicit roots: alpha Q1 + beta Q2 = c l^2. Otherwise `defining`
  /// is a polynomial in alpha (beta = 1) whose roots give the squares.
  bool explicit_root = true;
  Scalar alpha, beta, c;
  LinearForm l;
  DensePoly defining;
};

struct Codim2Witness {
  LinearForm l1, l2;
};

using CaseWitness = std::variant<SpanWitness, PencilWitness, Codim2Witness>;
const char* case_name(const CaseWitness& w);

std::optional<SpanWitness> span_case(const QuadraticForm& q, const QuadraticForm& q1, const QuadraticForm& q2);
std::optional<PencilWitness> pencil_square(const QuadraticForm& q1, const QuadraticForm& q2);
bool verify_case3(const QuadraticForm& q, const QuadraticForm& q1, const QuadraticForm& q2, const LinearForm& l1,
                  const LinearForm& l2);

enum class SearchStatus { Found, None, Unknown };
const char* search_status_name(SearchStatus s);

struct Case3Result {
  SearchStatus status = SearchStatus::None;
  std::optional<Codim2Witness> witness;
};
Case3Result case3_witness_search(const QuadraticForm& q, const QuadraticForm& q1, const QuadraticForm& q2);

/// Exact re-check of any witness against its defining identity.
bool verify_witness(const CaseWitness& w, const QuadraticForm& q, const QuadraticForm& q1, const QuadraticForm& q2);

struct Classification {
  std::vector<CaseWitness> witnesses;  // order: Span, PencilSquare, Codim2
  SearchStatus case3 = SearchStatus::None;
  std::optional<Outcome> membership;  // computed only when nothing was found
  bool incomplete = false;            // Member, no witness, case-3 search Unknown
};
Classification classify(const QuadraticForm& q, const QuadraticForm& q1, const QuadraticForm& q2,
                        const MembershipBudget& budget = {});

struct GeneratedCase {
  int kind = 1;
  QuadraticForm q, q1, q2;
  // planted data: case 1 (alpha, beta); case 2 (alpha, beta, a, b); case 3 (l1, l2)
  Scalar alpha, beta;
  LinearForm a, b, l1, l2;
};
GeneratedCase gen_case(int kind, std::size_t nvars, std::uint64_t seed);

}  // namespace quadsg
