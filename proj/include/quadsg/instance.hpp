#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "quadsg/configurations.hpp"
#include "quadsg/multipoly.hpp"
#include "quadsg/quadratic_form.hpp"

namespace quadsg {

using Json = nlohmann::json;

/// Malformed document. `where()` is a JSON path ("$.polynomials[1].terms[0]")
/// or "line L, column C" for syntax errors.
class ParseError : public PreconditionViolation {
 public:
  ParseError(const std::string& where, const std::string& what)
      : PreconditionViolation(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// A float or exponent literal where an exact value is required.
class InexactLiteral : public ParseError {
 public:
  using ParseError::ParseError;
};

inline constexpr int kInstanceVersion = 1;

struct NamedPoly {
  std::string name;
  MultiPoly poly;
  friend bool operator==(const NamedPoly&, const NamedPoly&) = default;
};

struct Instance {
  int version = kInstanceVersion;
  std::size_t nvars = 0;
  std::vector<std::string> variables;  // empty: x1..xn
  std::vector<NamedPoly> polynomials;
  std::optional<std::array<std::vector<std::string>, 3>> colored;  // polynomial names per set
  std::vector<PointSet> point_sets;
  std::vector<Vec> subspace;
  std::vector<PointRef> exceptional;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> kmax, planes;
  std::optional<Rational> delta;

  std::vector<std::string> names() const;
  const MultiPoly& poly(const std::string& name) const;
  /// Throws PreconditionViolation unless the polynomial is a quadratic form.
  QuadraticForm form(const std::string& name) const;
  std::vector<QuadraticForm> forms(const std::vector<std::string>& names) const;

  friend bool operator==(const Instance& a, const Instance& b);
};

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, const std::string& path);
Json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Json& j, std::size_t nvars, const std::string& path);

Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& inst);

Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
Instance parse_instance_file(const std::string& path);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string emit_instance(const Instance& inst);

}  // namespace quadsg
