#include "quadsg/instance.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace quadsg {

namespace {

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string at(const std::string& path, const std::string& key) { return path + "." + key; }

void require_type(bool ok, const std::string& path, const char* expected) {
  if (!ok) throw ParseError(path, std::string("expected ") + expected);
}

void reject_unknown_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ParseError(at(path, key), "unknown key");
    }
  }
}

std::uint64_t as_unsigned(const Json& j, const std::string& path) {
  if (j.is_number_float()) throw InexactLiteral(path, "floating-point literal");
  require_type(j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0), path,
               "a non-negative integer");
  return j.get<std::uint64_t>();
}

Rational rational_from_text(const std::string& s, const std::string& path) {
  if (s.find_first_of(".eE") != std::string::npos) throw InexactLiteral(path, "inexact literal \"" + s + "\"");
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_float()) throw InexactLiteral(path, "floating-point literal");
  if (j.is_number_integer()) return rational_from_text(j.dump(), path);
  require_type(j.is_string(), path, "an exact rational string");
  return rational_from_text(j.get<std::string>(), path);
}

Vec vec_from_json(const Json& j, const std::string& path) {
  require_type(j.is_array(), path, "an array of scalars");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_from_json(j[i], at(path, i)));
  return v;
}

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(scalar_to_json(s));
  return a;
}

bool same_points(const PointSet& a, const PointSet& b) { return a.color == b.color && a.points == b.points; }

}  // namespace

std::vector<std::string> Instance::names() const {
  std::vector<std::string> out;
  for (const auto& p : polynomials) out.push_back(p.name);
  return out;
}

const MultiPoly& Instance::poly(const std::string& name) const {
  for (const auto& p : polynomials)
    if (p.name == name) return p.poly;
  throw PreconditionViolation("instance: no polynomial named \"" + name + "\"");
}

QuadraticForm Instance::form(const std::string& name) const {
  try {
    return QuadraticForm::from_poly(poly(name));
  } catch (const PreconditionViolation&) {
    throw PreconditionViolation("instance: polynomial \"" + name + "\" is not a homogeneous quadratic");
  }
}

std::vector<QuadraticForm> Instance::forms(const std::vector<std::string>& ns) const {
  std::vector<QuadraticForm> out;
  for (const auto& n : ns) out.push_back(form(n));
  return out;
}

bool operator==(const Instance& a, const Instance& b) {
  return a.version == b.version && a.nvars == b.nvars && a.variables == b.variables &&
         a.polynomials == b.polynomials && a.colored == b.colored && a.point_sets.size() == b.point_sets.size() &&
         std::equal(a.point_sets.begin(), a.point_sets.end(), b.point_sets.begin(), same_points) &&
         a.subspace == b.subspace && a.exceptional == b.exceptional && a.seed == b.seed && a.kmax == b.kmax &&
         a.planes == b.planes && a.delta == b.delta;
}

Json scalar_to_json(const Scalar& s) {
  if (s.is_real()) return rational_str(s.re());
  return Json{{"re", rational_str(s.re())}, {"im", rational_str(s.im())}};
}

Scalar scalar_from_json(const Json& j, const std::string& path) {
  if (j.is_object()) {
    reject_unknown_keys(j, path, {"re", "im"});
    if (!j.contains("re") || !j.contains("im")) throw ParseError(path, "complex value needs both \"re\" and \"im\"");
    return Scalar(rational_from_json(j["re"], at(path, "re")), rational_from_json(j["im"], at(path, "im")));
  }
  if (j.is_number_float()) throw InexactLiteral(path, "floating-point literal");
  if (j.is_number_integer()) return Scalar(rational_from_text(j.dump(), path));
  require_type(j.is_string(), path, "an exact scalar (string or {re, im})");
  const auto s = j.get<std::string>();
  if (s.find_first_of(".eE") != std::string::npos) throw InexactLiteral(path, "inexact literal \"" + s + "\"");
  try {
    return Scalar::parse(s);
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
}

Json poly_to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back(Json{{"exp", m.exponents()}, {"coef", scalar_to_json(c)}});
  return terms;
}

MultiPoly poly_from_json(const Json& j, std::size_t nvars, const std::string& path) {
  require_type(j.is_array(), path, "an array of terms");
  MultiPoly p(nvars);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tp = at(path, t);
    require_type(j[t].is_object(), tp, "a term object {exp, coef}");
    reject_unknown_keys(j[t], tp, {"exp", "coef"});
    if (!j[t].contains("exp") || !j[t].contains("coef")) throw ParseError(tp, "term needs \"exp\" and \"coef\"");
    const Json& e = j[t]["exp"];
    require_type(e.is_array(), at(tp, "exp"), "an exponent array");
    if (e.size() != nvars) throw ParseError(at(tp, "exp"), "exponent vector length differs from nvars");
    std::vector<std::uint16_t> exps;
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto v = as_unsigned(e[i], at(at(tp, "exp"), i));
      if (v > 1000) throw ParseError(at(at(tp, "exp"), i), "exponent too large");
      exps.push_back(static_cast<std::uint16_t>(v));
    }
    p.add_term(Monomial(exps), scalar_from_json(j[t]["coef"], at(tp, "coef")));
  }
  return p;
}

Instance instance_from_json(const Json& j) {
  const std::string root = "$";
  require_type(j.is_object(), root, "an object");
  reject_unknown_keys(j, root,
                      {"version", "nvars", "variables", "polynomials", "colored", "point_sets", "subspace",
                       "exceptional", "seed", "budget", "delta"});
  Instance inst;
  if (j.contains("version")) {
    auto v = as_unsigned(j["version"], "$.version");
    if (v != kInstanceVersion) throw ParseError("$.version", "unsupported format version " + std::to_string(v));
  }
  if (j.contains("nvars")) inst.nvars = as_unsigned(j["nvars"], "$.nvars");
  if (j.contains("variables")) {
    const Json& v = j["variables"];
    require_type(v.is_array(), "$.variables", "an array of names");
    for (std::size_t i = 0; i < v.size(); ++i) {
      require_type(v[i].is_string(), at("$.variables", i), "a string");
      inst.variables.push_back(v[i].get<std::string>());
    }
    if (inst.variables.size() != inst.nvars) throw ParseError("$.variables", "length differs from nvars");
  }
  std::set<std::string> seen;
  if (j.contains("polynomials")) {
    const Json& ps = j["polynomials"];
    require_type(ps.is_array(), "$.polynomials", "an array");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::string path = at("$.polynomials", i);
      require_type(ps[i].is_object(), path, "an object {name, terms}");
      reject_unknown_keys(ps[i], path, {"name", "terms"});
      if (!ps[i].contains("name") || !ps[i]["name"].is_string()) throw ParseError(path, "missing string \"name\"");
      if (!ps[i].contains("terms")) throw ParseError(path, "missing \"terms\"");
      std::string name = ps[i]["name"].get<std::string>();
      if (!seen.insert(name).second) throw ParseError(at(path, "name"), "duplicate name \"" + name + "\"");
      inst.polynomials.push_back({name, poly_from_json(ps[i]["terms"], inst.nvars, at(path, "terms"))});
    }
  }
  if (j.contains("colored")) {
    const Json& c = j["colored"];
    require_type(c.is_array() && c.size() == 3, "$.colored", "an array of three name lists");
    std::array<std::vector<std::string>, 3> sets;
    for (std::size_t s = 0; s < 3; ++s) {
      require_type(c[s].is_array(), at("$.colored", s), "an array of names");
      for (std::size_t i = 0; i < c[s].size(); ++i) {
        const std::string path = at(at("$.colored", s), i);
        require_type(c[s][i].is_string(), path, "a polynomial name");
        auto name = c[s][i].get<std::string>();
        if (!seen.count(name)) throw ParseError(path, "unknown polynomial \"" + name + "\"");
        sets[s].push_back(name);
      }
    }
    inst.colored = sets;
  }
  if (j.contains("point_sets")) {
    const Json& ps = j["point_sets"];
    require_type(ps.is_array(), "$.point_sets", "an array");
    for (std::size_t s = 0; s < ps.size(); ++s) {
      const std::string path = at("$.point_sets", s);
      require_type(ps[s].is_object(), path, "an object {color, points}");
      reject_unknown_keys(ps[s], path, {"color", "points"});
      PointSet set;
      if (ps[s].contains("color")) {
        auto c = as_unsigned(ps[s]["color"], at(path, "color"));
        if (c > 3) throw ParseError(at(path, "color"), "color must be 0..3");
        set.color = static_cast<int>(c);
      }
      if (ps[s].contains("points")) {
        const Json& pts = ps[s]["points"];
        require_type(pts.is_array(), at(path, "points"), "an array of vectors");
        for (std::size_t i = 0; i < pts.size(); ++i) set.points.push_back(vec_from_json(pts[i], at(at(path, "points"), i)));
      }
      inst.point_sets.push_back(std::move(set));
    }
  }
  if (j.contains("subspace")) {
    const Json& w = j["subspace"];
    require_type(w.is_array(), "$.subspace", "an array of vectors");
    for (std::size_t i = 0; i < w.size(); ++i) inst.subspace.push_back(vec_from_json(w[i], at("$.subspace", i)));
  }
  if (j.contains("exceptional")) {
    const Json& e = j["exceptional"];
    require_type(e.is_array(), "$.exceptional", "an array");
    for (std::size_t i = 0; i < e.size(); ++i) {
      const std::string path = at("$.exceptional", i);
      require_type(e[i].is_object() && e[i].contains("set") && e[i].contains("index"), path, "an object {set, index}");
      reject_unknown_keys(e[i], path, {"set", "index"});
      PointRef r;
      r.set = static_cast<int>(as_unsigned(e[i]["set"], at(path, "set")));
      r.index = as_unsigned(e[i]["index"], at(path, "index"));
      if (r.set < 1 || r.set > 3) throw ParseError(at(path, "set"), "set must be 1..3");
      inst.exceptional.push_back(r);
    }
  }
  if (j.contains("seed")) inst.seed = as_unsigned(j["seed"], "$.seed");
  if (j.contains("budget")) {
    const Json& b = j["budget"];
    require_type(b.is_object(), "$.budget", "an object {kmax, planes}");
    reject_unknown_keys(b, "$.budget", {"kmax", "planes"});
    if (b.contains("kmax")) inst.kmax = static_cast<unsigned>(as_unsigned(b["kmax"], "$.budget.kmax"));
    if (b.contains("planes")) inst.planes = static_cast<unsigned>(as_unsigned(b["planes"], "$.budget.planes"));
  }
  if (j.contains("delta")) inst.delta = rational_from_json(j["delta"], "$.delta");
  return inst;
}

Json instance_to_json(const Instance& inst) {
  Json j;
  j["version"] = inst.version;
  j["nvars"] = inst.nvars;
  if (!inst.variables.empty()) j["variables"] = inst.variables;
  Json polys = Json::array();
  for (const auto& p : inst.polynomials) polys.push_back(Json{{"name", p.name}, {"terms", poly_to_json(p.poly)}});
  j["polynomials"] = polys;
  if (inst.colored) j["colored"] = *inst.colored;
  if (!inst.point_sets.empty()) {
    Json sets = Json::array();
    for (const auto& s : inst.point_sets) {
      Json pts = Json::array();
      for (const auto& v : s.points) pts.push_back(vec_to_json(v));
      Json o{{"points", pts}};
      if (s.color != 0) o["color"] = s.color;
      sets.push_back(o);
    }
    j["point_sets"] = sets;
  }
  if (!inst.subspace.empty()) {
    Json w = Json::array();
    for (const auto& v : inst.subspace) w.push_back(vec_to_json(v));
    j["subspace"] = w;
  }
  if (!inst.exceptional.empty()) {
    Json e = Json::array();
    for (const auto& r : inst.exceptional) e.push_back(Json{{"set", r.set}, {"index", r.index}});
    j["exceptional"] = e;
  }
  if (inst.seed) j["seed"] = *inst.seed;
  if (inst.kmax || inst.planes) {
    Json b = Json::object();
    if (inst.kmax) b["kmax"] = *inst.kmax;
    if (inst.planes) b["planes"] = *inst.planes;
    j["budget"] = b;
  }
  if (inst.delta) j["delta"] = rational_str(*inst.delta);
  return j;
}

Instance parse_instance(std::istream& in) {
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    // nlohmann reports a byte offset; the message carries line and column
    std::string msg = e.what();
    auto pos = msg.find("at line");
    std::string where = pos == std::string::npos ? "byte " + std::to_string(e.byte) : msg.substr(pos + 3);
    where = where.substr(0, where.find(':'));
    throw ParseError(where, "malformed JSON");
  }
  return instance_from_json(j);
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

Instance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionViolation("cannot open instance file " + path);
  return parse_instance(in);
}

std::string emit_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

}  // namespace quadsg
