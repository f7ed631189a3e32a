#include "quadsg/commands.hpp"

#include <algorithm>
#include <cctype>

#include "quadsg/membership.hpp"
#include "quadsg/structure.hpp"
#include "quadsg/unipoly.hpp"

namespace quadsg {

namespace {

struct Ctx {
  const CommandArgs& args;
  const Instance& inst;
  std::vector<std::string> names;
  std::uint64_t seed = 0;
  MembershipBudget budget;

  Ctx(const CommandArgs& a, const Instance& i) : args(a), inst(i) {
    names = inst.variables.empty() ? default_names(inst.nvars) : inst.variables;
    seed = args.seed.value_or(inst.seed.value_or(0));
    budget.kmax = args.kmax.value_or(inst.kmax.value_or(4));
    budget.planes = args.planes.value_or(inst.planes.value_or(50));
    budget.seed = seed;
  }

  std::string str(const MultiPoly& p) const { return p.str(names); }
  std::string str(const LinearForm& l) const { return l.str(names); }

  Json header() const {
    return Json{{"command", args.command},
                {"seed", seed},
                {"budget", Json{{"kmax", budget.kmax}, {"planes", budget.planes}}}};
  }

  std::pair<QuadraticForm, QuadraticForm> generators() const {
    if (args.gens.size() != 2) throw PreconditionViolation(args.command + ": --gens needs exactly two names");
    return {inst.form(args.gens[0]), inst.form(args.gens[1])};
  }

  const std::string& target() const {
    if (args.q.empty()) throw PreconditionViolation(args.command + ": --q is required");
    return args.q;
  }

  const PointSet& point_set(std::size_t i) const {
    if (inst.point_sets.size() <= i) {
      throw PreconditionViolation(args.command + ": instance has " + std::to_string(inst.point_sets.size()) +
                                  " point sets, need " + std::to_string(i + 1));
    }
    return inst.point_sets[i];
  }
};

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(scalar_to_json(s));
  return a;
}

Json ref_json(const PointRef& r) { return point_ref_str(r); }

Json witness_json(const CaseWitness& w, const Ctx& c) {
  Json j{{"case", case_name(w)}};
  if (const auto* s = std::get_if<SpanWitness>(&w)) {
    j["alpha"] = scalar_to_json(s->alpha);
    j["beta"] = scalar_to_json(s->beta);
  } else if (const auto* p = std::get_if<PencilWitness>(&w)) {
    j["explicit"] = p->explicit_root;
    j["beta"] = scalar_to_json(p->beta);
    if (p->explicit_root) {
      j["alpha"] = scalar_to_json(p->alpha);
      j["c"] = scalar_to_json(p->c);
      j["l"] = c.str(p->l);
    } else {
      j["defining"] = p->defining.str("alpha");
    }
  } else {
    const auto& d = std::get<Codim2Witness>(w);
    j["l1"] = c.str(d.l1);
    j["l2"] = c.str(d.l2);
  }
  return j;
}

Json cmd_member(const Ctx& c) {
  const MultiPoly& q = c.inst.poly(c.target());
  auto [q1, q2] = c.generators();
  MembershipVerdict v = radical_member(q, q1, q2, c.budget);
  Json r{{"q", c.args.q},
         {"gens", c.args.gens},
         {"outcome", outcome_name(v.outcome)},
         {"kmax_tried", v.kmax_tried},
         {"planes_tried", v.planes_tried},
         {"planes_discarded", v.planes_discarded}};
  if (v.outcome == Outcome::Member) {
    r["k"] = v.k;
    r["cofactors"] = Json{{"A", c.str(v.cofactor_a)}, {"B", c.str(v.cofactor_b)}};
    MultiPoly residual = q.pow(v.k) - v.cofactor_a * q1.to_poly() - v.cofactor_b * q2.to_poly();
    r["certificate_check"] = residual.is_zero() ? "ok" : "failed";
    if (!residual.is_zero()) throw SoundnessError("member: cofactors do not re-expand");
  } else if (v.outcome == Outcome::NonMember) {
    const auto& ev = *v.evidence;
    r["evidence"] = Json{{"plane", Json{{"p0", vec_json(ev.plane.p0)}, {"u", vec_json(ev.plane.u)}, {"v", vec_json(ev.plane.v)}}},
                         {"factor", ev.factor.str("s")}};
    bool ok = verify_nonmember(q, q1, q2, ev);
    r["evidence_check"] = ok ? "ok" : "failed";
    if (!ok) throw SoundnessError("member: non-membership evidence does not re-verify");
  }
  return r;
}

Json cmd_classify(const Ctx& c) {
  QuadraticForm q = c.inst.form(c.target());
  auto [q1, q2] = c.generators();
  Classification cl = classify(q, q1, q2, c.budget);
  Json ws = Json::array();
  for (const auto& w : cl.witnesses) ws.push_back(witness_json(w, c));
  Json r{{"q", c.args.q}, {"gens", c.args.gens}, {"witnesses", ws}, {"case3_search", search_status_name(cl.case3)},
         {"incomplete", cl.incomplete}};
  if (cl.membership) r["membership"] = outcome_name(*cl.membership);
  return r;
}

Json cmd_check_sg(const Ctx& c) {
  SGReport s = check_delta_sg(c.point_set(0));
  Json triples = Json::array();
  for (const auto& t : s.witness_triples) triples.push_back(t);
  Json r{{"delta_hat", rational_str(s.delta_hat)}, {"dim", s.dim}, {"counts", s.counts}, {"witness_triples", triples}};
  if (s.delta_hat > 0) {
    Rational bound = Rational(12) / s.delta_hat;
    r["dim_bound"] = Json{{"value", rational_str(bound)}, {"holds", Rational(static_cast<unsigned long>(s.dim)) <= bound}};
  }
  return r;
}

Json cmd_check_ek(const Ctx& c) {
  const PointSet &t1 = c.point_set(0), &t2 = c.point_set(1), &t3 = c.point_set(2);
  EKReport e = check_ek(t1, t2, t3);
  Json r{{"holds", e.holds}, {"dim", e.dim}};
  if (e.violating_pair) r["violating_pair"] = Json{ref_json(e.violating_pair->first), ref_json(e.violating_pair->second)};
  if (!t1.points.empty() && !t2.points.empty() && !t3.points.empty()) {
    DeltaEKReport d = check_delta_ek(t1, t2, t3);
    r["delta_hat"] = rational_str(d.delta_hat);
    r["worst"] = Json{{"point", ref_json(d.worst)}, {"target", "T" + std::to_string(d.worst_target)}};
  }
  return r;
}

Json quad_report_json(const QuadSetReport& rep, const std::vector<std::string>& labels) {
  Json pairs = Json::array();
  for (const auto& p : rep.pairs) {
    Json j{{"pair", Json{labels[p.i], labels[p.j]}}};
    if (p.k) {
      j["witness"] = labels[*p.k];
      j["via"] = p.via;
    } else {
      j["witness"] = nullptr;
      j["undetermined"] = p.undetermined;
    }
    pairs.push_back(j);
  }
  auto pair_list = [&](const std::vector<std::pair<std::size_t, std::size_t>>& ps) {
    Json a = Json::array();
    for (const auto& [i, j] : ps) a.push_back(Json{labels[i], labels[j]});
    return a;
  };
  return Json{{"status", hypothesis_name(rep.status)},
              {"hypothesis_holds", rep.hypothesis_holds},
              {"pairs", pairs},
              {"missing_pairs", pair_list(rep.missing_pairs)},
              {"undetermined_pairs", pair_list(rep.undetermined_pairs)},
              {"span_dim", rep.span_dim},
              {"case_census", Json{{"Span", rep.census.span},
                                   {"PencilSquare", rep.census.pencil},
                                   {"Codim2", rep.census.codim2},
                                   {"Unknown", rep.census.unknown}}}};
}

Json cmd_check_qsg(const Ctx& c) {
  std::vector<std::string> labels = c.args.gens.empty() ? c.inst.names() : c.args.gens;
  QuadSetReport rep = check_quadratic_sg(c.inst.forms(labels), c.budget, !c.args.allow_reducible);
  Json r = quad_report_json(rep, labels);
  r["family"] = labels;
  r["strict"] = !c.args.allow_reducible;
  return r;
}

Json cmd_check_qek(const Ctx& c) {
  if (!c.inst.colored) throw PreconditionViolation("check-qek: instance has no \"colored\" sets");
  const auto& sets = *c.inst.colored;
  std::vector<std::string> labels;
  for (const auto& s : sets) labels.insert(labels.end(), s.begin(), s.end());
  QuadEKReport rep = check_quadratic_ek(c.inst.forms(sets[0]), c.inst.forms(sets[1]), c.inst.forms(sets[2]), c.budget);
  Json r = quad_report_json(rep.combined, labels);
  r["sets"] = sets;
  r["set_span_dims"] = rep.set_span_dims;
  return r;
}

Json cmd_certify_ek(const Ctx& c) {
  EKOptions opt;
  auto delta = c.args.delta ? c.args.delta : c.inst.delta;
  if (!delta) throw PreconditionViolation("certify-ek: --delta is required");
  opt.delta = *delta;
  opt.seed = c.seed;
  opt.w = c.inst.subspace;
  opt.exceptional = c.inst.exceptional;
  EKCertificate cert = certify_ek_span(c.point_set(0), c.point_set(1), c.point_set(2), opt);
  Json set = Json::array();
  for (const auto& p : cert.spanning_set) set.push_back(ref_json(p));
  Rational cbound = Rational(kEkConstant) / (opt.delta * opt.delta * opt.delta) +
                    Rational(static_cast<unsigned long>(opt.exceptional.size()));
  Json r{{"delta", rational_str(opt.delta)},
         {"regime", regime_name(cert.regime)},
         {"spanning_set", set},
         {"size", cert.spanning_set.size()},
         {"size_bound_claimed", cert.size_bound_claimed},
         {"constant_C", kEkConstant},
         {"within_C_over_delta_cubed", Rational(static_cast<unsigned long>(cert.spanning_set.size())) <= cbound},
         {"fallback_extensions", cert.fallback_extensions},
         {"span_dim", cert.span_dim},
         {"union_dim", cert.union_dim},
         {"spanning_verification", cert.spans ? "ok" : "failed"}};
  if (cert.regime == Regime::Balanced) {
    r["sample_attempts"] = cert.sample_attempts;
    r["sample_accepted"] = cert.sample_accepted;
  } else {
    r["greedy_steps"] = cert.greedy_steps;
    r["t3_disjoint"] = cert.t3_disjoint;
  }
  return r;
}

std::size_t resolve_var(const Ctx& c) {
  const std::string& v = c.args.var;
  if (v.empty()) throw PreconditionViolation("resultant: --var is required");
  auto it = std::find(c.names.begin(), c.names.end(), v);
  if (it != c.names.end()) return static_cast<std::size_t>(it - c.names.begin());
  if (std::all_of(v.begin(), v.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    std::size_t i = std::stoul(v);
    if (i >= 1 && i <= c.inst.nvars) return i - 1;
  }
  throw PreconditionViolation("resultant: unknown variable \"" + v + "\"");
}

Json cmd_resultant(const Ctx& c) {
  if (c.args.gens.size() != 2) throw PreconditionViolation("resultant: --gens needs exactly two names");
  const MultiPoly& f = c.inst.poly(c.args.gens[0]);
  const MultiPoly& g = c.inst.poly(c.args.gens[1]);
  const std::size_t var = resolve_var(c);
  MultiPoly res = uni_resultant(f, g, var);
  return Json{{"gens", c.args.gens}, {"var", c.names[var]}, {"resultant", c.str(res)}, {"terms", poly_to_json(res)}};
}

void add_form(Instance& inst, const std::string& name, const QuadraticForm& q) {
  inst.polynomials.push_back({name, q.to_poly()});
}

}  // namespace

const std::vector<std::string>& gen_kinds() {
  static const std::vector<std::string> kinds{"intro",         "case1",          "case2",
                                              "case3",         "planted-ek",     "planted-ek-unbalanced",
                                              "planted-ek-small", "three-line",   "fermat-squares",
                                              "colored-fermat", "pencil"};
  return kinds;
}

Instance generate_instance(const std::string& kind, std::size_t nvars, std::uint64_t seed) {
  Instance inst;
  inst.seed = seed;
  auto points_instance = [&](const std::array<PointSet, 3>& sets) {
    for (const auto& s : sets) inst.point_sets.push_back(s);
    inst.delta = Rational(1, 4);
  };
  if (kind == "intro") {
    inst.nvars = 4;
    inst.variables = {"x", "y", "z", "w"};
    auto m = [](std::vector<std::uint16_t> e) { return Monomial(std::move(e)); };
    MultiPoly xy = MultiPoly::term(m({1, 1, 0, 0}), 1), zw = MultiPoly::term(m({0, 0, 1, 1}), 1);
    MultiPoly xw = MultiPoly::term(m({1, 0, 0, 1}), 1), yz = MultiPoly::term(m({0, 1, 1, 0}), 1);
    inst.polynomials = {{"Q1", xy + zw}, {"Q2", xy - zw}, {"Q3", xw}, {"Q4", yz}, {"Q3Q4", xw * yz}};
  } else if (kind == "case1" || kind == "case2" || kind == "case3") {
    GeneratedCase g = gen_case(kind.back() - '0', nvars, seed);
    inst.nvars = nvars;
    add_form(inst, "Q", g.q);
    add_form(inst, "Q1", g.q1);
    add_form(inst, "Q2", g.q2);
  } else if (kind == "planted-ek") {
    points_instance(planted_ek({1000, 100, 100}, 4, 20, seed));
  } else if (kind == "planted-ek-unbalanced") {
    points_instance(planted_ek({1000, 40, 9}, 3, 20, seed));
  } else if (kind == "planted-ek-small") {
    points_instance(planted_ek({120, 12, 12}, 4, 20, seed));
  } else if (kind == "three-line") {
    inst.point_sets.push_back(three_line_family(20));
  } else if (kind == "fermat-squares" || kind == "colored-fermat") {
    auto pts = fermat_points();
    if (kind == "fermat-squares") {
      inst.nvars = 3;
      for (std::size_t i = 0; i < pts.size(); ++i)
        add_form(inst, "L" + std::to_string(i + 1) + "sq", QuadraticForm::square(LinearForm(pts[i])));
    } else {
      // coefficient vectors of the colored Fermat configuration over three random quadrics
      if (nvars < 3) throw PreconditionViolation("gen colored-fermat: nvars must be at least 3");
      inst.nvars = nvars;
      Rng rng(seed);
      std::vector<QuadraticForm> basis;
      do {
        basis = {random_quadratic(rng, nvars), random_quadratic(rng, nvars), random_quadratic(rng, nvars)};
      } while (rank_of(coefficient_matrix(basis)) != 3);
      std::array<std::vector<std::string>, 3> colored;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        QuadraticForm q(nvars);
        for (std::size_t k = 0; k < 3; ++k) q = q + pts[i][k] * basis[k];
        std::string name = "T" + std::to_string(i / 4 + 1) + "_" + std::to_string(i % 4 + 1);
        add_form(inst, name, q);
        colored[i / 4].push_back(name);
      }
      inst.colored = colored;
    }
  } else if (kind == "pencil") {
    PencilFamily fam = gen_pencil_family(nvars, 6, seed);
    inst.nvars = nvars;
    add_form(inst, "Q1", fam.q1);
    add_form(inst, "Q2", fam.q2);
    for (std::size_t i = 0; i < fam.ell.size(); ++i)
      add_form(inst, "F" + std::to_string(i + 1), fam.q1 + QuadraticForm::square(fam.ell[i]));
  } else {
    throw PreconditionViolation("gen: unknown kind \"" + kind + "\"");
  }
  return inst;
}

CommandResult run_command(const CommandArgs& args, const Instance* inst) {
  CommandResult out;
  if (args.command == "gen") {
    out.report = instance_to_json(generate_instance(args.kind, args.nvars, args.seed.value_or(0)));
    return out;
  }
  if (std::find(command_names().begin(), command_names().end(), args.command) == command_names().end()) {
    throw PreconditionViolation("unknown command \"" + args.command + "\"");
  }
  if (!inst) throw PreconditionViolation(args.command + ": an instance file is required");
  Ctx c(args, *inst);
  Json result;
  if (args.command == "member") {
    result = cmd_member(c);
    if (!args.expect.empty()) {
      std::string got = result["outcome"].get<std::string>();
      std::transform(got.begin(), got.end(), got.begin(), [](unsigned char ch) { return std::tolower(ch); });
      if (got != args.expect) out.exit_code = kExitContract;
      result["expect"] = Json{{"asserted", args.expect}, {"met", got == args.expect}};
    }
  } else if (args.command == "classify") {
    result = cmd_classify(c);
  } else if (args.command == "check-sg") {
    result = cmd_check_sg(c);
  } else if (args.command == "check-ek") {
    result = cmd_check_ek(c);
  } else if (args.command == "check-qsg") {
    result = cmd_check_qsg(c);
  } else if (args.command == "check-qek") {
    result = cmd_check_qek(c);
  } else if (args.command == "certify-ek") {
    result = cmd_certify_ek(c);
  } else {
    result = cmd_resultant(c);
  }
  out.report = c.header();
  out.report["result"] = result;
  return out;
}

std::string emit_report(const Json& report) { return report.dump(2) + "\n"; }

std::string fixture_dir() { return QUADSG_FIXTURE_DIR; }

const std::vector<Fixture>& shipped_fixtures() {
  static const std::vector<Fixture> fixtures{
      {"intro.json", "Q1 = xy+zw, Q2 = xy-zw, Q3 = xw, Q4 = yz and the product Q3Q4",
       "member --q Q3Q4 --gens Q1,Q2 intro.json", "Member, k = 1"},
      {"intro.json", "Q3 alone is not in the radical", "member --q Q3 --gens Q1,Q2 intro.json", "NonMember"},
      {"intro.json", "Q4 alone is not in the radical", "member --q Q4 --gens Q1,Q2 intro.json", "NonMember"},
      {"intro.json", "no single form covers the pair (Q1, Q2)",
       "check-qsg --gens Q1,Q2,Q3,Q4 --allow-reducible intro.json", "fails, missing pair (Q1, Q2)"},
      {"case3.json", "planted codimension-2 triple", "classify --q Q --gens Q1,Q2 case3.json", "Codim2 witness"},
      {"planted_ek.json", "planted 1/4-EK configuration in a 4-dim subspace of Q^20",
       "certify-ek --delta 1/4 planted_ek.json", "spanning_verification ok"},
      {"three_line.json", "60 points on three concurrent lines", "check-sg three_line.json", "delta_hat 7/20, dim 3"},
      {"fermat_squares.json", "squares of the 12 Fermat lines (z = i)", "check-qsg fermat_squares.json",
       "holds, span_dim 6"},
  };
  return fixtures;
}

}  // namespace quadsg
