#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "quadsg/commands.hpp"

using namespace quadsg;

namespace {

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "quadsg: cannot write " << out << "\n";
    return kExitPrecondition;
  }
  f << text;
  return 0;
}

Json error_report(const std::string& command, const char* kind, const std::string& message) {
  return Json{{"command", command}, {"error", Json{{"type", kind}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadsg: radical membership, quadratic structure and SG/EK configuration tools"};
  app.require_subcommand(0, 1);

  bool list_fixtures = false;
  app.add_flag("--fixtures", list_fixtures, "List the shipped fixtures with their expected verdicts");

  CommandArgs args;
  std::string instance_path, out_path, seed_text, kmax_text, planes_text, delta_text, gens_text;

  const std::map<std::string, std::string> blurb{
      {"member", "Decide whether --q lies in the radical of the two --gens"},
      {"classify", "Detect the structure cases of --q against the two --gens"},
      {"check-sg", "delta-SG statistics of a point set"},
      {"check-ek", "delta-EK statistics of three colored point sets"},
      {"check-qsg", "Check the quadratic SG hypothesis and report the span dimension"},
      {"check-qek", "Check the colored quadratic EK hypothesis and report the span dimension"},
      {"certify-ek", "Certify a small spanning subset of a delta-EK configuration"},
      {"resultant", "Resultant of two polynomials with respect to --var"},
      {"gen", "Emit a seeded generated instance"}};

  for (const auto& name : command_names()) {
    auto it = blurb.find(name);
    auto* sub = app.add_subcommand(name, it == blurb.end() ? std::string() : it->second);
    sub->add_option("--seed", seed_text, "PRNG seed (u64)");
    sub->add_option("--out", out_path, "Write the report here instead of stdout");
    if (name == "gen") {
      sub->add_option("kind", args.kind, "Instance kind")->required()->check(CLI::IsMember(gen_kinds()));
      sub->add_option("--nvars", args.nvars, "Number of variables");
      continue;
    }
    sub->add_option("instance", instance_path, "Instance file (JSON)")->required();
    sub->add_option("--kmax", kmax_text, "Largest power tried for membership (default 4)");
    sub->add_option("--planes", planes_text, "Random planes tried for falsification (default 50)");
    sub->add_option("--delta", delta_text, "delta as an exact fraction p/q");
    sub->add_option("--q", args.q, "Name of the target polynomial");
    sub->add_option("--gens", gens_text, "Comma-separated polynomial names");
    if (name == "resultant") sub->add_option("--var", args.var, "Variable to eliminate (name or 1-based index)");
    if (name == "member") {
      sub->add_option("--expect", args.expect, "Assert the outcome; exit 1 if not met")
          ->check(CLI::IsMember({"member", "nonmember", "unknown"}));
    }
    if (name == "check-qsg") sub->add_flag("--allow-reducible", args.allow_reducible, "Accept rank-2 forms");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version are not errors; everything else is a usage precondition
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitPrecondition;
  }

  if (list_fixtures) {
    Json list = Json::array();
    for (const auto& f : shipped_fixtures()) {
      list.push_back(Json{{"file", fixture_dir() + "/" + f.file},
                          {"description", f.description},
                          {"command", f.command},
                          {"expected", f.expected}});
    }
    return emit(emit_report(Json{{"fixtures", list}}), out_path);
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kExitPrecondition;
  }
  args.command = app.get_subcommands().front()->get_name();

  try {
    auto parse_u = [](const std::string& text, const char* flag) {
      if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw PreconditionViolation(std::string(flag) + " expects a non-negative integer");
      }
      return std::stoull(text);
    };
    if (!seed_text.empty()) args.seed = parse_u(seed_text, "--seed");
    if (!kmax_text.empty()) args.kmax = static_cast<unsigned>(parse_u(kmax_text, "--kmax"));
    if (!planes_text.empty()) args.planes = static_cast<unsigned>(parse_u(planes_text, "--planes"));
    if (!delta_text.empty()) {
      if (delta_text.find_first_of(".eE") != std::string::npos) {
        throw InexactLiteral("--delta", "inexact literal \"" + delta_text + "\"");
      }
      args.delta = parse_rational(delta_text);
    }
    for (std::size_t pos = 0; !gens_text.empty() && pos <= gens_text.size();) {
      auto next = gens_text.find(',', pos);
      if (next == std::string::npos) next = gens_text.size();
      args.gens.push_back(gens_text.substr(pos, next - pos));
      pos = next + 1;
    }

    std::optional<Instance> inst;
    if (args.command != "gen") inst = parse_instance_file(instance_path);
    CommandResult r = run_command(args, inst ? &*inst : nullptr);
    int rc = emit(emit_report(r.report), out_path);
    return rc != 0 ? rc : r.exit_code;
  } catch (const SoundnessError& e) {
    std::cerr << "quadsg: soundness check failed: " << e.what() << "\n";
    emit(emit_report(error_report(args.command, "soundness", e.what())), out_path);
    return kExitSoundness;
  } catch (const std::invalid_argument& e) {
    std::cerr << "quadsg: " << e.what() << "\n";
    emit(emit_report(error_report(args.command, "precondition", e.what())), out_path);
    return kExitPrecondition;
  }
}
