#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadsg/instance.hpp"

namespace quadsg {

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"member",    "classify",  "check-sg",   "check-ek", "check-qsg",
                                              "check-qek", "certify-ek", "resultant", "gen"};
  return names;
}

struct CommandArgs {
  std::string command;
  std::optional<std::uint64_t> seed;  // falls back to the instance, then 0
  std::optional<unsigned> kmax, planes;
  std::optional<Rational> delta;
  std::string q;                   // member / classify target
  std::vector<std::string> gens;   // generators, or the family for check-qsg
  std::string var;                 // resultant: eliminated variable (name or 1-based index)
  std::string expect;              // member: "member" | "nonmember"; a mismatch gives exit code 1
  bool allow_reducible = false;    // check-qsg: skip the irreducible-or-square precondition
  // gen
  std::string kind;
  std::size_t nvars = 4;
};

struct CommandResult {
  Json report;
  int exit_code = 0;
};

/// Exit codes: 0 completed, 1 contract flag (--expect) not met,
/// 2 precondition violation, 3 soundness check tripped.
inline constexpr int kExitOk = 0;
inline constexpr int kExitContract = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitSoundness = 3;

/// Runs one subcommand. `inst` may be null only for `gen`. Exceptions are not
/// caught here.
CommandResult run_command(const CommandArgs& args, const Instance* inst);

/// Canonical report text (sorted keys, two-space indent, trailing newline).
std::string emit_report(const Json& report);

struct Fixture {
  std::string file;
  std::string description;
  std::string command;  // a command line reproducing the expected verdict
  std::string expected;
};
const std::vector<Fixture>& shipped_fixtures();
std::string fixture_dir();

/// Instance produced by `gen` for the given kind.
Instance generate_instance(const std::string& kind, std::size_t nvars, std::uint64_t seed);
const std::vector<std::string>& gen_kinds();

}  // namespace quadsg
