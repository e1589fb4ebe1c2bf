#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mudra/io.hpp"
#include "mudra/table1.hpp"

namespace mudra {

/// Exit statuses shared by the CLI and the reports it prints.
enum ExitCode : int {
  kExitOk = 0,
  kExitDiscrepancy = 1,
  kExitGuardRefusal = 2,
  kExitInputError = 3,
};

/// One scripted comparison against an embedded expected value.
struct CaseCheck {
  std::string name;
  bool passed = false;
  io::Json expected;
  io::Json observed;
  /// "reference" for expected values fixed in advance, "computed" for
  /// values fixed by exhaustive scan or an independent oracle.
  std::string basis;
};

struct VerificationReport {
  std::string command;
  std::string property;
  io::Json domain = io::Json::object();
  bool verdict = true;
  std::vector<CaseCheck> checks;
  io::Json certificates = io::Json::array();
  std::vector<std::string> notes;
  double seconds = 0;
  int exit_code = kExitOk;

  void add(CaseCheck check);
};

io::Json to_json(const VerificationReport& report, bool include_timing = true);
std::string render(const VerificationReport& report);

/// figure1, expost, pareto-decomp, theorem1, theorem2, example1, table1.
std::vector<std::string> reproduction_cases();

/// Throws InputError for an unknown id, listing the available cases.
VerificationReport reproduce(std::string_view case_id, const Table1Config& table_config = {});

/// The two-agent, four-object profile used by the eating-timeline case.
PreferenceProfile timeline_profile();
/// The two-agent profile over objects a, b, c, d used by the first
/// impossibility case: (a,b,c,d) and (b,c,a,d).
PreferenceProfile contested_profile();
/// Four agents, objects a..d, quota 1: two agents with (a,b,c,d) then two
/// with (b,c,a,d).
PreferenceProfile paired_types_profile();

}  // namespace mudra
