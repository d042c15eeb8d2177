#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "goodred/kummer.hpp"

namespace goodred::cli {

inline constexpr const char* kSchemaVersion = "goodred.report/1";

struct CommandSpec {
  std::string command;
  std::vector<std::string> positional;
  /// Boolean flags carry the value "true".
  std::map<std::string, std::string> flags;
};

struct FlagSpec {
  std::string name;
  bool boolean = false;
  std::string defaultValue;  // empty with required = true means mandatory
  bool required = false;
  std::string help;
};

struct CommandInfo {
  std::string name;
  std::string help;
  std::vector<FlagSpec> flags;
  bool takesPositional = false;
};

const std::vector<CommandInfo>& commandTable();
const std::vector<std::string>& reproduceIds();

enum ExitCode { kPass = 0, kAssertionFailure = 1, kInputError = 2 };

struct Report {
  nlohmann::ordered_json doc;
  int exitCode = kPass;
};

/// Never throws for module errors: they become an error report with exit
/// code 2. Unknown flags or commands are input errors as well.
Report runCommand(const CommandSpec& spec);

/// "delta,a,b,c". Throws InvalidArgument.
kummer::CurveParams parseCurve(std::string_view text);

/// Comma-separated integers. Throws InvalidArgument.
std::vector<long> parseIntList(std::string_view text);

}  // namespace goodred::cli
