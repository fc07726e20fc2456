#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace tcs::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum class ExitCode : int { Ok = 0, Error = 1, Inapplicable = 2 };

struct JobOutcome {
  int exitCode = 0;
  /// Rendered in the job's --format; empty when parsing failed.
  std::string output;
  /// Usage or error text for stderr.
  std::string error;
  nlohmann::json envelope;
};

/// Runs one job given as tokens without the program name, e.g.
/// {"decide", "--group", "Z_2", "--dim", "3", "--s", "2"}. compact renders
/// JSON on a single line.
JobOutcome runJob(const std::vector<std::string>& args, bool compact = false);

/// Jobs of a batch file: one per line, `#` starts a comment, blank lines are
/// skipped. Tokens follow shell-like quoting.
std::vector<std::vector<std::string>> readJobFile(const std::string& path);

/// Entry point of the tcs executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tcs::cli
