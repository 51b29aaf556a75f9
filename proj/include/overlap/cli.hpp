#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "overlap/validation.hpp"

namespace overlap::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kBadInput = 2,
  kInternalError = 3,
};

struct Hooks {
  Estimator universal = p_universal;
};

/// Runs one subcommand (`compute`, `simulate`, `validate`, `sweep`).
/// `args` excludes the program name. Records go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Hooks& hooks = {});

/// Parses `key = value` lines. Blank lines and lines starting with '#' are
/// skipped. Throws ValidationError on malformed lines or duplicate keys.
std::map<std::string, std::string> parse_config(std::istream& in);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace overlap::cli
