#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace survcor {

/// Toolkit entry point: parses arguments, runs one subcommand (scores,
/// topk, alarms, stability), writes artifacts under --out, and returns
/// the process exit code: 0 success, 2 usage or data error, 1 internal
/// error. Errors are reported as a single line on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

/// Convenience overload for tests; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace survcor
