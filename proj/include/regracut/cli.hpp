#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace regracut {

/// Exit codes of the command-line front end.
inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_cap = 3;

/// Runs one subcommand. `args` is argv without the program name, e.g.
/// {"fk", "--type", "t.json", "--p", "0.5,0.5"}. Reports go to --out when
/// given, else to `out`; diagnostics and usage go to `err`.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace regracut
