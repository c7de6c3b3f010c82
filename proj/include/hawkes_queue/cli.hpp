#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hawkes_queue::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitValidation = 3;

/// Seed used when --seed is not given.
inline constexpr unsigned long long kDefaultSeed = 42;

/// Entry point. Results go to --out when given, otherwise to `out`;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// --help text of the program (empty name) or of one subcommand.
std::string help_text(const std::string& subcommand = "");

/// Parses "a:b:n" (n equally spaced points, both ends included) or a single number.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace hawkes_queue::cli
