#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cutenc::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kNotFound = 1;
inline constexpr int kInputError = 2;
inline constexpr int kAxiomViolation = 3;
inline constexpr int kBudgetExceeded = 4;
inline constexpr int kVerifyFailure = 5;

/// Runs the command line (without the program name). Writes regular output
/// to `out` and diagnostics to `err`; returns the exit code.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cutenc::cli
