#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kpell::cli {

/// Exit codes: kOk success / all checks pass, kVerifiedFailure an identity
/// or eigenvalue mismatch, kUsage bad flags or an invalid combination.
inline constexpr int kOk = 0;
inline constexpr int kVerifiedFailure = 1;
inline constexpr int kUsage = 2;

/// Recurrence guard from KPELL_GUARD_N, or the library default when unset.
/// Throws std::invalid_argument when the variable is not a positive integer.
std::uint64_t recurrence_guard_from_env();

/// Runs one command.  `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kpell::cli
