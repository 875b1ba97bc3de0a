#pragma once

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace pcsym::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitNonConvergence = 3;

struct PropertyOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Invariant suite behind `verify`. Monte Carlo checks use `reps` replications.
std::vector<PropertyOutcome> run_verification(std::size_t reps, std::uint64_t seed);

/// Exit status for an error raised while running a command: 3 for numerical
/// non-convergence, 2 for invalid input.
int exit_status_for(const std::exception &e);

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// (or to --out), diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace pcsym::cli
