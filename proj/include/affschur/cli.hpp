#pragma once

// The `affschur` command line: configuration and subcommand dispatch.
//
// Configuration comes from flags, then AFFSCHUR_* environment variables, then
// defaults.  Exit codes: 0 success, 1 usage error, 2 invalid input, 3 a
// verification found a counterexample, 4 refusal to use uncertified data.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "affschur/parabolic.hpp"
#include "affschur/serialize.hpp"

namespace affschur {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitVerification = 3;
inline constexpr int kExitUncertified = 4;

struct RunConfig {
    /// Inferred from the first window or matrix when not given.
    std::optional<int> r;
    int n = 2;
    int L = 4;
    /// [-r, r] when not given.
    std::optional<OmegaWindow> omega_window;
    std::optional<std::string> cache_path;
    OutputFormat format = OutputFormat::Json;
    std::uint64_t seed = 1;
    /// Scan threads; 0 uses the hardware concurrency.
    unsigned threads = 0;

    int period() const { return r.value_or(2); }
    OmegaWindow omega() const { return omega_window.value_or(OmegaWindow{-period(), period()}); }
};

/// "lo:hi" with lo <= hi.
OmegaWindow parse_omega_window(const std::string& s);

/// kExitVerification when some check failed, kExitOk otherwise (skipped and
/// absent checks do not fail a run).
int verification_exit_code(const std::vector<CheckResult>& checks);

/// Runs one command line (without the program name); output goes to out,
/// diagnostics and cache statistics to err.
int cmd_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affschur
