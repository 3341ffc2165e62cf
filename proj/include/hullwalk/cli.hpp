#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hullwalk::cli {

inline constexpr std::string_view kVersion = "0.1.0";

/// Process exit statuses.
enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericFailure = 2 };

/// Settings shared by the simulation subcommands.
struct RunConfig {
    std::string model;
    std::uint64_t steps = 0;
    std::uint64_t replicates = 1000;
    std::uint64_t seed = 1;
    std::string schedule = "geom:10,1.25";
    std::string out;
    unsigned threads = 0;
    bool force = false;
    double budget = 1e10;  // maximum steps * replicates without --force

    /// Parses model and schedule and applies the budget guard; throws
    /// hullwalk::Error on failure.
    void validate() const;

    std::string to_json() const;
    static RunConfig from_json(std::string_view text);

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hullwalk::cli
