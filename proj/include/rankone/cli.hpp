#pragma once

#include "rankone/special_functions.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rankone::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Environment variable holding the worker count for grid evaluations.
inline constexpr const char* kThreadsVariable = "RANKONE_THREADS";

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 2,
    kExitExcluded = 3,
    kExitStrict = 4,
    kExitNumerical = 5,
};

/// Parses "a+bi", "a-bi", "bi", "-i", "a" with optional spaces around the
/// sign. Throws InvalidArgument otherwise.
Complex parse_complex(std::string_view text);

/// Shortest round-trip rendering, "%.17g".
std::string format_double(double x);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

struct RunManifest {
    std::string command;
    std::string space;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::string tool_version{kToolVersion};
    std::string output_checksum;

    nlohmann::ordered_json to_json() const;
};

/// Worker count from RANKONE_THREADS, else the hardware concurrency (>= 1).
unsigned worker_count();

/// Evaluates fn(0..n-1) on up to `workers` threads; results keep index order.
/// The exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

/// Runs the command line `args` (without the program name). CSV goes to `out`
/// unless --out is given; the JSON report goes to --report or `err`.
/// Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rankone::cli
