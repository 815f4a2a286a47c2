#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hsseg::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    ok = 0,
    internal_error = 1,
    usage_error = 2,
    io_error = 3,
    format_error = 4,
    dimension_mismatch = 5,
    degenerate_marginal = 6,
    region_too_large = 7,
};

/// Runs the tool on `args` (without the program name). Diagnostics go to
/// `err` as a single line; results and help go to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a non-negative real; "inf" means +infinity. Throws UsageError.
double parse_param(std::string_view text, std::string_view name);

/// start:stop:step grid, stop included when reached exactly. Throws UsageError.
std::vector<double> parse_grid(std::string_view text);

}  // namespace hsseg::cli
