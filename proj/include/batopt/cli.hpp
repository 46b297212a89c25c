#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "batopt/harness.hpp"
#include "batopt/run.hpp"

namespace batopt {

inline constexpr std::string_view kToolVersion = "batopt 0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitRuntime = 1,
    kExitBadFlags = 2,
    kExitUnknownName = 3,
};

/// Entry point behind the `batopt` binary. args excludes the program name.
/// Results go to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

namespace io {

/// %.17g, with inf/nan spelled "inf", "-inf", "nan".
[[nodiscard]] std::string format_real(double v);

/// RFC 4180 field: quoted when it contains a comma, quote or line break.
[[nodiscard]] std::string csv_field(std::string_view s);

inline constexpr std::string_view kCompareHeader =
    "function,dim,algorithm,trials,mean_evals,std_evals,success_rate,master_seed,tool_version";
inline constexpr std::string_view kRunHeader =
    "function,dim,algorithm,trial,seed,evaluations_used,success,best_value,iterations,stop_reason";

/// One line of a trace stream: {"iter":..,"positions":[[..],..],"best":..,"best_x":[..]}.
[[nodiscard]] std::string trace_jsonl_line(const TrajectoryRecord& record);

/// Parsed form of trace_jsonl_line, used by consumers and tests.
[[nodiscard]] TrajectoryRecord parse_trace_jsonl_line(std::string_view line);

}  // namespace io

}  // namespace batopt
