#ifndef FRECTIFY_CLI_COMMANDS_HPP
#define FRECTIFY_CLI_COMMANDS_HPP

#include "frectify/cli/curve_csv.hpp"
#include "frectify/curve.hpp"
#include "frectify/frenet.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace frectify::cli {

/// Exit codes shared by every command.
enum ExitCode : int { exit_ok = 0, exit_semantic_fail = 1, exit_invalid = 2, exit_numerical = 3 };

/// Smallest n accepted by `synth`.
inline constexpr int synth_min_n = 64;

/// Runs one command line (without the program name). Reports go to the
/// files named by the flags or to `out`; errors are written to `err` as JSON.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// A curve file prepared for analysis: spline through the rows, uniform
/// arclength grid starting at the file's first s value (or 0) and the frame
/// on that grid.
struct IngestedCurve {
    CurveFile file;
    ParamCurve curve;
    ArcLengthCurve grid;
    FrenetData fd;
};

/// `grid_intervals` = 0 picks max(256, 2·(rows - 1)).
IngestedCurve ingest(CurveFile file, int grid_intervals = 0);

/// Arclength at every row of the file, measured along the spline.
std::vector<double> row_arclength(const IngestedCurve& c);

/// "lo:hi" with lo < hi.
Interval parse_interval(const std::string& text, const std::string& what);

} // namespace frectify::cli

#endif // FRECTIFY_CLI_COMMANDS_HPP
