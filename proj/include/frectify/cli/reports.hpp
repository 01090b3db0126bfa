#ifndef FRECTIFY_CLI_REPORTS_HPP
#define FRECTIFY_CLI_REPORTS_HPP

#include "frectify/classify.hpp"
#include "frectify/fvector.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace frectify::cli {

/// Key order is fixed so that reports are byte-for-byte reproducible.
using Json = nlohmann::ordered_json;

inline constexpr const char* schema_version = "frectify/1";

/// Summary of an analysed curve file.
struct AnalysisSummary {
    std::size_t rows = 0;
    std::size_t grid_nodes = 0;
    double s_origin = 0.0;
    double length = 0.0;
    double kappa_min = 0.0, kappa_max = 0.0;
    double tau_min = 0.0, tau_max = 0.0;
    double ratio_min = 0.0, ratio_max = 0.0, ratio_mean = 0.0, ratio_rms = 0.0;
    bool planar = false;
    /// max |s_file - s_computed| when the file carried an s column.
    std::optional<double> s_column_deviation;
};

/// |τ| at most this fraction of (1 + max κ) everywhere counts as planar.
inline constexpr double planar_ratio = 1e-6;

AnalysisSummary summarize(const FrenetData& fd, std::size_t rows);

Json to_json(const AnalysisSummary& summary);
Json to_json(const VerificationReport& report);
Json to_json(const ClassificationReport& report);

/// {"schema", "error": {"kind", "message"}} with kind "validation" or "numerical".
Json error_json(const std::string& kind, const std::string& message);

/// Single-polyline SVG; the y axis points up, the viewBox has a 5% margin.
std::string svg_polyline(const std::vector<std::pair<double, double>>& points);

} // namespace frectify::cli

#endif // FRECTIFY_CLI_REPORTS_HPP
