#ifndef FRECTIFY_CLI_CURVE_CSV_HPP
#define FRECTIFY_CLI_CURVE_CSV_HPP

#include "frectify/frenet.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace frectify::cli {

/// Malformed curve CSV; `row` is the 1-based line number (the header is 1),
/// or 0 when the problem is not tied to a line.
class CsvError : public ValidationError {
public:
    CsvError(const std::string& message, std::size_t row);
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// Rows of a curve file: t, x, y, z are required columns, s is optional and
/// any other column (frame, kappa, tau) is ignored on input.
struct CurveFile {
    std::vector<double> t;
    std::optional<std::vector<double>> s;
    std::vector<Vec3> points;

    std::size_t size() const noexcept { return t.size(); }
};

/// Header row mandatory, comma separated, t strictly increasing, every field
/// finite. Zero data rows is an error.
CurveFile read_curve_csv(std::istream& in);
CurveFile read_curve_csv_file(const std::string& path);

/// Shortest decimal form that round-trips, at most 17 significant digits.
std::string format_double(double v);

/// Writes t, s, x, y, z and, when a frame is given, Tx..Bz, kappa, tau.
void write_curve_csv(std::ostream& out, const std::vector<double>& t, const std::vector<double>& s,
                     const std::vector<Vec3>& points, const FrenetData* frame = nullptr);

} // namespace frectify::cli

#endif // FRECTIFY_CLI_CURVE_CSV_HPP
