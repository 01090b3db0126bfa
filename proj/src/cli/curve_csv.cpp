#include "frectify/cli/curve_csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace frectify::cli {

CsvError::CsvError(const std::string& message, std::size_t row)
    : ValidationError(row > 0 ? "line " + std::to_string(row) + ": " + message : message), row_(row)
{
}

namespace {

std::string_view trim(std::string_view v)
{
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t'))
        v.remove_prefix(1);
    while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r'))
        v.remove_suffix(1);
    return v;
}

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return fields;
}

double parse_number(std::string_view field, std::size_t row, std::string_view column)
{
    double v = 0;
    if (!field.empty() && field.front() == '+')
        field.remove_prefix(1);
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || end != field.data() + field.size())
        throw CsvError("column '" + std::string(column) + "': not a number: '" + std::string(field) + "'", row);
    if (!std::isfinite(v))
        throw CsvError("column '" + std::string(column) + "': value is not finite", row);
    return v;
}

} // namespace

CurveFile read_curve_csv(std::istream& in)
{
    std::string line;
    std::size_t row = 0;
    bool have_header = false;
    std::vector<std::string> names;
    while (std::getline(in, line)) {
        ++row;
        if (!trim(line).empty()) {
            have_header = true;
            for (auto f : split(line))
                names.emplace_back(f);
            break;
        }
    }
    if (!have_header)
        throw CsvError("empty CSV: a header row is required", 0);

    auto column = [&](std::string_view name) -> int {
        int found = -1;
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) {
                if (found >= 0)
                    throw CsvError("duplicate column '" + std::string(name) + "'", 1);
                found = static_cast<int>(i);
            }
        return found;
    };
    const std::array<int, 4> required = {column("t"), column("x"), column("y"), column("z")};
    for (std::size_t i = 0; i < required.size(); ++i)
        if (required[i] < 0)
            throw CsvError(std::string("missing required column '") + "txyz"[i] + "'", row);
    const int s_col = column("s");

    CurveFile file;
    if (s_col >= 0)
        file.s.emplace();
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty())
            continue;
        const auto fields = split(line);
        if (fields.size() != names.size())
            throw CsvError("expected " + std::to_string(names.size()) + " fields, found " +
                               std::to_string(fields.size()),
                           row);
        const double t = parse_number(fields[required[0]], row, "t");
        if (!file.t.empty() && !(t > file.t.back()))
            throw CsvError("t must be strictly increasing", row);
        file.t.push_back(t);
        file.points.emplace_back(parse_number(fields[required[1]], row, "x"),
                                 parse_number(fields[required[2]], row, "y"),
                                 parse_number(fields[required[3]], row, "z"));
        if (s_col >= 0)
            file.s->push_back(parse_number(fields[s_col], row, "s"));
    }
    if (file.t.empty())
        throw CsvError("empty CSV: no data rows", 0);
    return file;
}

CurveFile read_curve_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open '" + path + "'");
    return read_curve_csv(in);
}

std::string format_double(double v)
{
    if (v == 0)
        v = 0; // no "-0"
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ec == std::errc() ? end : buf.data());
}

void write_curve_csv(std::ostream& out, const std::vector<double>& t, const std::vector<double>& s,
                     const std::vector<Vec3>& points, const FrenetData* frame)
{
    out << "t,s,x,y,z";
    if (frame)
        out << ",Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau";
    out << '\n';
    auto vec = [&](const Vec3& v) {
        out << ',' << format_double(v.x()) << ',' << format_double(v.y()) << ',' << format_double(v.z());
    };
    for (std::size_t k = 0; k < t.size(); ++k) {
        out << format_double(t[k]) << ',' << format_double(s[k]);
        vec(points[k]);
        if (frame) {
            vec(frame->T[k]);
            vec(frame->N[k]);
            vec(frame->B[k]);
            out << ',' << format_double(frame->kappa[k]) << ',' << format_double(frame->tau[k]);
        }
        out << '\n';
    }
}

} // namespace frectify::cli
