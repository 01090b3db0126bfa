#include "frectify/cli/reports.hpp"

#include "frectify/cli/curve_csv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace frectify::cli {

namespace {

Json vec_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

} // namespace

AnalysisSummary summarize(const FrenetData& fd, std::size_t rows)
{
    if (fd.size() == 0)
        throw ValidationError("cannot summarize an empty frame");
    AnalysisSummary out;
    out.rows = rows;
    out.grid_nodes = fd.size();
    out.s_origin = fd.s.front();
    out.length = fd.s.back() - fd.s.front();
    const auto [kmin, kmax] = std::minmax_element(fd.kappa.begin(), fd.kappa.end());
    const auto [tmin, tmax] = std::minmax_element(fd.tau.begin(), fd.tau.end());
    out.kappa_min = *kmin;
    out.kappa_max = *kmax;
    out.tau_min = *tmin;
    out.tau_max = *tmax;

    const auto ratio = ratio_series(fd);
    const auto [rmin, rmax] = std::minmax_element(ratio.begin(), ratio.end());
    out.ratio_min = *rmin;
    out.ratio_max = *rmax;
    double sum = 0, sq = 0;
    for (double r : ratio) {
        sum += r;
        sq += r * r;
    }
    out.ratio_mean = sum / static_cast<double>(ratio.size());
    out.ratio_rms = std::sqrt(sq / static_cast<double>(ratio.size()));
    out.planar = std::max(std::abs(out.tau_min), std::abs(out.tau_max)) <= planar_ratio * (1 + out.kappa_max);
    return out;
}

Json to_json(const AnalysisSummary& s)
{
    Json j;
    j["schema"] = schema_version;
    j["command"] = "analyze";
    j["rows"] = s.rows;
    j["grid_nodes"] = s.grid_nodes;
    j["arclength"] = {{"origin", s.s_origin}, {"length", s.length}};
    j["kappa"] = {{"min", s.kappa_min}, {"max", s.kappa_max}};
    j["tau"] = {{"min", s.tau_min}, {"max", s.tau_max}};
    j["ratio"] = {{"min", s.ratio_min}, {"max", s.ratio_max}, {"mean", s.ratio_mean}, {"rms", s.ratio_rms},
                  {"planar", s.planar}};
    if (s.s_column_deviation)
        j["s_column_max_deviation"] = *s.s_column_deviation;
    return j;
}

Json to_json(const VerificationReport& r)
{
    Json j;
    j["schema"] = schema_version;
    j["command"] = "verify";
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json item;
        item["name"] = c.name;
        item["status"] = to_string(c.status);
        item["max_deviation"] = c.max_deviation;
        item["tolerance"] = c.tolerance;
        if (!c.note.empty())
            item["note"] = c.note;
        checks.push_back(std::move(item));
    }
    j["checks"] = std::move(checks);
    j["fitted"] = {{"c", r.fitted_c},
                   {"mu", r.fitted_mu},
                   {"c_squared", r.fitted_c_squared},
                   {"tangential_offset", r.tangential_offset}};
    j["translation"] = vec_json(r.translation);
    j["verdict"] = to_string(r.verdict);
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

Json to_json(const ClassificationReport& r)
{
    Json j;
    j["schema"] = schema_version;
    j["command"] = "classify";
    j["verdict"] = to_string(r.verdict);
    j["residual"] = r.residual;
    switch (r.verdict) {
    case Verdict::helix:
        j["c1"] = r.c1;
        if (r.axis)
            j["axis"] = {{"direction", vec_json(r.axis->X)}, {"theta", r.axis->theta}, {"drift", r.axis->drift}};
        break;
    case Verdict::rectifying:
        j["c2"] = r.c2;
        j["c3"] = r.c3;
        j["a"] = r.a;
        j["b"] = r.b;
        break;
    case Verdict::poly_f_rectifying:
        j["degree"] = r.degree;
        j["polynomial"] = r.polynomial;
        break;
    case Verdict::f_rectifying:
        j["mu_bar"] = r.mu_bar;
        j["offset"] = r.offset;
        break;
    case Verdict::undetermined:
        break;
    }
    Json trials = Json::array();
    for (const auto& t : r.trials)
        trials.push_back({{"model", t.model}, {"residual", t.residual}, {"accepted", t.accepted}});
    j["trials"] = std::move(trials);
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

Json error_json(const std::string& kind, const std::string& message)
{
    Json j;
    j["schema"] = schema_version;
    j["error"] = {{"kind", kind}, {"message", message}};
    return j;
}

std::string svg_polyline(const std::vector<std::pair<double, double>>& points)
{
    if (points.empty())
        throw ValidationError("cannot export an empty curve");
    double xmin = points.front().first, xmax = xmin;
    double ymin = -points.front().second, ymax = ymin;
    for (const auto& [x, y] : points) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, -y);
        ymax = std::max(ymax, -y);
    }
    double extent = std::max(xmax - xmin, ymax - ymin);
    if (!(extent > 0))
        extent = 1;
    const double margin = 0.05 * extent;
    const double w = xmax - xmin + 2 * margin, h = ymax - ymin + 2 * margin;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(xmin - margin) << ' '
        << format_double(ymin - margin) << ' ' << format_double(w) << ' ' << format_double(h) << "\">\n";
    out << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"" << format_double(extent / 400)
        << "\" points=\"";
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (k > 0)
            out << ' ';
        out << format_double(points[k].first) << ',' << format_double(-points[k].second);
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

} // namespace frectify::cli
