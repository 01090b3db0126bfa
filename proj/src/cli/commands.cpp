#include "frectify/cli/commands.hpp"

#include "frectify/classify.hpp"
#include "frectify/cli/reports.hpp"
#include "frectify/fvector.hpp"
#include "frectify/numerics/quadrature.hpp"
#include "frectify/numerics/spline.hpp"
#include "frectify/synthesis.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

namespace frectify::cli {

namespace {

double parse_double(std::string_view text, const std::string& what)
{
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v))
        throw ValidationError(what + ": not a finite number: '" + std::string(text) + "'");
    return v;
}

std::pair<double, double> parse_pair(const std::string& text, const std::string& what)
{
    const auto colon = text.find(':', 1);
    if (colon == std::string::npos)
        throw ValidationError(what + ": expected 'a:b', got '" + text + "'");
    return {parse_double(std::string_view(text).substr(0, colon), what),
            parse_double(std::string_view(text).substr(colon + 1), what)};
}

PrimitiveAnchor parse_anchor(const std::string& text)
{
    const auto [s, v] = parse_pair(text, "--anchor");
    return {s, v};
}

void write_output(const std::string& path, const std::string& content, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw ValidationError("cannot write '" + path + "'");
    file << content;
    if (!file)
        throw ValidationError("failed writing '" + path + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Interval hull(Interval a, double x) { return {std::min(a.lo, x), std::max(a.hi, x)}; }

/// Common flags describing f.
struct FunctionFlags {
    std::string f;
    std::string F;
    std::string domain;
    std::string anchor;

    void add(CLI::App& app, bool required)
    {
        auto* opt = app.add_option("--f", f, "f(s) as an expression in t");
        if (required)
            opt->required();
        app.add_option("--F", F, "analytic primitive of f (checked against quadrature)");
        app.add_option("--domain", domain, "arclength domain lo:hi of f");
        app.add_option("--anchor", anchor, "primitive anchor s:F(s)");
    }

    std::optional<expr::Expr> primitive() const
    {
        return F.empty() ? std::nullopt : std::optional<expr::Expr>(expr::parse(F));
    }
};

/// f over the arclength span of a curve: the domain defaults to the span and
/// the anchor to F(lo) = 0.
FunctionSpec spec_over(const FunctionFlags& flags, Interval span)
{
    const Interval domain = flags.domain.empty() ? span : parse_interval(flags.domain, "--domain");
    const PrimitiveAnchor anchor = flags.anchor.empty() ? PrimitiveAnchor{domain.lo, 0.0} : parse_anchor(flags.anchor);
    return FunctionSpec::make(expr::parse(flags.f), domain, anchor, flags.primitive());
}

/// Finds a domain on which F attains every value of `targets`. Starting from
/// `initial`, the side that raises (or lowers) F is widened with a growing
/// step; a side where f stops being valid is frozen at the last good end.
FunctionSpec auto_domain_spec(const expr::Expr& f, const std::optional<expr::Expr>& F,
                              const std::optional<PrimitiveAnchor>& anchor, Interval initial, Interval targets,
                              double c, double t0)
{
    auto anchor_for = [&](Interval d) {
        if (anchor)
            return *anchor;
        return d.contains(0.0) ? PrimitiveAnchor{0.0, c * std::tan(t0)} : PrimitiveAnchor{d.lo, 0.0};
    };
    auto build = [&](Interval d) -> std::optional<FunctionSpec> {
        try {
            return FunctionSpec::make(f, d, anchor_for(d), F);
        } catch (const ValidationError&) {
            return std::nullopt;
        } catch (const std::domain_error&) {
            return std::nullopt;
        }
    };

    Interval d = anchor ? hull(initial, anchor->s_ref) : initial;
    auto spec = build(d);
    if (!spec)
        throw ValidationError("f is not valid on the default domain [" + format_double(d.lo) + ", " +
                              format_double(d.hi) + "]; pass --domain");
    const double base = std::max(d.width(), 1.0);
    double step[2] = {0.05 * base, 0.05 * base}; // lo, hi
    bool frozen[2] = {false, false};
    for (int iter = 0; iter < 200; ++iter) {
        const Interval r = spec->range();
        const double slack = 1e-12 * (1 + std::max(std::abs(targets.lo), std::abs(targets.hi)));
        const bool need_up = targets.hi > r.hi + slack, need_down = targets.lo < r.lo - slack;
        if (!need_up && !need_down)
            return *spec;
        const bool increasing = spec->sign() > 0;
        const int side = need_up ? (increasing ? 1 : 0) : (increasing ? 0 : 1);
        if (frozen[side])
            break;
        Interval trial = d;
        (side == 1 ? trial.hi : trial.lo) += side == 1 ? step[side] : -step[side];
        if (auto next = build(trial)) {
            d = trial;
            spec = std::move(next);
            step[side] *= 2;
        } else {
            step[side] /= 4;
            if (step[side] < 1e-9 * base)
                frozen[side] = true;
        }
    }
    throw ValidationError("could not find an arclength domain on which F reaches c*tan(t + t0) over the t-range; "
                          "pass --domain and --anchor");
}

int cmd_synth(const FunctionFlags& flags, double c, double t0, const std::vector<std::string>& y,
              const std::string& t_range_text, int n, double guard, const std::string& sign_text,
              const std::string& out_path, std::ostream& out)
{
    if (n < synth_min_n)
        throw ValidationError("n below minimum: n = " + std::to_string(n) + " < " + std::to_string(synth_min_n));
    if (!(c > 0))
        throw ValidationError("c must be positive");
    const Interval t_range = parse_interval(t_range_text, "--t-range");
    const double pole = std::numbers::pi / 2 - guard;
    if (std::abs(t_range.lo + t0) > pole || std::abs(t_range.hi + t0) > pole)
        throw SingularityGuardError("t + t0 comes within " + format_double(guard) + " of a pole of sec");

    IntegralSign sign;
    if (sign_text == "corrected")
        sign = IntegralSign::corrected;
    else if (sign_text == "published")
        sign = IntegralSign::as_published;
    else
        throw ValidationError("--integral-sign must be 'corrected' or 'published'");

    const auto f = expr::parse(flags.f);
    const auto F = flags.primitive();
    const std::optional<PrimitiveAnchor> anchor =
        flags.anchor.empty() ? std::nullopt : std::optional<PrimitiveAnchor>(parse_anchor(flags.anchor));
    FunctionSpec spec = [&] {
        if (!flags.domain.empty()) {
            const Interval d = parse_interval(flags.domain, "--domain");
            const PrimitiveAnchor a =
                anchor ? *anchor : (d.contains(0.0) ? PrimitiveAnchor{0.0, c * std::tan(t0)} : PrimitiveAnchor{d.lo, 0.0});
            return FunctionSpec::make(f, d, a, F);
        }
        const Interval targets{c * std::tan(t_range.lo + t0), c * std::tan(t_range.hi + t0)};
        return auto_domain_spec(f, F, anchor, t_range, targets, c, t0);
    }();

    const auto Y = SphericalCurve::make(expr::parse(y[0]), expr::parse(y[1]), expr::parse(y[2]), t_range);
    SynthesisConfig cfg{.spec = spec, .c = c, .t0 = t0, .t_range = t_range, .n = n, .guard = guard, .sign = sign};
    const auto curve = synthesize(cfg, Y);

    const auto t = curve.t_nodes();
    std::vector<double> s(t.size());
    for (std::size_t k = 0; k < t.size(); ++k)
        s[k] = curve.arclength(t[k]);
    std::ostringstream csv;
    write_curve_csv(csv, t, s, curve.nodes());
    write_output(out_path, csv.str(), out);
    return exit_ok;
}

/// Frame interpolated from the arclength grid to each row.
FrenetData frame_at_rows(const FrenetData& fd, const std::vector<double>& s_rows)
{
    using numerics::CubicSpline;
    using numerics::SplineEnd;
    const CubicSpline<double, Vec3> T(fd.s, fd.T, SplineEnd::not_a_knot);
    const CubicSpline<double, Vec3> N(fd.s, fd.N, SplineEnd::not_a_knot);
    const CubicSpline<double, double> kappa(fd.s, fd.kappa, SplineEnd::not_a_knot);
    const CubicSpline<double, double> tau(fd.s, fd.tau, SplineEnd::not_a_knot);

    FrenetData out;
    out.s = s_rows;
    for (double s : s_rows) {
        const double u = std::clamp(s, fd.s.front(), fd.s.back());
        const Vec3 t = T(u).normalized();
        Vec3 n = N(u);
        n = (n - n.dot(t) * t).normalized();
        out.T.push_back(t);
        out.N.push_back(n);
        out.B.push_back(t.cross(n));
        out.kappa.push_back(kappa(u));
        out.tau.push_back(tau(u));
    }
    return out;
}

int cmd_analyze(const std::string& file, int n, const std::string& out_path, const std::string& summary_path,
                std::ostream& out)
{
    const auto c = ingest(read_curve_csv_file(file), n);
    const auto s = row_arclength(c);
    const auto frame = frame_at_rows(c.fd, s);

    AnalysisSummary summary = summarize(c.fd, c.file.size());
    if (c.file.s) {
        double dev = 0;
        for (std::size_t k = 0; k < s.size(); ++k)
            dev = std::max(dev, std::abs(s[k] - (*c.file.s)[k]));
        summary.s_column_deviation = dev;
    }

    std::ostringstream csv;
    write_curve_csv(csv, c.file.t, s, c.file.points, &frame);
    write_output(out_path, csv.str(), out);
    if (!summary_path.empty())
        write_output(summary_path, dump(to_json(summary)), out);
    return exit_ok;
}

double default_verify_tol()
{
    if (const char* env = std::getenv("FRECTIFY_TOL"); env && *env) {
        const double tol = parse_double(env, "FRECTIFY_TOL");
        if (!(tol > 0))
            throw ValidationError("FRECTIFY_TOL must be positive");
        return tol;
    }
    return verify_tol_sampled;
}

Interval grid_span(const ArcLengthCurve& grid) { return {grid.s_origin, grid.s(grid.size() - 1)}; }

int cmd_verify(const std::string& file, const FunctionFlags& flags, std::optional<double> tol, double planar_tau,
               int n, const std::string& out_path, std::ostream& out)
{
    const double tolerance = tol ? *tol : default_verify_tol();
    if (!(tolerance > 0))
        throw ValidationError("--tol must be positive");
    const auto c = ingest(read_curve_csv_file(file), n);
    const auto spec = spec_over(flags, grid_span(c.grid));
    const auto fp = compute_f_position(c.fd, c.grid, spec);
    const auto report = verify_f_rectifying(fp, spec, VerifyOptions{.tol = tolerance, .planar_tau = planar_tau});
    write_output(out_path, dump(to_json(report)), out);
    return report.verdict == CheckStatus::pass ? exit_ok : exit_semantic_fail;
}

int cmd_classify(const std::string& file, const FunctionFlags& flags, const ClassifyOptions& options, int n,
                 const std::string& out_path, std::ostream& out)
{
    const auto c = ingest(read_curve_csv_file(file), n);
    std::optional<FunctionSpec> candidate;
    if (!flags.f.empty())
        candidate = spec_over(flags, grid_span(c.grid));
    const auto report = classify(c.fd, candidate, options);
    write_output(out_path, dump(to_json(report)), out);
    return report.verdict == Verdict::undetermined ? exit_semantic_fail : exit_ok;
}

int cmd_export(const std::string& file, const std::string& plane, const std::string& out_path, std::ostream& out)
{
    int a = 0, b = 1;
    if (plane == "xy")
        a = 0, b = 1;
    else if (plane == "xz")
        a = 0, b = 2;
    else if (plane == "yz")
        a = 1, b = 2;
    else
        throw ValidationError("--plane must be xy, xz or yz");
    const auto curve = read_curve_csv_file(file);
    std::vector<std::pair<double, double>> points;
    points.reserve(curve.size());
    for (const auto& p : curve.points)
        points.emplace_back(p(a), p(b));
    write_output(out_path, svg_polyline(points), out);
    return exit_ok;
}

} // namespace

Interval parse_interval(const std::string& text, const std::string& what)
{
    const auto [lo, hi] = parse_pair(text, what);
    if (!(lo < hi))
        throw ValidationError(what + ": need lo < hi, got '" + text + "'");
    return {lo, hi};
}

IngestedCurve ingest(CurveFile file, int grid_intervals)
{
    if (file.size() < 16)
        throw ValidationError("curve file needs at least 16 rows, got " + std::to_string(file.size()));
    if (grid_intervals < 0)
        throw ValidationError("--n must be non-negative");
    const int n = grid_intervals > 0 ? grid_intervals : std::max(256, 2 * static_cast<int>(file.size() - 1));
    auto curve = ParamCurve::sampled(file.t, file.points, SampledInterpolation::local_polynomial);
    const double origin = file.s ? file.s->front() : 0.0;
    auto grid = resample_arclength(curve, n, ResampleOptions{.s_origin = origin});
    auto fd = frenet(grid);
    return IngestedCurve{std::move(file), std::move(curve), std::move(grid), std::move(fd)};
}

std::vector<double> row_arclength(const IngestedCurve& c)
{
    const auto& t = c.file.t;
    std::vector<double> s(t.size(), c.grid.s_origin);
    auto speed = [&](double u) { return c.curve.derivative(u, 1).norm(); };
    for (std::size_t k = 1; k < t.size(); ++k)
        s[k] = s[k - 1] + numerics::adaptive_simpson(speed, t[k - 1], t[k], 1e-12);
    return s;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Construct, verify and classify f-rectifying space curves", "frectify"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize an f-rectifying curve from f, c, t0 and a spherical curve Y");
    FunctionFlags synth_f;
    synth_f.add(*synth, true);
    double c = 1.0, t0 = 0.0, guard = 0.05;
    std::vector<std::string> y;
    std::string t_range = "-0.5:0.5", sign = "corrected", synth_out;
    int synth_n = 256;
    synth->add_option("--c", c, "constant c > 0")->capture_default_str();
    synth->add_option("--t0", t0, "phase t0")->capture_default_str();
    synth->add_option("--y", y, "components of Y(t)")->expected(3)->required();
    synth->add_option("--t-range", t_range, "parameter range a:b")->capture_default_str();
    synth->add_option("--n", synth_n, "parameter intervals (rows - 1)")->capture_default_str();
    synth->add_option("--guard", guard, "minimum distance of t + t0 from a pole of sec")->capture_default_str();
    synth->add_option("--integral-sign", sign, "corrected | published")->capture_default_str();
    synth->add_option("--out,-o", synth_out, "output CSV (default stdout)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Frenet frame, curvature and torsion of a curve file");
    std::string analyze_file, analyze_out, analyze_summary;
    int analyze_n = 0;
    analyze->add_option("file", analyze_file, "curve CSV")->required();
    analyze->add_option("--out,-o", analyze_out, "frame CSV (default stdout)");
    analyze->add_option("--summary", analyze_summary, "summary JSON");
    analyze->add_option("--n", analyze_n, "arclength grid intervals (0 = automatic)");

    // verify
    auto* verify = app.add_subcommand("verify", "check the f-rectifying characterisation for a given f");
    std::string verify_file, verify_out;
    FunctionFlags verify_f;
    verify_f.add(*verify, true);
    std::optional<double> verify_tol;
    double planar_tau = VerifyOptions{}.planar_tau;
    int verify_n = 0;
    verify->add_option("file", verify_file, "curve CSV")->required();
    verify->add_option("--tol", verify_tol, "constancy tolerance (default FRECTIFY_TOL or 1e-2)");
    verify->add_option("--planar-tau", planar_tau, "torsion below which the binormal check is degenerate")
        ->capture_default_str();
    verify->add_option("--n", verify_n, "arclength grid intervals (0 = automatic)");
    verify->add_option("--out,-o", verify_out, "report JSON (default stdout)");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "classify a curve by its torsion/curvature ratio");
    std::string classify_file, classify_out;
    FunctionFlags classify_f;
    classify_f.add(*classify_cmd, false);
    ClassifyOptions copts;
    int classify_n = 0;
    classify_cmd->add_option("file", classify_file, "curve CSV")->required();
    classify_cmd->add_option("--tol", copts.tol, "relative RMS residual accepted")->capture_default_str();
    classify_cmd->add_option("--n-max", copts.n_max, "highest polynomial degree of the ratio")->capture_default_str();
    classify_cmd->add_option("--tol-coeff", copts.tol_coeff, "minimum helix/rectifying coefficient")
        ->capture_default_str();
    classify_cmd->add_option("--edge-nodes", copts.edge_nodes, "nodes left out at each end")->capture_default_str();
    classify_cmd->add_option("--n", classify_n, "arclength grid intervals (0 = automatic)");
    classify_cmd->add_option("--out,-o", classify_out, "report JSON (default stdout)");

    // export
    auto* export_cmd = app.add_subcommand("export", "project a curve file onto a coordinate plane as SVG");
    std::string export_file, plane = "xy", export_out;
    export_cmd->add_option("file", export_file, "curve CSV")->required();
    export_cmd->add_option("--plane", plane, "xy | xz | yz")->capture_default_str();
    export_cmd->add_option("--out,-o", export_out, "SVG file (default stdout)");

    auto fail = [&](const std::string& kind, const std::string& message, int code) {
        err << error_json(kind, message).dump() << '\n';
        return code;
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return fail("validation", e.what(), exit_invalid);
    }

    try {
        if (synth->parsed())
            return cmd_synth(synth_f, c, t0, y, t_range, synth_n, guard, sign, synth_out, out);
        if (analyze->parsed())
            return cmd_analyze(analyze_file, analyze_n, analyze_out, analyze_summary, out);
        if (verify->parsed())
            return cmd_verify(verify_file, verify_f, verify_tol, planar_tau, verify_n, verify_out, out);
        if (classify_cmd->parsed())
            return cmd_classify(classify_file, classify_f, copts, classify_n, classify_out, out);
        if (export_cmd->parsed())
            return cmd_export(export_file, plane, export_out, out);
    } catch (const ValidationError& e) {
        return fail("validation", e.what(), exit_invalid);
    } catch (const expr::ParseError& e) {
        return fail("validation", e.what(), exit_invalid);
    } catch (const NumericalError& e) {
        return fail("numerical", e.what(), exit_numerical);
    } catch (const std::domain_error& e) {
        return fail("numerical", e.what(), exit_numerical);
    } catch (const std::invalid_argument& e) {
        return fail("validation", e.what(), exit_invalid);
    }
    return fail("validation", "no command given", exit_invalid);
}

} // namespace frectify::cli
