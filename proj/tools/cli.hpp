#pragma once

// Command-line front end. `run` is kept separate from main so the tests can
// drive it in-process.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stickdist/stickdist.hpp"

namespace stickdist::cli {

using json = nlohmann::ordered_json;

/// Bad flags or flag combinations; maps to exit code 2.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string shape;
    std::string command;
    double stick_length = 2.0;
    std::optional<double> tol;
    std::uint64_t samples = 1000000;
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
    std::optional<double> from;
    std::optional<double> to;
    int steps = 256;
    std::string format = "json";
    int precision = 17;
    int n = 0;
    std::vector<double> sides;
    std::optional<double> r1;
    std::string mode = "numeric";
    std::optional<int> k;

    /// (L/2)^2: canonical area -> area for this stick.
    [[nodiscard]] double area_scale() const { return 0.25 * stick_length * stick_length; }

    void validate() const
    {
        if (!(stick_length > 0.0) || !std::isfinite(stick_length)) {
            throw usage_error("--stick-length must be positive");
        }
        if (tol && !(*tol > 0.0)) {
            throw usage_error("--tol must be positive");
        }
        if (samples < 1) {
            throw usage_error("--samples must be >= 1");
        }
        if (workers < 1) {
            throw usage_error("--workers must be >= 1");
        }
        if (steps < 2) {
            throw usage_error("--steps must be >= 2");
        }
        if (from && to && !(*from < *to)) {
            throw usage_error("--from must be below --to");
        }
        if (format != "json" && format != "csv") {
            throw usage_error("--format must be csv or json");
        }
        if (precision < 1 || precision > 17) {
            throw usage_error("--precision must lie in [1, 17]");
        }
    }

    [[nodiscard]] double tol_or(double fallback) const { return tol.value_or(fallback); }
};

namespace detail {

inline std::string fmt(double x, int precision)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

inline std::vector<double> grid(double lo, double hi, int steps)
{
    std::vector<double> g(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        g[static_cast<std::size_t>(i)] = (i == steps - 1) ? hi : lo + (hi - lo) * i / (steps - 1);
    }
    return g;
}

inline void emit(std::ostream& out, const RunConfig& cfg, const json& meta, const Table& table)
{
    if (cfg.format == "csv") {
        for (std::size_t j = 0; j < table.columns.size(); ++j) {
            out << (j ? "," : "") << table.columns[j];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                out << (j ? "," : "") << fmt(row[j], cfg.precision);
            }
            out << '\n';
        }
        return;
    }
    json obj = meta;
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        json col = json::array();
        for (const auto& row : table.rows) {
            col.push_back(row[j]);
        }
        obj[table.columns[j]] = std::move(col);
    }
    out << obj.dump(2) << '\n';
}

// Scalar results: JSON object, or a one-row CSV of the scalar fields.
inline void emit(std::ostream& out, const RunConfig& cfg, const json& obj)
{
    if (cfg.format == "csv") {
        std::vector<std::string> keys, values;
        for (const auto& [key, value] : obj.items()) {
            if (value.is_number_float()) {
                keys.push_back(key);
                values.push_back(fmt(value.get<double>(), cfg.precision));
            } else if (value.is_primitive()) {
                keys.push_back(key);
                values.push_back(value.is_string() ? value.get<std::string>() : value.dump());
            }
        }
        for (std::size_t j = 0; j < keys.size(); ++j) {
            out << (j ? "," : "") << keys[j];
        }
        out << '\n';
        for (std::size_t j = 0; j < values.size(); ++j) {
            out << (j ? "," : "") << values[j];
        }
        out << '\n';
        return;
    }
    out << obj.dump(2) << '\n';
}

inline Table tabulate(const std::vector<std::string>& columns, const std::vector<double>& xs,
                      const std::function<double(double)>& f)
{
    Table t{columns, {}};
    t.rows.reserve(xs.size());
    for (double x : xs) {
        t.rows.push_back({x, f(x)});
    }
    return t;
}

// Monte Carlo summary; `scale` converts canonical values to output units.
inline void emit_stats(std::ostream& out, const RunConfig& cfg, const mc::SampleStats& s, double scale,
                       json extra = json::object())
{
    json obj = std::move(extra);
    obj["trials"] = s.trials;
    obj["accepted"] = s.accepted;
    obj["failures"] = s.failures;
    obj["acceptance"] = s.acceptance();
    obj["acceptance_se"] = s.acceptance_se();
    obj["mean"] = scale * s.mean;
    obj["mean_se"] = scale * s.mean_se();
    if (!s.values.empty()) {
        const mc::MedianEstimate m = mc::empirical_median(s.values);
        obj["median"] = scale * m.median;
        obj["median_error"] = scale * m.error;
    }
    obj["seed"] = *cfg.seed;
    obj["workers"] = cfg.workers;
    obj["stick_length"] = cfg.stick_length;
    if (cfg.format == "csv") {
        Table t{{"bin_center", "count", "density"}, {}};
        const double width = s.histogram.bin_width() * scale;
        for (std::size_t i = 0; i < s.histogram.counts.size(); ++i) {
            const double c = static_cast<double>(s.histogram.counts[i]);
            const double dens = s.accepted ? c / (static_cast<double>(s.accepted) * width) : 0.0;
            t.rows.push_back({scale * s.histogram.bin_center(i), c, dens});
        }
        emit(out, cfg, obj, t);
        return;
    }
    obj["histogram"] = {{"lo", scale * s.histogram.lo},
                        {"hi", scale * s.histogram.hi},
                        {"counts", s.histogram.counts}};
    emit(out, cfg, obj);
}

inline void require_sides(const RunConfig& cfg, std::size_t count, const char* flag)
{
    if (count && cfg.sides.size() != count) {
        throw usage_error(std::string(flag) + " needs exactly " + std::to_string(count) + " values");
    }
    if (cfg.sides.size() < 3) {
        throw usage_error(std::string(flag) + " needs at least 3 values");
    }
}

// Side lengths given for a stick of length L, rescaled to the canonical stick.
inline std::vector<double> canonical_sides(const RunConfig& cfg)
{
    std::vector<double> out;
    for (double s : cfg.sides) {
        out.push_back(s * 2.0 / cfg.stick_length);
    }
    return out;
}

// ---------------------------------------------------------------------------

inline void triangle_command(std::ostream& out, const RunConfig& cfg)
{
    const double s = cfg.area_scale();
    const double top = triangle::max_area * s;
    const std::string& c = cfg.command;
    if (c == "pdf") {
        const auto xs = grid(cfg.from.value_or(1e-6 * s), cfg.to.value_or(0.19245 * s), cfg.steps);
        emit(out, cfg, {{"stick_length", cfg.stick_length}},
             tabulate({"zeta", "pdf"}, xs, [&](double z) { return triangle::pdf_or_zero(z / s) / s; }));
    } else if (c == "cdf") {
        const auto xs = grid(cfg.from.value_or(0.0), cfg.to.value_or(top), cfg.steps);
        emit(out, cfg, {{"stick_length", cfg.stick_length}}, tabulate({"zeta", "cdf"}, xs, [&](double z) {
                 const double zc = z / s;
                 return zc <= 0.0 ? 0.0 : zc >= triangle::max_area ? 1.0 : triangle::cdf(zc);
             }));
    } else if (c == "median") {
        emit(out, cfg, {{"median", s * triangle::median(cfg.tol_or(1e-15))}, {"stick_length", cfg.stick_length}});
    } else if (c == "moments") {
        const double tol = cfg.tol_or(1e-12);
        json obj{{"normalization", triangle::total_probability(tol)},
                 {"mean", s * triangle::moment(1, tol)},
                 {"mean_square", s * s * triangle::moment(2, tol)},
                 {"mean_exact", s * 4.0 * std::numbers::pi / 105.0},
                 {"mean_square_exact", s * s / 60.0}};
        if (cfg.k) {
            obj["k"] = *cfg.k;
            obj["moment_k"] = std::pow(s, *cfg.k) * triangle::moment(*cfg.k, tol);
        }
        obj["stick_length"] = cfg.stick_length;
        emit(out, cfg, obj);
    } else if (c == "simulate") {
        emit_stats(out, cfg, triangle::sample_parallel(*cfg.seed, cfg.samples, cfg.workers, true), s);
    } else {
        throw usage_error("triangle does not support '" + c + "'");
    }
}

inline void quad_command(std::ostream& out, const RunConfig& cfg)
{
    namespace q = quadrilateral;
    const double s = cfg.area_scale();
    const std::string& c = cfg.command;
    if (c == "pdf") {
        const double tol = cfg.tol_or(1e-10);
        const auto xs = grid(cfg.from.value_or(1e-6 * s), cfg.to.value_or(0.2499 * s), cfg.steps);
        emit(out, cfg, {{"stick_length", cfg.stick_length}, {"tol", tol}},
             tabulate({"area", "pdf"}, xs, [&](double m) {
                 const double mc = m / s;
                 return (mc > 0.0 && mc < q::max_area) ? q::area_pdf(mc, tol) / s : 0.0;
             }));
    } else if (c == "cdf") {
        const double tol = cfg.tol_or(1e-9);
        const auto xs = grid(cfg.from.value_or(0.0), cfg.to.value_or(q::max_area * s), cfg.steps);
        emit(out, cfg, {{"stick_length", cfg.stick_length}, {"tol", tol}},
             tabulate({"area", "cdf"}, xs, [&](double m) {
                 return q::area_cdf(std::clamp(m / s, 0.0, q::max_area), tol);
             }));
    } else if (c == "median") {
        q::MedianMode mode;
        if (cfg.mode == "numeric") {
            mode = q::MedianMode::numeric;
        } else if (cfg.mode == "montecarlo") {
            mode = q::MedianMode::montecarlo;
        } else {
            throw usage_error("--mode must be numeric or montecarlo");
        }
        const double tol = cfg.tol_or(1e-8);
        const q::MedianResult r = q::quad_median_area(mode, cfg.samples, tol, *cfg.seed, cfg.workers);
        json obj{{"median", s * r.median}, {"error", s * r.error}, {"mode", cfg.mode}};
        if (mode == q::MedianMode::montecarlo) {
            obj["samples"] = r.samples;
            obj["seed"] = *cfg.seed;
            obj["workers"] = cfg.workers;
        } else {
            obj["tol"] = tol;
        }
        obj["stick_length"] = cfg.stick_length;
        emit(out, cfg, obj);
    } else if (c == "moments") {
        const double tol = cfg.tol_or(1e-9);
        const double norm = q::integrate_against_density([](double) { return 1.0; }, 0.0, q::max_area_sq, tol);
        const double m1 = q::integrate_against_density([](double r) { return std::sqrt(r); }, 0.0,
                                                       q::max_area_sq, tol);
        const double m2 = q::integrate_against_density([](double r) { return r; }, 0.0, q::max_area_sq, tol);
        emit(out, cfg, {{"normalization", norm},
                        {"mean", s * m1},
                        {"mean_square", s * s * m2},
                        {"mean_exact", s * q::mean_area},
                        {"mean_square_exact", s * s * q::mean_area_sq},
                        {"tol", tol},
                        {"stick_length", cfg.stick_length}});
    } else if (c == "simulate") {
        emit_stats(out, cfg, q::sample_area(*cfg.seed, cfg.samples, cfg.workers, true), s);
    } else if (c == "angle-density") {
        const auto xs = grid(cfg.from.value_or(0.01), cfg.to.value_or(q::pi - 0.01), cfg.steps);
        emit(out, cfg, json::object(), tabulate({"alpha", "density"}, xs, [](double x) {
                 return (x > 0.0 && x < q::pi) ? q::angle_density(x) : 0.0;
             }));
    } else if (c == "tent") {
        const auto xs = grid(cfg.from.value_or(0.05), cfg.to.value_or(q::pi - 0.05), cfg.steps);
        Table t{{"x", "y", "density"}, {}};
        for (double x : xs) {
            for (double y : xs) {
                const bool inside = x > 0.0 && x < q::pi && y > 0.0 && y < q::pi;
                t.rows.push_back({x, y, inside ? q::tent_density(x, y) : 0.0});
            }
        }
        emit(out, cfg, json::object(), t);
    } else if (c == "omega") {
        if (!cfg.r1) {
            throw usage_error("omega needs --r1");
        }
        // r1 is an area^2 for this stick; the endpoints are side lengths
        const double half = 0.5 * cfg.stick_length;
        const q::OmegaInterval w = q::omega_interval(*cfg.r1 / (s * s), cfg.tol_or(1e-14));
        json obj{{"r1", *cfg.r1}, {"empty", w.empty}};
        if (!w.empty) {
            obj["lo"] = half * w.lo;
            obj["hi"] = half * w.hi;
        }
        obj["stick_length"] = cfg.stick_length;
        emit(out, cfg, obj);
    } else if (c == "area") {
        require_sides(cfg, 4, "--sides");
        const auto v = canonical_sides(cfg);
        const q::QuadSides sides{v[0], v[1], v[2], v[3]};
        const q::QuadAngleConfig ang = q::angles_from_sides(sides);
        emit(out, cfg, {{"area", s * q::brahmagupta_area(sides)},
                        {"alpha1", ang.alpha1},
                        {"alpha2", ang.alpha2},
                        {"stick_length", cfg.stick_length}});
    } else {
        throw usage_error("quad does not support '" + c + "'");
    }
}

inline void ngon_command(std::ostream& out, const RunConfig& cfg)
{
    const double s = cfg.area_scale();
    const std::string& c = cfg.command;
    if (c == "prob") {
        if (cfg.n < 3) {
            throw usage_error("prob needs --n >= 3");
        }
        const ngon::Rational p = ngon::formable_probability(cfg.n);
        emit(out, cfg, {{"probability", p.str()}, {"decimal", p.value()}});
    } else if (c == "simulate") {
        if (cfg.n < 3) {
            throw usage_error("simulate needs --n >= 3");
        }
        const auto stats = ngon::simulate_ngon(cfg.n, *cfg.seed, cfg.samples, cfg.workers, true);
        emit_stats(out, cfg, stats, s,
                   {{"n", cfg.n}, {"formable_exact", ngon::formable_probability(cfg.n).value()}});
    } else if (c == "area") {
        require_sides(cfg, 0, "--pieces");
        const ngon::CyclicSolution sol = ngon::cyclic_polygon_area({canonical_sides(cfg)}, cfg.tol_or(1e-12));
        json angles = sol.central_angles;
        emit(out, cfg, {{"area", s * sol.area},
                        {"circumradius", 0.5 * cfg.stick_length * sol.circumradius},
                        {"center_inside", sol.center_inside},
                        {"residual", sol.residual},
                        {"central_angles", angles},
                        {"stick_length", cfg.stick_length}});
    } else {
        throw usage_error("ngon does not support '" + c + "'");
    }
}

inline const std::vector<std::string>& commands_for(const std::string& shape)
{
    static const std::vector<std::string> tri{"pdf", "cdf", "median", "moments", "simulate"};
    static const std::vector<std::string> quad{"pdf",      "cdf",           "median", "moments", "simulate",
                                               "angle-density", "tent", "omega",  "area"};
    static const std::vector<std::string> ng{"prob", "simulate", "area"};
    return shape == "triangle" ? tri : shape == "quad" ? quad : ng;
}

inline std::string describe(const std::string& command)
{
    static const std::map<std::string, std::string> text{
        {"pdf", "area density on a grid"},
        {"cdf", "area distribution function on a grid"},
        {"median", "median area"},
        {"moments", "normalization, mean and mean square of the area"},
        {"simulate", "Monte Carlo over broken sticks"},
        {"angle-density", "density of one vertex angle on a grid"},
        {"tent", "joint density of two adjacent angles on a square grid"},
        {"omega", "r2 range where the middle cubic root is negative (--r1)"},
        {"area", "cyclic area for given side lengths"},
        {"prob", "exact probability that n pieces form a polygon (--n)"},
    };
    return text.at(command);
}

inline void add_flags(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--tol", cfg.tol, "tolerance (default depends on the command)");
    sub->add_option("--stick-length", cfg.stick_length, "stick length L; areas scale as (L/2)^2");
    sub->add_option("--samples", cfg.samples, "Monte Carlo trials");
    sub->add_option("--seed", cfg.seed, "random seed (falls back to STICKDIST_SEED, then 1)");
    sub->add_option("--workers", cfg.workers, "worker threads; results depend on this count");
    sub->add_option("--from", cfg.from, "grid start");
    sub->add_option("--to", cfg.to, "grid end");
    sub->add_option("--steps", cfg.steps, "grid points");
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("--precision", cfg.precision, "significant digits in CSV output");
    sub->add_option("--n", cfg.n, "number of pieces");
    sub->add_option("--sides,--pieces", cfg.sides, "piece lengths, comma separated")->delimiter(',');
    sub->add_option("--r1", cfg.r1, "area^2 value for omega");
    sub->add_option("--mode", cfg.mode, "numeric or montecarlo (quad median)");
    sub->add_option("--k", cfg.k, "extra moment order (triangle moments)");
}

inline std::uint64_t seed_from_env()
{
    const char* env = std::getenv("STICKDIST_SEED");
    if (!env || !*env) {
        return 1;
    }
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (errno || *end != '\0') {
        throw usage_error(std::string("STICKDIST_SEED is not an unsigned integer: ") + env);
    }
    return v;
}

} // namespace detail

/// Runs one invocation. Returns 0 on success, 2 on usage errors, 1 on
/// numeric failures.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Area distributions of broken-stick polygons", "stickdist"};
    app.require_subcommand(1);
    for (const std::string shape : {"triangle", "quad", "ngon"}) {
        CLI::App* s = app.add_subcommand(shape, shape + " computations");
        s->require_subcommand(1);
        for (const std::string& command : detail::commands_for(shape)) {
            CLI::App* leaf = s->add_subcommand(command, detail::describe(command));
            detail::add_flags(leaf, cfg);
            leaf->callback([&cfg, shape, command] {
                cfg.shape = shape;
                cfg.command = command;
            });
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        std::ostringstream help;
        app.exit(e, help, err);
        out << help.str();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::ostringstream sink;
        app.exit(e, sink, err);
        return 2;
    }

    try {
        if (!cfg.seed) {
            cfg.seed = detail::seed_from_env();
        }
        cfg.validate();
        if (cfg.shape == "triangle") {
            detail::triangle_command(out, cfg);
        } else if (cfg.shape == "quad") {
            detail::quad_command(out, cfg);
        } else {
            detail::ngon_command(out, cfg);
        }
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const stickdist::domain_error& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace stickdist::cli
