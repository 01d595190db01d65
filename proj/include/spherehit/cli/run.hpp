// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "spherehit/cli/grid.hpp"
#include "spherehit/cli/records.hpp"
#include "spherehit/fpt/first_passage.hpp"
#include "spherehit/jointdist/drift.hpp"
#include "spherehit/jointdist/joint.hpp"
#include "spherehit/jointdist/probability.hpp"
#include "spherehit/mcverify/estimate.hpp"
#include "spherehit/verify/checks.hpp"

namespace spherehit::cli {

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"laplace",      "density",     "marginal",  "band",
                                                   "tail",         "asymp",       "drift-laplace",
                                                   "drift-density", "drift-band", "drift-tail", "drift-asymp",
                                                   "mc",           "verify"};
    return names;
}

struct RunSpec {
    std::string command;
    fpt::Geometry geometry;
    std::optional<jointdist::Drift> drift;
    std::vector<double> t_grid;
    std::vector<double> x_grid;
    std::vector<double> lambda_grid;
    double u_axis = 0.0;
    double u_perp = 0.0;
    double gamma = 0.0;
    specfun::Band band;
    double t1 = 0.0;
    double t2 = std::numeric_limits<double>::infinity();
    std::string functional = "density";  // marginal: density, cdf, tail
    specfun::SeriesControl series;
    fpt::InversionControl inversion;
    mcverify::McConfig mc;
    std::string suite = "all";
    std::int64_t verify_mc_paths = 1000000;
};

/// Records plus the names of the operations that failed.
struct RunOutput {
    std::vector<Record> records;
    std::vector<std::string> failures;
};

namespace detail {

inline Fields geometry_fields(const RunSpec& s) {
    Fields f = {{"d", std::int64_t{s.geometry.d}}, {"a", s.geometry.a}, {"r", s.geometry.r}};
    if (s.drift) {
        f.emplace_back("v1", s.drift->v1);
        f.emplace_back("v_perp", s.drift->v_perp);
    }
    return f;
}

inline Fields series_meta(const jointdist::SeriesResult& r) {
    return {{"status", std::string("ok")}, {"terms", std::int64_t{r.terms}}, {"clamped", std::int64_t{r.clamped}}};
}

inline Fields failed_meta(const std::exception& e, Fields shape) {
    for (auto& [k, v] : shape) {
        if (k == "status")
            v = std::string("error: ") + e.what();
        else if (std::holds_alternative<double>(v))
            v = std::numeric_limits<double>::quiet_NaN();
        else if (std::holds_alternative<std::int64_t>(v))
            v = std::int64_t{0};
    }
    return shape;
}

// Evaluates one record; numerical failures are recorded, not thrown.
template <class Eval>
void evaluate(RunOutput& out, const std::string& op, Fields inputs, const Fields& meta_shape, Eval eval) {
    Record rec;
    rec.inputs = std::move(inputs);
    try {
        eval(rec);
    } catch (const TruncationError& e) {
        rec.value = rec.error_bound_or_stderr = std::numeric_limits<double>::quiet_NaN();
        rec.convergence_metadata = failed_meta(e, meta_shape);
        out.failures.push_back(op + ": " + e.what());
    } catch (const InversionError& e) {
        rec.value = rec.error_bound_or_stderr = std::numeric_limits<double>::quiet_NaN();
        rec.convergence_metadata = failed_meta(e, meta_shape);
        out.failures.push_back(op + ": " + e.what());
    }
    out.records.push_back(std::move(rec));
}

inline Fields with(Fields f, Fields more) {
    f.insert(f.end(), more.begin(), more.end());
    return f;
}

inline void require_grid(const std::vector<double>& g, const char* what) {
    if (g.empty()) throw UsageError(std::string("missing grid: ") + what);
}

inline Fields series_shape() { return series_meta({}); }

}  // namespace detail

/// Executes one command. Usage problems throw UsageError (or DomainError /
/// ConfigError for invalid parameters); numerical failures are collected in
/// RunOutput::failures.
inline RunOutput run(const RunSpec& s) {
    using namespace jointdist;
    RunOutput out;
    const auto& g = s.geometry;
    const std::string& cmd = s.command;
    const bool drift_cmd = cmd.rfind("drift-", 0) == 0;
    if (drift_cmd && !s.drift) throw UsageError(cmd + " needs --v1 and/or --vperp");
    if (!drift_cmd && s.drift && cmd != "mc" && cmd != "verify")
        throw UsageError(cmd + " takes no drift; use drift-" + cmd);
    if (cmd != "verify") fpt::validate(g);
    const Fields base = detail::geometry_fields(s);
    const auto& ctrl = s.series;
    const auto& inv = s.inversion;

    if (cmd == "laplace" || cmd == "drift-laplace") {
        detail::require_grid(s.lambda_grid, "--lambda");
        for (double lambda : s.lambda_grid)
            detail::evaluate(out, cmd,
                             detail::with(base, {{"lambda", lambda}, {"u_axis", s.u_axis}, {"u_perp", s.u_perp}}),
                             detail::series_shape(), [&](Record& rec) {
                                 const auto r = s.drift ? drift_joint_laplace(g, *s.drift, lambda, s.u_axis, s.u_perp,
                                                                              ctrl, s.gamma)
                                                        : joint_laplace(g, lambda, s.u_axis, s.u_perp, ctrl);
                                 rec.value = r.value;
                                 rec.error_bound_or_stderr = r.residual_bound;
                                 rec.convergence_metadata = detail::series_meta(r);
                             });
    } else if (cmd == "density" || cmd == "drift-density") {
        detail::require_grid(s.t_grid, "--t");
        detail::require_grid(s.x_grid, "--x");
        for (double t : s.t_grid)
            for (double x : s.x_grid)
                detail::evaluate(out, cmd, detail::with(base, {{"t", t}, {"x", x}}), detail::series_shape(),
                                 [&](Record& rec) {
                                     if (s.drift) {
                                         const auto dd = drift_joint_density(g, *s.drift, t, x, ctrl, inv);
                                         rec.value = dd.averaged(g.d);
                                         const double scale = dd.psi.value != 0.0 ? rec.value / dd.psi.value : 0.0;
                                         rec.error_bound_or_stderr = std::abs(scale) * dd.psi.residual_bound;
                                         rec.convergence_metadata = detail::series_meta(dd.psi);
                                     } else {
                                         const auto r = joint_density(g, t, x, ctrl, inv);
                                         rec.value = r.value;
                                         rec.error_bound_or_stderr = r.residual_bound;
                                         rec.convergence_metadata = detail::series_meta(r);
                                     }
                                 });
    } else if (cmd == "marginal") {
        if (s.t_grid.empty() == s.x_grid.empty()) throw UsageError("marginal needs exactly one of --t or --x");
        if (!s.x_grid.empty()) {
            for (double x : s.x_grid)
                detail::evaluate(out, "hitting_place_density", detail::with(base, {{"x", x}}), detail::series_shape(),
                                 [&](Record& rec) {
                                     const auto r = hitting_place_density(g, x, ctrl);
                                     rec.value = r.value;
                                     rec.error_bound_or_stderr = r.residual_bound;
                                     rec.convergence_metadata = detail::series_meta(r);
                                 });
        } else {
            fpt::TimeFunctional f;
            if (s.functional == "density")
                f = fpt::TimeFunctional::Density;
            else if (s.functional == "cdf")
                f = fpt::TimeFunctional::Cdf;
            else if (s.functional == "tail")
                f = fpt::TimeFunctional::Tail;
            else
                throw UsageError("--functional must be density, cdf or tail");
            const std::string method =
                inv.method == fpt::InversionMethod::FixedTalbot ? "talbot" : "stehfest";
            const Fields shape = {{"status", std::string("ok")},
                                  {"functional", s.functional},
                                  {"method", method},
                                  {"nodes", std::int64_t{inv.nodes}},
                                  {"clamped", std::int64_t{0}}};
            for (double t : s.t_grid)
                detail::evaluate(out, "fpt_" + s.functional, detail::with(base, {{"t", t}}), shape, [&](Record& rec) {
                    const auto r = fpt::invert_ladder(f, g.nu(), 1, g.a, g.r, t, 0.0, inv);
                    double v = r.values[0];
                    if (f != fpt::TimeFunctional::Density) v = std::min(v, fpt::hit_probability(g));
                    rec.value = v;
                    // cross-checked runs carry the agreement tolerance as the error estimate
                    rec.error_bound_or_stderr = inv.cross_check
                                                    ? fpt::kCrossCheckRelTol * std::abs(v) + fpt::kCrossCheckAbsTol
                                                    : std::numeric_limits<double>::quiet_NaN();
                    rec.convergence_metadata = shape;
                    rec.convergence_metadata.back().second = std::int64_t{r.clamped};
                });
        }
    } else if (cmd == "band" || cmd == "drift-band") {
        JointQuery q{g, s.t1, s.t2, s.band, s.drift};
        validate(q);
        detail::evaluate(out, cmd,
                         detail::with(base, {{"x_lo", s.band.x_lo}, {"x_hi", s.band.x_hi}, {"t1", s.t1}, {"t2", s.t2}}),
                         detail::series_shape(), [&](Record& rec) {
                             const auto r = s.drift ? drift_band_probability(q, ctrl, inv) : band_probability(q, ctrl, inv);
                             rec.value = r.value;
                             rec.error_bound_or_stderr = r.residual_bound;
                             rec.convergence_metadata = detail::series_meta(r);
                         });
    } else if (cmd == "tail" || cmd == "drift-tail") {
        detail::require_grid(s.t_grid, "--t");
        const Fields shape = s.drift ? detail::series_shape()
                                     : detail::with(detail::series_shape(), {{"leading", 0.0},
                                                                             {"correction", 0.0},
                                                                             {"correction_bound", 0.0}});
        for (double t : s.t_grid) {
            JointQuery q{g, t, std::numeric_limits<double>::infinity(), s.band, s.drift};
            detail::evaluate(out, cmd, detail::with(base, {{"x_lo", s.band.x_lo}, {"x_hi", s.band.x_hi}, {"t", t}}),
                             shape, [&](Record& rec) {
                                 if (s.drift) {
                                     const auto r = drift_tail_probability(q, ctrl, inv);
                                     rec.value = r.value;
                                     rec.error_bound_or_stderr = r.residual_bound;
                                     rec.convergence_metadata = detail::series_meta(r);
                                 } else {
                                     const auto r = tail_probability(q, ctrl, inv);
                                     rec.value = r.total.value;
                                     rec.error_bound_or_stderr = r.total.residual_bound;
                                     rec.convergence_metadata = detail::with(detail::series_meta(r.total),
                                                                             {{"leading", r.leading},
                                                                              {"correction", r.correction},
                                                                              {"correction_bound", r.correction_bound}});
                                 }
                             });
        }
    } else if (cmd == "asymp" || cmd == "drift-asymp") {
        detail::require_grid(s.t_grid, "--t");
        for (double t : s.t_grid) {
            JointQuery q{g, t, std::numeric_limits<double>::infinity(), s.band, s.drift};
            detail::evaluate(out, cmd, detail::with(base, {{"x_lo", s.band.x_lo}, {"x_hi", s.band.x_hi}, {"t", t}}),
                             {{"status", std::string("ok")}}, [&](Record& rec) {
                                 rec.value = s.drift ? drift_tail_asymptotic(q) : tail_asymptotic(q);
                                 rec.error_bound_or_stderr = std::numeric_limits<double>::quiet_NaN();
                                 rec.convergence_metadata = {{"status", std::string("ok")}};
                             });
        }
    } else if (cmd == "mc") {
        JointQuery q{g, s.t1, s.t2, s.band, s.drift};
        validate(q);
        const auto run = mcverify::estimate({q}, s.mc);
        const auto& e = run.results.front();
        Record rec;
        rec.inputs = detail::with(base, {{"x_lo", s.band.x_lo},
                                         {"x_hi", s.band.x_hi},
                                         {"t1", s.t1},
                                         {"t2", s.t2},
                                         {"n_paths", std::int64_t{run.n_paths}},
                                         {"seed", std::to_string(run.config.seed)}});
        rec.value = e.estimate;
        rec.error_bound_or_stderr = e.std_err;
        Fields meta = {{"status", std::string("ok")},
                       {"n_hit", std::int64_t{run.n_hit}},
                       {"n_escape", std::int64_t{run.n_escape}},
                       {"n_horizon", std::int64_t{run.n_horizon}},
                       {"escape_radius", run.config.escape_radius},
                       {"time_horizon", run.config.time_horizon},
                       {"bias_bound", e.bias_bound}};
        try {
            const auto series = verify::series_probability(q);
            meta.emplace_back("series_value", series.value);
            meta.emplace_back("series_residual", series.residual_bound);
            meta.emplace_back("z_score", e.std_err > 0.0 ? (e.estimate - series.value) / e.std_err : 0.0);
        } catch (const std::exception& ex) {
            meta.front().second = std::string("series comparison failed: ") + ex.what();
            out.failures.push_back(std::string("mc series comparison: ") + ex.what());
        }
        rec.convergence_metadata = std::move(meta);
        out.records.push_back(std::move(rec));
    } else if (cmd == "verify") {
        bool found = false;
        for (const auto& suite : verify::suites(s.verify_mc_paths, s.mc.seed)) {
            if (s.suite != "all" && s.suite != suite.name) continue;
            found = true;
            const auto res = suite.run();
            Record rec;
            rec.inputs = {{"suite", suite.name}, {"criterion", std::int64_t{suite.criterion}}};
            rec.value = res.metric;
            rec.error_bound_or_stderr = std::numeric_limits<double>::quiet_NaN();
            rec.convergence_metadata = {{"status", std::string(res.passed ? "pass" : "fail")},
                                        {"seconds", res.seconds},
                                        {"budget_seconds", res.budget},
                                        {"detail", res.detail}};
            if (!res.passed) out.failures.push_back("verify " + suite.name + ": " + res.detail);
            out.records.push_back(std::move(rec));
        }
        if (!found) throw UsageError("unknown suite: " + s.suite);
    } else {
        throw UsageError("unknown command: " + cmd);
    }
    return out;
}

}  // namespace spherehit::cli
