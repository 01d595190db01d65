// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "spherehit/error.hpp"
#include "spherehit/fpt/geometry.hpp"
#include "spherehit/jointdist/probability.hpp"
#include "spherehit/mcverify/philox.hpp"

namespace spherehit::mcverify {

using fpt::Geometry;
using jointdist::Drift;

/// Simulation settings. escape_radius = 0 selects a radius automatically;
/// escape_radius = infinity disables escape censoring.
struct McConfig {
    std::int64_t n_paths = 100000;
    double base_step = 1e-2;
    double boundary_fraction = 0.2;
    double min_step = 1e-8;
    double escape_radius = 0.0;
    double time_horizon = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 42;
    unsigned threads = 0;
};

enum class Censor { None, Escape, Horizon };

/// First hit of one path. place holds z1/r, z2/r, z3/r at the hit.
struct HitSample {
    bool hit = false;
    double time = 0.0;
    double place_x = 0.0;
    double place_y = 0.0;
    double place_z = 0.0;
    Censor censored_by = Censor::None;
};

inline void validate(const McConfig& c) {
    auto need = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(what);
    };
    need(c.n_paths >= 1, "mc: n_paths must be >= 1");
    need(c.base_step > 0.0 && std::isfinite(c.base_step), "mc: base_step must be > 0");
    need(c.boundary_fraction > 0.0 && c.boundary_fraction < 1.0, "mc: boundary_fraction must lie in (0,1)");
    need(c.min_step > 0.0 && c.min_step < c.base_step, "mc: need 0 < min_step < base_step");
    need(c.escape_radius >= 0.0, "mc: escape_radius must be >= 0");
    need(c.time_horizon > 0.0, "mc: time_horizon must be > 0");
}

/// Smallest radius whose escape bias (r/R)^{d-2} stays below a tenth of the
/// worst-case binomial standard error 0.5/sqrt(n).
inline double auto_escape_radius(const Geometry& g, std::int64_t n_paths) {
    if (g.d <= 2) return std::numeric_limits<double>::infinity();
    const double tol = 0.0499 / std::sqrt(static_cast<double>(n_paths));
    const double radius = g.r * std::pow(tol, -1.0 / (g.d - 2));
    return std::max(radius, 10.0 * std::max(g.a, g.r));
}

/// a priori bound on the probability that an escape-censored path would
/// have hit the sphere
inline double escape_bias_bound(const Geometry& g, double escape_radius) {
    if (!std::isfinite(escape_radius)) return 0.0;
    if (g.d <= 2) return 1.0;
    return std::pow(g.r / escape_radius, g.d - 2);
}

/// Resolves automatic settings for a run needing the law of the hit up to
/// time `needed_horizon`.
inline McConfig resolve(const Geometry& g, const std::optional<Drift>& drift, McConfig cfg, double needed_horizon) {
    validate(cfg);
    fpt::validate(g);
    const bool moving = drift && drift->speed_sq() > 0.0;
    const bool exterior = g.regime() == fpt::Regime::Exterior;
    if (!std::isfinite(cfg.time_horizon)) cfg.time_horizon = needed_horizon;
    if (cfg.time_horizon < needed_horizon) throw ConfigError("mc: query window extends beyond time_horizon");
    if (!exterior) {
        cfg.escape_radius = std::numeric_limits<double>::infinity();
        return cfg;
    }
    if (g.d == 2 || moving) {
        if (!std::isfinite(cfg.time_horizon))
            throw ConfigError("mc: exterior runs in d = 2 or with drift need a finite time horizon");
        cfg.escape_radius = std::numeric_limits<double>::infinity();
        return cfg;
    }
    if (cfg.escape_radius == 0.0) cfg.escape_radius = auto_escape_radius(g, cfg.n_paths);
    if (cfg.escape_radius <= std::max(g.a, g.r)) throw ConfigError("mc: escape_radius must exceed max(a, r)");
    const double worst_se = 0.5 / std::sqrt(static_cast<double>(cfg.n_paths));
    if (escape_bias_bound(g, cfg.escape_radius) > 0.1 * worst_se)
        throw ConfigError("mc: escape censoring bias exceeds a tenth of the standard error");
    return cfg;
}

/// Simulates one path of B (plus drift) from (a, 0, ..., 0) until it crosses
/// the sphere, leaves the escape radius or reaches the time horizon. Uses the
/// config as given (call resolve first for automatic settings).
inline HitSample simulate_hit(const Geometry& g, const std::optional<Drift>& drift, const McConfig& cfg,
                              std::uint64_t path_index) {
    const int d = g.d;
    const double r = g.r;
    const double f = cfg.boundary_fraction;
    const double near = std::max(g.a, g.r);
    const bool exterior = g.regime() == fpt::Regime::Exterior;
    const double escape =
        cfg.escape_radius > 0.0 ? cfg.escape_radius : std::numeric_limits<double>::infinity();
    const double v1 = drift ? drift->v1 : 0.0;
    const double v2 = drift ? drift->v_perp : 0.0;
    const double speed = std::hypot(v1, v2);

    PathRng rng(cfg.seed, path_index);
    std::vector<double> p(d, 0.0), q(d, 0.0);
    p[0] = g.a;
    double rho = g.a;
    double t = 0.0;
    HitSample out;
    for (;;) {
        if (rho >= escape) {
            out.censored_by = Censor::Escape;
            return out;
        }
        const double dist = std::abs(rho - r);
        double dt = (f * dist) * (f * dist);
        if (dist <= near) dt = std::min(dt, cfg.base_step);
        if (speed > 0.0) dt = std::min(dt, f * dist / speed);
        dt = std::max(dt, cfg.min_step);
        bool last = false;
        if (t + dt >= cfg.time_horizon) {
            dt = cfg.time_horizon - t;
            last = true;
        }
        const double sd = std::sqrt(dt);
        double sq = 0.0;
        for (int i = 0; i < d; ++i) q[i] = p[i] + sd * rng.normal();
        q[0] += v1 * dt;
        q[1] += v2 * dt;
        for (int i = 0; i < d; ++i) sq += q[i] * q[i];
        const double rho_new = std::sqrt(sq);
        if ((rho_new <= r) == exterior) {
            const double h0 = rho - r;
            const double theta = h0 / (h0 - (rho_new - r));
            out.hit = true;
            out.time = t + theta * dt;
            double norm = 0.0;
            for (int i = 0; i < d; ++i) {
                q[i] = p[i] + theta * (q[i] - p[i]);
                norm += q[i] * q[i];
            }
            norm = std::sqrt(norm);
            out.place_x = std::clamp(q[0] / norm, -1.0, 1.0);
            out.place_y = q[1] / norm;
            out.place_z = d >= 3 ? q[2] / norm : 0.0;
            return out;
        }
        std::swap(p, q);
        rho = rho_new;
        t += dt;
        if (last) {
            out.censored_by = Censor::Horizon;
            return out;
        }
    }
}

}  // namespace spherehit::mcverify
