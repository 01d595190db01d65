// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <thread>
#include <vector>

#include "spherehit/jointdist/probability.hpp"
#include "spherehit/mcverify/simulate.hpp"
#include "spherehit/specfun/series.hpp"

namespace spherehit::mcverify {

using jointdist::JointQuery;

struct McEstimate {
    double estimate = 0.0;
    double std_err = 0.0;
    std::int64_t n_in_set = 0;
    std::int64_t n_censored = 0;
    double bias_bound = 0.0;
};

struct McRun {
    std::vector<McEstimate> results;
    std::int64_t n_paths = 0;
    std::int64_t n_hit = 0;
    std::int64_t n_escape = 0;
    std::int64_t n_horizon = 0;
    McConfig config;
};

struct LaplaceEstimate {
    double estimate = 0.0;
    double std_err = 0.0;
    std::int64_t n_censored = 0;
    double bias_bound = 0.0;
    McConfig config;
};

/// Worker count: cfg.threads (0 = hardware), capped by SPHEREHIT_THREADS.
inline unsigned worker_count(const McConfig& cfg) {
    unsigned n = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SPHEREHIT_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return std::max(1u, n);
}

namespace detail {

inline constexpr std::int64_t kChunk = 4096;

// Runs body(path, acc) for every path; one accumulator per fixed chunk, so
// results do not depend on scheduling.
template <class Acc, class Body>
std::vector<Acc> run_chunked(std::int64_t n_paths, unsigned workers, const Acc& init, Body body) {
    const std::int64_t n_chunks = (n_paths + kChunk - 1) / kChunk;
    std::vector<Acc> acc(static_cast<std::size_t>(n_chunks), init);
    std::atomic<std::int64_t> next{0};
    auto work = [&] {
        for (std::int64_t c; (c = next.fetch_add(1)) < n_chunks;) {
            const std::int64_t end = std::min(n_paths, (c + 1) * kChunk);
            for (std::int64_t i = c * kChunk; i < end; ++i) body(static_cast<std::uint64_t>(i), acc[c]);
        }
    };
    workers = static_cast<unsigned>(std::min<std::int64_t>(workers, n_chunks));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return acc;
}

inline bool same_setup(const JointQuery& a, const JointQuery& b) {
    const auto& g = a.geometry;
    const auto& h = b.geometry;
    if (g.d != h.d || g.a != h.a || g.r != h.r) return false;
    const Drift va = a.drift.value_or(Drift{});
    const Drift vb = b.drift.value_or(Drift{});
    return va.v1 == vb.v1 && va.v_perp == vb.v_perp;
}

}  // namespace detail

/// Scores all queries (shared geometry and drift) in one pass over the paths.
inline McRun estimate(const std::vector<JointQuery>& queries, const McConfig& cfg) {
    if (queries.empty()) throw ConfigError("mc: no queries");
    double needed = 0.0;
    for (const auto& q : queries) {
        jointdist::validate(q);
        if (!detail::same_setup(q, queries.front())) throw ConfigError("mc: queries must share geometry and drift");
        needed = std::max(needed, q.t2);
    }
    const Geometry g = queries.front().geometry;
    const auto drift = queries.front().drift;
    McRun run;
    run.config = resolve(g, drift, cfg, needed);
    run.n_paths = run.config.n_paths;

    const std::size_t nq = queries.size();
    // slots: per-query counts, then hit, escape, horizon
    auto acc = detail::run_chunked<std::vector<std::int64_t>>(
        run.n_paths, worker_count(cfg), std::vector<std::int64_t>(nq + 3, 0),
        [&](std::uint64_t path, std::vector<std::int64_t>& a) {
            const HitSample s = simulate_hit(g, drift, run.config, path);
            if (!s.hit) {
                ++a[s.censored_by == Censor::Escape ? nq + 1 : nq + 2];
                return;
            }
            ++a[nq];
            for (std::size_t k = 0; k < nq; ++k) {
                const auto& q = queries[k];
                if (s.time > q.t1 && s.time <= q.t2 && s.place_x >= q.band.x_lo && s.place_x <= q.band.x_hi) ++a[k];
            }
        });
    std::vector<std::int64_t> total(nq + 3, 0);
    for (const auto& a : acc)
        for (std::size_t k = 0; k < total.size(); ++k) total[k] += a[k];
    run.n_hit = total[nq];
    run.n_escape = total[nq + 1];
    run.n_horizon = total[nq + 2];

    const double n = static_cast<double>(run.n_paths);
    const double bias = escape_bias_bound(g, run.config.escape_radius) * static_cast<double>(run.n_escape) / n;
    for (std::size_t k = 0; k < nq; ++k) {
        McEstimate e;
        e.n_in_set = total[k];
        e.estimate = static_cast<double>(total[k]) / n;
        e.std_err = std::sqrt(e.estimate * (1.0 - e.estimate) / n);
        e.n_censored = run.n_escape + run.n_horizon;
        e.bias_bound = bias;
        run.results.push_back(e);
    }
    return run;
}

inline McRun estimate(const Geometry& g, const std::optional<Drift>& drift, std::vector<JointQuery> queries,
                      const McConfig& cfg) {
    for (auto& q : queries) {
        q.geometry = g;
        q.drift = drift;
    }
    return estimate(queries, cfg);
}

/// Monte Carlo estimate of E[exp(-lambda sigma + <u, B_sigma>)] with u =
/// (u_axis, u_perp, 0, ..., 0); non-hitting paths score 0.
inline LaplaceEstimate estimate_laplace_functional(const Geometry& g, const std::optional<Drift>& drift, double lambda,
                                                   double u_axis, double u_perp, const McConfig& cfg) {
    spherehit::detail::require(lambda > 0.0, "mc laplace: lambda must be > 0");
    const double u_norm = std::hypot(u_axis, u_perp);
    double needed = std::numeric_limits<double>::infinity();
    const bool moving = drift && drift->speed_sq() > 0.0;
    if (g.regime() == fpt::Regime::Exterior && (g.d == 2 || moving) && !std::isfinite(cfg.time_horizon))
        needed = (40.0 + g.r * u_norm) / lambda;
    if (std::isfinite(cfg.time_horizon)) needed = cfg.time_horizon;
    LaplaceEstimate out;
    out.config = resolve(g, drift, cfg, needed);

    struct Acc {
        double sum = 0.0, sum_sq = 0.0;
        std::int64_t escape = 0, horizon = 0;
    };
    auto acc = detail::run_chunked<Acc>(out.config.n_paths, worker_count(cfg), Acc{},
                                        [&](std::uint64_t path, Acc& a) {
                                            const HitSample s = simulate_hit(g, drift, out.config, path);
                                            if (!s.hit) {
                                                ++(s.censored_by == Censor::Escape ? a.escape : a.horizon);
                                                return;
                                            }
                                            const double v = std::exp(-lambda * s.time +
                                                                      g.r * (u_axis * s.place_x + u_perp * s.place_y));
                                            a.sum += v;
                                            a.sum_sq += v * v;
                                        });
    specfun::CompensatedSum sum, sum_sq;
    std::int64_t escape = 0, horizon = 0;
    for (const auto& a : acc) {
        sum.add(a.sum);
        sum_sq.add(a.sum_sq);
        escape += a.escape;
        horizon += a.horizon;
    }
    const double n = static_cast<double>(out.config.n_paths);
    out.estimate = sum.value() / n;
    const double var = std::max(0.0, sum_sq.value() / n - out.estimate * out.estimate);
    out.std_err = std::sqrt(var / std::max(1.0, n - 1.0));
    out.n_censored = escape + horizon;
    const double cap = std::exp(g.r * u_norm);
    out.bias_bound = cap * (escape_bias_bound(g, out.config.escape_radius) * static_cast<double>(escape) +
                            std::exp(-lambda * out.config.time_horizon) * static_cast<double>(horizon)) /
                     n;
    return out;
}

}  // namespace spherehit::mcverify
