// SPDX-License-Identifier: Apache-2.0
// Command-line front end for the spherehit library.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "spherehit/cli/run.hpp"

namespace {

struct Flags {
    int d = 3;
    double a = 0.5, r = 1.0;
    std::optional<double> v1, v_perp;
    double gamma = 0.0;
    std::string t, x, lambda, band = "-1,1";
    double u_axis = 0.0, u_perp = 0.0;
    double t1 = 0.0;
    std::string t2 = "inf";
    std::string functional = "density";
    int n_max = 4000;
    double abs_tol = 1e-12;
    std::string method = "talbot";
    int nodes = 0;
    bool cross_check = false;
    double paths = 1e5;
    std::uint64_t seed = 42;
    double base_step = 1e-2, boundary_fraction = 0.2, min_step = 1e-8, escape_radius = 0.0;
    std::string horizon = "inf";
    unsigned threads = 0;
    std::string suite = "all";
    double mc_paths = 1e6;
    std::string format = "json", output;
};

spherehit::cli::RunSpec to_spec(const Flags& f, const std::string& command) {
    using spherehit::cli::parse_grid;
    using spherehit::cli::parse_number;
    using spherehit::cli::UsageError;
    spherehit::cli::RunSpec s;
    s.command = command;
    s.geometry = {f.d, f.r, f.a};
    if (f.v1 || f.v_perp) s.drift = spherehit::jointdist::Drift{f.v1.value_or(0.0), f.v_perp.value_or(0.0)};
    s.gamma = f.gamma;
    if (!f.t.empty()) s.t_grid = parse_grid(f.t);
    if (!f.x.empty()) s.x_grid = parse_grid(f.x);
    if (!f.lambda.empty()) s.lambda_grid = parse_grid(f.lambda);
    s.u_axis = f.u_axis;
    s.u_perp = f.u_perp;
    s.band = spherehit::cli::parse_band(f.band);
    s.t1 = f.t1;
    s.t2 = parse_number(f.t2);
    s.functional = f.functional;
    s.series = {f.n_max, f.abs_tol};
    if (f.method == "talbot") {
        s.inversion.method = spherehit::fpt::InversionMethod::FixedTalbot;
        s.inversion.nodes = f.nodes ? f.nodes : spherehit::fpt::kDefaultTalbotNodes;
    } else if (f.method == "stehfest") {
        s.inversion.method = spherehit::fpt::InversionMethod::GaverStehfest;
        s.inversion.nodes = f.nodes ? f.nodes : spherehit::fpt::kDefaultStehfestNodes;
    } else {
        throw UsageError("--method must be talbot or stehfest");
    }
    s.inversion.cross_check = f.cross_check;
    if (f.paths < 1 || f.paths != std::floor(f.paths)) throw UsageError("--paths must be a positive integer");
    s.mc.n_paths = static_cast<std::int64_t>(f.paths);
    s.mc.seed = f.seed;
    s.mc.base_step = f.base_step;
    s.mc.boundary_fraction = f.boundary_fraction;
    s.mc.min_step = f.min_step;
    s.mc.escape_radius = f.escape_radius;
    s.mc.time_horizon = parse_number(f.horizon);
    s.mc.threads = f.threads;
    s.suite = f.suite;
    s.verify_mc_paths = static_cast<std::int64_t>(f.mc_paths);
    if (f.format != "json" && f.format != "csv") throw UsageError("--format must be json or csv");
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint law of the first hitting time and place of a sphere by Brownian motion"};
    app.set_config("--config", "", "flat key = value file; flags override it");
    app.require_subcommand(1, 1);
    Flags f;

    app.add_option("--d", f.d, "dimension (>= 2)");
    app.add_option("--a", f.a, "start distance from the origin");
    app.add_option("--r", f.r, "sphere radius");
    app.add_option("--v1", f.v1, "drift component along the start axis");
    app.add_option("--vperp", f.v_perp, "drift component orthogonal to the axis (>= 0)");
    app.add_option("--gamma", f.gamma, "angle between perpendicular parts of u and v (drift-laplace)");
    app.add_option("--t", f.t, "time grid: lo:hi:count, log:lo:hi:count or a comma list");
    app.add_option("--x", f.x, "grid of x = z1/r values");
    app.add_option("--lambda", f.lambda, "grid of Laplace variables");
    app.add_option("--u-axis", f.u_axis, "exponent vector, axial part");
    app.add_option("--u-perp", f.u_perp, "exponent vector, perpendicular part (>= 0)");
    app.add_option("--band", f.band, "band lo,hi of x = z1/r");
    app.add_option("--t1", f.t1, "window start");
    app.add_option("--t2", f.t2, "window end (inf allowed)");
    app.add_option("--functional", f.functional, "marginal: density, cdf or tail");
    app.add_option("--n-max", f.n_max, "series term cap");
    app.add_option("--abs-tol", f.abs_tol, "series truncation tolerance");
    app.add_option("--method", f.method, "Laplace inversion: talbot or stehfest");
    app.add_option("--nodes", f.nodes, "inversion nodes (0 = method default)");
    app.add_flag("--cross-check", f.cross_check, "cross-check each inversion with the other method");
    app.add_option("--paths", f.paths, "Monte Carlo path count");
    app.add_option("--seed", f.seed, "Monte Carlo seed");
    app.add_option("--base-step", f.base_step, "time step away from the sphere");
    app.add_option("--boundary-fraction", f.boundary_fraction, "step sd / distance to the sphere");
    app.add_option("--min-step", f.min_step, "smallest time step");
    app.add_option("--escape-radius", f.escape_radius, "escape censoring radius (0 = automatic)");
    app.add_option("--horizon", f.horizon, "time horizon (inf = automatic)");
    app.add_option("--threads", f.threads, "worker threads (0 = all; SPHEREHIT_THREADS caps)");
    app.add_option("--suite", f.suite, "verify: suite name or all");
    app.add_option("--mc-paths", f.mc_paths, "verify: paths for the Monte Carlo suite");
    app.add_option("--format", f.format, "json or csv");
    app.add_option("--output", f.output, "output file (default stdout)");

    for (const auto& name : spherehit::cli::command_names()) app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    spherehit::cli::RunOutput out;
    std::string format;
    std::string output;
    try {
        const auto spec = to_spec(f, command);
        format = f.format;
        output = f.output;
        out = spherehit::cli::run(spec);
    } catch (const spherehit::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const spherehit::DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const spherehit::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure in " << command << ": " << e.what() << "\n";
        return 1;
    }

    if (command == "verify") {
        for (const auto& rec : out.records) {
            const auto& meta = rec.convergence_metadata;
            std::cout << (std::get<std::string>(meta[0].second) == "pass" ? "PASS " : "FAIL ")
                      << std::get<std::string>(rec.inputs[0].second) << ": " << std::get<std::string>(meta[3].second)
                      << "\n";
        }
    }
    if (command != "verify" || !output.empty()) {
        std::ofstream file;
        if (!output.empty()) {
            file.open(output);
            if (!file) {
                std::cerr << "usage error: cannot open " << output << "\n";
                return 2;
            }
        }
        std::ostream& os = output.empty() ? std::cout : file;
        if (format == "csv")
            spherehit::cli::write_csv(os, out.records);
        else
            spherehit::cli::write_json(os, out.records);
    }
    for (const auto& failure : out.failures) std::cerr << "numerical failure: " << failure << "\n";
    return out.failures.empty() ? 0 : 1;
}
