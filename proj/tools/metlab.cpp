/*
 * Copyright 2026 The metlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// metlab: command-line front end. JSON or CSV on stdout (or --out), errors
// as JSON on stderr. Exit codes: 0 ok, 1 I/O failure, 2 invalid input.

#include <metlab/io.hpp>
#include <metlab/metlab.hpp>

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using metlab::io::json;

struct Output {
    std::string path;

    void write(const std::string& text) const
    {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw metlab::Error(metlab::ErrorCode::FileNotFound, "cannot write " + path);
        }
        out << text;
    }

    void write(const json& j) const { write(j.dump(2) + "\n"); }
};

/// --tol beats METLAB_TOL beats the built-in default.
double resolve_tolerance(const std::optional<double>& flag, double fallback)
{
    if (flag) {
        return *flag;
    }
    if (const char* env = std::getenv("METLAB_TOL")) {
        try {
            std::size_t used = 0;
            const double v = std::stod(env, &used);
            if (used == std::string(env).size() && v > 0.0) {
                return v;
            }
        } catch (const std::exception&) {
        }
        std::cerr << "metlab: ignoring malformed METLAB_TOL='" << env << "'\n";
    }
    return fallback;
}

std::string csv_row(const std::vector<std::string>& cells)
{
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out += (i ? "," : "") + cells[i];
    }
    return out + "\n";
}

using metlab::io::format_double;

std::string format_ms(double ms)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

const char* kExperimentHeader = "n,theta,computed,predicted,abs_err,runtime_ms";

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"metlab: least bi-Lipschitz distortion into metric transforms"};
    app.require_subcommand(1);

    Output out;
    std::optional<double> tol;
    std::uint64_t seed = 1;
    app.add_option("--out", out.path, "Write the result to this file instead of stdout");
    app.add_option("--tol", tol, "Relative bisection tolerance (overrides METLAB_TOL)");
    app.add_option("--seed", seed, "Seed for the local-search oracle");

    std::string metric_path;
    std::string modulus_path;
    std::string map_path;
    std::string graph_path;
    double theta = 0.5;
    std::vector<double> thetas{0.25, 0.5, 0.75};
    std::vector<double> points;
    std::size_t t = 2;
    std::optional<double> eps;
    std::size_t n_max = 64;
    std::size_t oracle_iters = 0;
    metlab::GeneralSolveOptions gopts;

    auto* validate = app.add_subcommand("validate", "Check that a file holds a metric");
    validate->add_option("metric", metric_path, "Metric file (.json or lower-triangular .csv)")->required();

    auto* solve_snow = app.add_subcommand("solve-snowflake", "Exact least distortion into theta-snowflakes");
    solve_snow->add_option("metric", metric_path)->required();
    solve_snow->add_option("--theta", theta, "Snowflake exponent in (0,1)")->required();
    solve_snow->add_option("--oracle", oracle_iters, "Also run the local-search oracle for this many steps");

    auto* solve_mod = app.add_subcommand("solve-modulus", "Certified least distortion into omega(MET)");
    solve_mod->add_option("metric", metric_path)->required();
    solve_mod->add_option("modulus", modulus_path, "Modulus JSON")->required();
    solve_mod->add_option("--grid", gopts.lambda_grid_size, "Lambda grid size");
    solve_mod->add_option("--range", gopts.lambda_range_factor, "Lambda range factor on each side");
    solve_mod->add_option("--rounds", gopts.refine_rounds, "Golden-section refinement rounds");
    solve_mod->add_option("--oracle", oracle_iters, "Also run the local-search oracle for this many steps");

    auto* embed = app.add_subcommand("embed-line", "Embed a line subset into the snowflaked line");
    embed->add_option("points", points, "Comma-separated reals")->required()->delimiter(',');
    embed->add_option("--theta", theta)->required();

    auto* ultra = app.add_subcommand("ultrametric", "Subdominant (single-linkage) ultrametric");
    ultra->add_option("metric", metric_path)->required();

    auto* boost = app.add_subcommand("boost", "Least distorted arithmetic sub-path of a map out of P_n");
    boost->add_option("map", map_path, "Map JSON")->required();
    boost->add_option("--t", t, "Sub-path length")->required();
    boost->add_option("--eps", eps, "Also report the guarantee for dist(f o phi) <= 1 + eps");

    auto* exp_cor = app.add_subcommand("experiment-corollary", "Least snowflake distortion of P_n, n = 1..n_max");
    exp_cor->add_option("--theta", thetas, "Comma-separated exponents")->delimiter(',');
    exp_cor->add_option("--n-max", n_max)->check(CLI::Range(1, 500));

    auto* exp_graph = app.add_subcommand("experiment-graph", "Snowflake distortion of a graph vs diameter^(1-theta)");
    exp_graph->add_option("graph", graph_path, "Graph file")->required();
    exp_graph->add_option("--theta", theta)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*validate) {
            const auto x = metlab::io::read_metric_file(metric_path);
            out.write(json{{"valid", true}, {"n", x.size()}, {"diameter", x.diameter()}});
        } else if (*solve_snow) {
            const auto x = metlab::io::read_metric_file(metric_path);
            const auto r = metlab::snowflake_distortion(x, theta);
            json j = metlab::io::to_json(r);
            if (oracle_iters > 0) {
                j["oracle_upper_bound"] = metlab::numerical_snowflake_oracle(x, theta, oracle_iters, seed);
            }
            out.write(j);
        } else if (*solve_mod) {
            const auto x = metlab::io::read_metric_file(metric_path);
            const auto omega = metlab::io::read_modulus_file(modulus_path);
            gopts.bisect_tol = resolve_tolerance(tol, gopts.bisect_tol);
            const auto r = metlab::general_modulus_distortion(x, omega, gopts);
            json j = metlab::io::to_json(r);
            if (oracle_iters > 0) {
                j["oracle_upper_bound"] = metlab::numerical_modulus_oracle(x, omega, oracle_iters, seed);
            }
            out.write(j);
        } else if (*embed) {
            out.write(metlab::io::to_json(metlab::snowflake_line_embedding(points, theta)));
        } else if (*ultra) {
            out.write(metlab::io::to_json(metlab::subdominant_ultrametric(metlab::io::read_metric_file(metric_path))));
        } else if (*boost) {
            const auto m = metlab::io::read_map_file(map_path);
            const auto p = metlab::path_boost(m, t);
            json j = metlab::io::to_json(p);
            if (eps) {
                const double D = metlab::map_distortion(m).dist;
                const auto needed = metlab::boost_guarantee_n(std::max(2.0, D), t, *eps);
                j["guarantee"] = {{"eps", *eps},
                                  {"map_dist", D},
                                  {"n", m.size() - 1},
                                  {"n_required", needed},
                                  {"applies", m.size() - 1 >= needed},
                                  {"within_eps", p.sub_dist <= 1.0 + *eps}};
            }
            out.write(j);
        } else if (*exp_cor) {
            std::sort(thetas.begin(), thetas.end());
            std::string csv = std::string(kExperimentHeader) + "\n";
            for (std::size_t n = 1; n <= n_max; ++n) {
                const auto path = metlab::path_metric(n);
                for (double th : thetas) {
                    const auto start = std::chrono::steady_clock::now();
                    const double computed = metlab::snowflake_distortion(path, th).D;
                    const double ms =
                        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                    const double predicted = std::pow(static_cast<double>(n), 1.0 - th);
                    csv += csv_row({std::to_string(n), format_double(th), format_double(computed),
                                    format_double(predicted), format_double(std::abs(computed - predicted)),
                                    format_ms(ms)});
                }
            }
            out.write(csv);
        } else if (*exp_graph) {
            const auto g = metlab::io::read_graph_file(graph_path);
            const auto x = metlab::graph_metric(g.num_vertices, g.edges);
            const auto start = std::chrono::steady_clock::now();
            const double computed = metlab::snowflake_distortion(x, theta).D;
            const double ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            const double diam = x.diameter();
            const double predicted = std::pow(diam, 1.0 - theta);
            const bool geodesic = metlab::diametral_geodesic(x).has_value();
            out.write(std::string(kExperimentHeader) + ",diameter,geodesic_found\n" +
                      csv_row({std::to_string(x.size()), format_double(theta), format_double(computed),
                               format_double(predicted), format_double(std::abs(computed - predicted)),
                               format_ms(ms), format_double(diam), geodesic ? "true" : "false"}));
        }
    } catch (const metlab::Error& e) {
        std::cerr << metlab::io::to_json(e).dump() << "\n";
        return e.code() == metlab::ErrorCode::FileNotFound ? 1 : 2;
    }
    return 0;
}
