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

#pragma once
#ifndef METLAB_IO_HPP
#define METLAB_IO_HPP

// File formats.
//
//   metric JSON   {"n": k, "labels": [...] (optional), "d": [[row], ...]}
//   metric CSV    k lines, line i holds d(i,0), ..., d(i,i)
//   graph         first line n, then one "u v" edge per line (0-indexed)
//   modulus JSON  {"kind": "power", "a": ., "b": .}
//                 {"kind": "pwl", "breakpoints": [[t, s], ...]}
//   map JSON      {"M": [[row], ...], "source": <metric JSON> (optional,
//                 defaults to the path P_{k-1})}
//
// Lines starting with '#' are ignored in CSV and graph files. Doubles are
// written in shortest round-trip form, so every emitted matrix re-parses
// bit-exactly.

#include <metlab/constructions.hpp>
#include <metlab/distortion.hpp>
#include <metlab/errors.hpp>
#include <metlab/metric.hpp>
#include <metlab/solver.hpp>
#include <metlab/transforms.hpp>

#include "json.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace metlab::io {

using nlohmann::json;

namespace detail {

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::FileNotFound, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline bool has_extension(const std::filesystem::path& path, std::string_view ext)
{
    return path.extension() == ext;
}

inline json parse_json(const std::string& text, std::string_view what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string(what) + ": " + e.what());
    }
}

inline double parse_double(std::string_view token, std::size_t line_no)
{
    while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) {
        token.remove_prefix(1);
    }
    while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) {
        token.remove_suffix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number '" +
                                               std::string(token) + "'");
    }
    return v;
}

inline bool skip_line(std::string_view line)
{
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string_view::npos || line[pos] == '#';
}

template <typename T>
T get_field(const json& j, const char* key, std::string_view what)
{
    if (!j.is_object() || !j.contains(key)) {
        throw Error(ErrorCode::ParseError, std::string(what) + ": missing field '" + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string(what) + ": field '" + key + "': " + e.what());
    }
}

}  // namespace detail

// ---- metrics -------------------------------------------------------------

inline json to_json(const FiniteMetric& x)
{
    json j;
    j["n"] = x.size();
    if (!x.labels().empty()) {
        j["labels"] = x.labels();
    }
    j["d"] = x.matrix().rows();
    return j;
}

/// Raw matrix plus labels; validation is left to the caller.
inline std::pair<SquareMatrix, std::vector<std::string>> matrix_from_json(const json& j)
{
    const auto rows = detail::get_field<std::vector<std::vector<double>>>(j, "d", "metric");
    if (j.contains("n") && detail::get_field<std::size_t>(j, "n", "metric") != rows.size()) {
        throw Error(ErrorCode::ParseError, "metric: 'n' does not match the number of rows");
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        labels = detail::get_field<std::vector<std::string>>(j, "labels", "metric");
    }
    return {SquareMatrix::from_rows(rows), std::move(labels)};
}

inline FiniteMetric metric_from_json(const json& j)
{
    auto [m, labels] = matrix_from_json(j);
    return validate_metric(m, std::move(labels));
}

/// Lower-triangular CSV, diagonal included.
inline SquareMatrix matrix_from_csv(const std::string& text)
{
    std::vector<std::vector<double>> lower;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::skip_line(line)) {
            continue;
        }
        std::vector<double> row;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            row.push_back(detail::parse_double(rest.substr(0, comma), line_no));
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        if (row.size() != lower.size() + 1) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                                   std::to_string(lower.size() + 1) + " values");
        }
        lower.push_back(std::move(row));
    }
    SquareMatrix m(lower.size());
    for (std::size_t i = 0; i < lower.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            m(i, j) = lower[i][j];
            m(j, i) = lower[i][j];
        }
    }
    return m;
}

inline std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string metric_to_csv(const FiniteMetric& x)
{
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            if (j > 0) {
                out += ',';
            }
            out += format_double(x(i, j));
        }
        out += '\n';
    }
    return out;
}

/// Reads a metric matrix (.csv lower-triangular, anything else JSON)
/// without validating it.
inline std::pair<SquareMatrix, std::vector<std::string>> read_matrix_file(const std::filesystem::path& path)
{
    const std::string text = detail::read_file(path);
    if (detail::has_extension(path, ".csv")) {
        return {matrix_from_csv(text), {}};
    }
    return matrix_from_json(detail::parse_json(text, path.string()));
}

inline FiniteMetric read_metric_file(const std::filesystem::path& path)
{
    auto [m, labels] = read_matrix_file(path);
    return validate_metric(m, std::move(labels));
}

// ---- graphs --------------------------------------------------------------

struct GraphSpec {
    std::size_t num_vertices = 0;
    std::vector<Edge> edges;
};

inline GraphSpec graph_from_text(const std::string& text)
{
    GraphSpec g;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool have_n = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::skip_line(line)) {
            continue;
        }
        std::istringstream fields(line);
        if (!have_n) {
            long long n = -1;
            if (!(fields >> n) || n < 1) {
                throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected vertex count");
            }
            g.num_vertices = static_cast<std::size_t>(n);
            have_n = true;
            continue;
        }
        long long u = -1;
        long long v = -1;
        std::string extra;
        if (!(fields >> u >> v) || u < 0 || v < 0 || (fields >> extra)) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'u v'");
        }
        g.edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    }
    if (!have_n) {
        throw Error(ErrorCode::ParseError, "graph file is empty");
    }
    return g;
}

inline GraphSpec read_graph_file(const std::filesystem::path& path)
{
    return graph_from_text(detail::read_file(path));
}

// ---- moduli --------------------------------------------------------------

inline json to_json(const Modulus& omega)
{
    if (const auto* p = std::get_if<PowerLaw>(&omega.spec())) {
        return {{"kind", "power"}, {"a", p->a}, {"b", p->b}};
    }
    json bp = json::array();
    for (const auto& [t, s] : std::get<PiecewiseLinear>(omega.spec()).breakpoints) {
        bp.push_back({t, s});
    }
    return {{"kind", "pwl"}, {"breakpoints", bp}};
}

inline Modulus modulus_from_json(const json& j)
{
    const auto kind = detail::get_field<std::string>(j, "kind", "modulus");
    if (kind == "power") {
        return build_modulus(PowerLaw{detail::get_field<double>(j, "a", "modulus"),
                                      detail::get_field<double>(j, "b", "modulus")});
    }
    if (kind == "pwl") {
        PiecewiseLinear pwl;
        for (const auto& pt : detail::get_field<std::vector<std::vector<double>>>(j, "breakpoints", "modulus")) {
            if (pt.size() != 2) {
                throw Error(ErrorCode::ParseError, "modulus: each breakpoint is a [t, s] pair");
            }
            pwl.breakpoints.emplace_back(pt[0], pt[1]);
        }
        return build_modulus(std::move(pwl));
    }
    throw Error(ErrorCode::ParseError, "modulus: unknown kind '" + kind + "'");
}

inline Modulus read_modulus_file(const std::filesystem::path& path)
{
    return modulus_from_json(detail::parse_json(detail::read_file(path), path.string()));
}

// ---- maps ----------------------------------------------------------------

inline PulledBackMap map_from_json(const json& j)
{
    SquareMatrix image = SquareMatrix::from_rows(detail::get_field<std::vector<std::vector<double>>>(j, "M", "map"));
    if (image.size() == 0) {
        throw Error(ErrorCode::ParseError, "map: 'M' is empty");
    }
    FiniteMetric source = j.contains("source") ? metric_from_json(j.at("source")) : path_metric(image.size() - 1);
    return PulledBackMap(std::move(source), std::move(image));
}

inline json to_json(const PulledBackMap& m)
{
    return {{"source", to_json(m.source())}, {"M", m.image().rows()}};
}

inline PulledBackMap read_map_file(const std::filesystem::path& path)
{
    return map_from_json(detail::parse_json(detail::read_file(path), path.string()));
}

// ---- results -------------------------------------------------------------

inline json to_json(const SolveResult& r)
{
    return {{"D", r.D}, {"lambda", r.lambda}, {"exact", r.exact}, {"witness", to_json(r.witness_delta)}};
}

inline json to_json(const DistortionReport& r)
{
    return {{"lip", r.lip},
            {"colip", r.colip},
            {"dist", r.dist},
            {"lip_pair", {r.lip_pair.first, r.lip_pair.second}},
            {"colip_pair", {r.colip_pair.first, r.colip_pair.second}}};
}

inline json to_json(const LineEmbedding& e)
{
    return {{"source_points", e.source_points},
            {"image_points", e.image_points},
            {"theta", e.theta},
            {"report", to_json(e.report)}};
}

inline json to_json(const ProgressionResult& p)
{
    return {{"a", p.offset}, {"m", p.stride}, {"t", p.t}, {"sub_dist", p.sub_dist}, {"exhaustive", p.exhaustive}};
}

inline json to_json(const ProbeReport& r)
{
    json v = json::array();
    for (const auto& x : r.violations) {
        v.push_back({{"lambda", x.lambda}, {"t1", x.t1}, {"t2", x.t2}, {"gap", x.gap}});
    }
    return {{"lambdas", r.lambdas}, {"grid", r.grid}, {"violations", v}};
}

inline json to_json(const Error& e)
{
    json j = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (!e.indices().empty()) {
        j["indices"] = e.indices();
    }
    return j;
}

}  // namespace metlab::io

#endif  // METLAB_IO_HPP
