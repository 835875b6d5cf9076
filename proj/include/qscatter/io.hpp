// Copyright 2026 The qscatter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "qscatter/circuit.hpp"
#include "qscatter/linalg.hpp"
#include "qscatter/phasespace.hpp"
#include "qscatter/scattering.hpp"
#include "qscatter/spectrometer.hpp"

namespace qscatter::io {

using nlohmann::json;

/// Significant digits of every number written by this module.
inline constexpr int kSignificantDigits = 12;
/// Magnitudes below this print as 0.
inline constexpr double kZeroSnap = 1e-14;
/// Heatmap characters from most negative to most positive. The scale is
/// fixed at [-1/2N, +1/2N]; index 5 covers zero.
inline constexpr std::string_view kHeatmapRamp = "Oo~-, .:*#";
static_assert(kHeatmapRamp.size() == 10);

/// Locale-independent, 12 significant digits, shortest form.
inline std::string format_number(double v) {
    if (std::abs(v) < kZeroSnap)
        v = 0.0;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                   std::chars_format::general,
                                   kSignificantDigits);
    return {buf, res.ptr};
}

inline double parse_number(std::string_view text) {
    double v = 0.0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    if (first != last && *first == '+')
        ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        fail(ErrorCode::ParseError,
             "not a number: '" + std::string(text) + "'");
    return v;
}

/// v rounded to 12 significant digits, as the text output would carry it.
inline double rounded(double v) { return parse_number(format_number(v)); }

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorCode::Io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json(const std::string &text, const std::string &what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        fail(ErrorCode::ParseError, what + ": " + e.what());
    }
}

// ---- matrices: {"dim": n, "entries": [[re, im], ...]} row-major ----------

inline json matrix_to_json(const ComplexMatrix &m) {
    json entries = json::array();
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c)
            entries.push_back({m(r, c).real(), m(r, c).imag()});
    return {{"dim", m.dim()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const json &j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        fail(ErrorCode::ParseError,
             "matrix must be an object with \"dim\" and \"entries\"");
    const json &dim_j = j.at("dim");
    if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1)
        fail(ErrorCode::ParseError, "matrix \"dim\" must be a positive integer");
    const auto dim = static_cast<std::size_t>(dim_j.get<long long>());
    const json &entries = j.at("entries");
    if (!entries.is_array() || entries.size() != dim * dim)
        fail(ErrorCode::ParseError,
             "matrix \"entries\" must hold exactly dim^2 = " +
                 std::to_string(dim * dim) + " pairs");
    ComplexMatrix m(dim);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const json &e = entries[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
            !e[1].is_number())
            fail(ErrorCode::ParseError,
                 "matrix entry " + std::to_string(k) + " must be [re, im]");
        m.set(k / dim, k % dim, {e[0].get<double>(), e[1].get<double>()});
    }
    return m;
}

inline ComplexMatrix load_matrix(const std::string &path) {
    return matrix_from_json(parse_json(read_file(path), path));
}

// ---- circuits: [{"kind", "targets", "theta"?, "unitary"?}, ...] ---------

inline json gate_to_json(const GateOp &g) {
    json j = {{"kind", std::string(to_string(g.kind))}, {"targets", g.targets}};
    if (g.kind == GateKind::PhaseShift || g.kind == GateKind::ControlledPhase)
        j["theta"] = g.theta;
    if (g.unitary)
        j["unitary"] = matrix_to_json(g.unitary->matrix());
    return j;
}

inline json circuit_to_json(const Circuit &circuit) {
    json out = json::array();
    for (const auto &g : circuit)
        out.push_back(gate_to_json(g));
    return out;
}

inline GateOp gate_from_json(const json &j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("targets"))
        fail(ErrorCode::ParseError,
             "gate record needs \"kind\" and \"targets\"");
    if (!j.at("kind").is_string())
        fail(ErrorCode::ParseError, "gate \"kind\" must be a string");
    const auto name = j.at("kind").get<std::string>();
    const auto kind = gate_kind_from_string(name);
    if (!kind)
        fail(ErrorCode::ParseError, "unknown gate kind '" + name + "'");
    GateOp g{*kind, {}, 0.0, std::nullopt};
    const json &targets = j.at("targets");
    if (!targets.is_array())
        fail(ErrorCode::ParseError, "gate \"targets\" must be an array");
    for (const auto &t : targets) {
        if (!t.is_number_integer())
            fail(ErrorCode::ParseError, "gate targets must be integers");
        g.targets.push_back(t.get<int>());
    }
    if (j.contains("theta")) {
        if (!j.at("theta").is_number())
            fail(ErrorCode::ParseError, "gate \"theta\" must be a number");
        g.theta = j.at("theta").get<double>();
    } else if (*kind == GateKind::PhaseShift ||
               *kind == GateKind::ControlledPhase) {
        fail(ErrorCode::ParseError, name + " requires \"theta\"");
    }
    if (j.contains("unitary"))
        g.unitary = UnitaryOperator::from(matrix_from_json(j.at("unitary")),
                                          1e-10);
    else if (*kind == GateKind::ControlledUnitary)
        fail(ErrorCode::ParseError, "ControlledUnitary requires \"unitary\"");
    return g;
}

inline Circuit circuit_from_json(const json &j) {
    if (!j.is_array())
        fail(ErrorCode::ParseError, "circuit must be a JSON list of gates");
    Circuit out;
    for (const auto &g : j)
        out.push_back(gate_from_json(g));
    return out;
}

/// Qubits a circuit touches: one more than its largest index.
inline int circuit_width(const Circuit &circuit) {
    int width = 0;
    for (const auto &g : circuit)
        for (int t : g.targets)
            width = std::max(width, t + 1);
    return width;
}

// ---- Wigner grids --------------------------------------------------------

/// Header q,p,w; rows in q-major then p order.
inline std::string grid_to_csv(const WignerGrid &w) {
    std::string out = "q,p,w\n";
    for (std::size_t q = 0; q < w.side(); ++q)
        for (std::size_t p = 0; p < w.side(); ++p)
            out += std::to_string(q) + "," + std::to_string(p) + "," +
                   format_number(w.at(q, p)) + "\n";
    return out;
}

inline WignerGrid grid_from_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "q,p,w")
        fail(ErrorCode::ParseError, "grid CSV must start with header q,p,w");
    std::vector<double> values;
    std::size_t row = 0;
    std::vector<std::array<std::size_t, 2>> coords;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            fail(ErrorCode::ParseError,
                 "grid CSV row " + std::to_string(row + 1) + " needs 3 fields");
        const auto q = static_cast<std::size_t>(
            parse_number(std::string_view(line).substr(0, c1)));
        const auto p = static_cast<std::size_t>(
            parse_number(std::string_view(line).substr(c1 + 1, c2 - c1 - 1)));
        coords.push_back({q, p});
        values.push_back(parse_number(std::string_view(line).substr(c2 + 1)));
        ++row;
    }
    const auto side = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(values.size()))));
    if (side < 4 || side % 2 != 0 || side * side != values.size())
        fail(ErrorCode::ParseError,
             "grid CSV must hold (2N)^2 rows for even N >= 2");
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i][0] != i / side || coords[i][1] != i % side)
            fail(ErrorCode::ParseError,
                 "grid CSV rows out of order at row " + std::to_string(i + 1));
    return {side / 2, std::move(values)};
}

inline json grid_to_json(const WignerGrid &w) {
    json rows = json::array();
    for (std::size_t q = 0; q < w.side(); ++q) {
        json row = json::array();
        for (std::size_t p = 0; p < w.side(); ++p)
            row.push_back(rounded(w.at(q, p)));
        rows.push_back(std::move(row));
    }
    return {{"n", w.n()}, {"values", std::move(rows)}};
}

/// One line per q, one character per p.
inline std::string grid_to_ascii(const WignerGrid &w) {
    const double scale = 1.0 / (2.0 * static_cast<double>(w.n()));
    std::string out;
    for (std::size_t q = 0; q < w.side(); ++q) {
        for (std::size_t p = 0; p < w.side(); ++p) {
            double v = w.at(q, p);
            if (std::abs(v) < kZeroSnap)
                v = 0.0;
            const double level = (v + scale) / (2.0 * scale) * 10.0;
            const auto idx = static_cast<std::size_t>(
                std::clamp(std::floor(level), 0.0, 9.0));
            out += kHeatmapRamp[idx];
        }
        out += '\n';
    }
    return out;
}

// ---- spectra and scattering results --------------------------------------

/// Header E,phi,g.
inline std::string spectrum_to_csv(const SpectralSeries &s) {
    std::string out = "E,phi,g\n";
    for (std::size_t e = 0; e < s.bins.size(); ++e)
        out += std::to_string(e) + "," + format_number(s.phase(e)) + "," +
               format_number(s.bins[e]) + "\n";
    return out;
}

inline json spectrum_to_json(const SpectralSeries &s) {
    json e_j = json::array(), phi = json::array(), g = json::array();
    for (std::size_t e = 0; e < s.bins.size(); ++e) {
        e_j.push_back(e);
        phi.push_back(rounded(s.phase(e)));
        g.push_back(rounded(s.bins[e]));
    }
    return {{"kind", s.kind == SpectrumKind::Density ? "density" : "structure"},
            {"n1", s.n1},
            {"t_max", s.t_max()},
            {"E", std::move(e_j)},
            {"phi", std::move(phi)},
            {"g", std::move(g)}};
}

inline json scattering_to_json(const ScatteringResult &r) {
    const Complex t = r.trace_estimate();
    return {{"sigma_z", rounded(r.sigma_z)},
            {"sigma_x", rounded(r.sigma_x)},
            {"re_trace", rounded(t.real())},
            {"im_trace", rounded(t.imag())}};
}

} // namespace qscatter::io
