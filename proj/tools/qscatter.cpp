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

// qscatter: command-line front end for the scattering-circuit toolkit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qscatter/io.hpp"
#include "qscatter/qscatter.hpp"

namespace fs = std::filesystem;
using namespace qscatter;

namespace {

constexpr int kExitUsage = 2;

int exit_code(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument:
        return 3;
    case ErrorCode::DimensionMismatch:
        return 4;
    case ErrorCode::ParseError:
        return 5;
    case ErrorCode::QubitBudget:
        return 6;
    case ErrorCode::InvalidState:
        return 7;
    case ErrorCode::Io:
        return 8;
    }
    return 1;
}

struct Globals {
    std::uint64_t seed = 1;
    std::optional<double> noise_p;
};

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos)
            return out;
        start = pos + 1;
    }
}

std::size_t parse_count(const std::string &text, const std::string &what) {
    const double v = io::parse_number(text);
    if (v < 0 || v != std::floor(v) || v > 1e6)
        fail(ErrorCode::InvalidArgument, what + " must be a non-negative integer, got '" + text + "'");
    return static_cast<std::size_t>(v);
}

/// A state source: a matrix file, or pure:<label>:<n>, mixed:<n>, random:<n>.
DensityMatrix load_state(const std::string &source, Rng &rng, const Globals &g) {
    const auto parts = split(source, ':');
    DensityMatrix rho = [&] {
        if (parts[0] == "pure" && parts.size() == 3)
            return basis_state(parse_count(parts[1], "basis label"),
                               parse_count(parts[2], "dimension"));
        if (parts[0] == "mixed" && parts.size() == 2)
            return maximally_mixed(parse_count(parts[1], "dimension"));
        if (parts[0] == "random" && parts.size() == 2)
            return random_density(parse_count(parts[1], "dimension"), rng);
        return DensityMatrix::from(io::load_matrix(source));
    }();
    if (g.noise_p)
        rho = depolarize(rho, *g.noise_p);
    return rho;
}

/// An operator source: a matrix file, or identity:<n>, shift:<n>, haar:<n>.
UnitaryOperator load_unitary(const std::string &source, Rng &rng) {
    const auto parts = split(source, ':');
    if (parts.size() == 2) {
        if (parts[0] == "identity")
            return UnitaryOperator::identity(parse_count(parts[1], "dimension"));
        if (parts[0] == "shift")
            return shift_u(parse_count(parts[1], "dimension"));
        if (parts[0] == "haar")
            return haar_unitary(parse_count(parts[1], "dimension"), rng);
    }
    return UnitaryOperator::from(io::load_matrix(source), 1e-10);
}

std::string point_json(int q, int p, double w) {
    nlohmann::ordered_json j;
    j["q"] = q;
    j["p"] = p;
    j["w"] = io::rounded(w);
    return j.dump();
}

enum class Method { Direct, Circuit, Synth };

double wigner_point(const DensityMatrix &rho, const PhasePoint &alpha, Method m) {
    switch (m) {
    case Method::Direct:
        return std::real(trace(matmul(phase_point_operator(alpha), rho.matrix())));
    case Method::Circuit:
        return wigner_via_circuit(rho, alpha);
    case Method::Synth:
        return wigner_via_synthesis(rho, alpha);
    }
    return 0.0;
}

WignerGrid wigner_grid(const DensityMatrix &rho, Method m) {
    if (m == Method::Direct)
        return wigner_direct(rho);
    const std::size_t n = rho.dim();
    const std::size_t side = 2 * n;
    PhasePoint(0, 0, n);
    std::vector<double> values(side * side);
    parallel_for(side * side, [&](std::size_t idx) {
        values[idx] = wigner_point(
            rho, PhasePoint(static_cast<int>(idx / side), static_cast<int>(idx % side), n), m);
    });
    return {n, std::move(values)};
}

std::string render_grid(const WignerGrid &w, const std::string &format) {
    if (format == "csv")
        return io::grid_to_csv(w);
    if (format == "json")
        return io::grid_to_json(w).dump() + "\n";
    return io::grid_to_ascii(w);
}

std::string gate_text(const GateOp &g) {
    std::string line(to_string(g.kind));
    for (int t : g.targets)
        line += " " + std::to_string(t);
    if (g.kind == GateKind::PhaseShift || g.kind == GateKind::ControlledPhase)
        line += " theta=" + io::format_number(g.theta);
    return line;
}

const std::map<std::string, Method> kMethods{
    {"direct", Method::Direct}, {"circuit", Method::Circuit}, {"synth", Method::Synth}};

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Trace, Wigner-function and spectral estimates from probe-qubit circuits"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals globals;
    app.add_option("--seed", globals.seed, "Seed for random:<n> and haar:<n> sources");
    app.add_option("--noise-p", globals.noise_p, "Depolarize input states by p")
        ->check(CLI::Range(0.0, 1.0));

    // scatter
    auto *scatter = app.add_subcommand("scatter", "Probe polarization and Tr(U rho)");
    std::string sc_rho, sc_u, sc_circuit;
    scatter->add_option("--rho", sc_rho, "State source")->required();
    auto *u_opt = scatter->add_option("--u", sc_u, "Operator source");
    auto *c_opt = scatter->add_option("--circuit", sc_circuit,
                                      "Controlled circuit JSON (qubit 0 is the control)");
    u_opt->excludes(c_opt);
    scatter->require_option(2);

    // wigner
    auto *wigner = app.add_subcommand("wigner", "Discrete Wigner function");
    std::string w_rho, w_point, w_format = "csv", w_method = "direct";
    wigner->add_option("--rho", w_rho, "State source")->required();
    wigner->add_option("--point", w_point, "Single phase point q,p");
    wigner->add_option("--format", w_format)->check(CLI::IsMember({"csv", "json", "ascii"}));
    wigner->add_option("--method", w_method)->check(CLI::IsMember({"direct", "circuit", "synth"}));

    // spectrum
    auto *spectrum = app.add_subcommand("spectrum", "Spectral density or structure function");
    std::string s_u, s_format = "csv";
    int s_n1 = 0;
    bool s_structure = false, s_circuit = false;
    spectrum->add_option("--u", s_u, "Operator source")->required();
    spectrum->add_option("--n1", s_n1, "Counter qubits")->required();
    spectrum->add_flag("--structure", s_structure, "Structure function instead of density");
    spectrum->add_flag("--via-circuit", s_circuit, "Simulate the three-register circuit");
    spectrum->add_option("--format", s_format)->check(CLI::IsMember({"csv", "json"}));

    // synth
    auto *synth = app.add_subcommand("synth", "Gate sequence for controlled 2N A(q,p)");
    std::size_t y_n = 0;
    int y_q = 0, y_p = 0;
    std::string y_emit = "json";
    bool y_verify = false;
    synth->add_option("--n", y_n, "System dimension (power of two)")->required();
    synth->add_option("--q", y_q)->required();
    synth->add_option("--p", y_p)->required();
    synth->add_option("--emit", y_emit)->check(CLI::IsMember({"json", "text"}));
    synth->add_flag("--verify", y_verify, "Compare against the dense operator");

    // demo-fig3
    auto *demo = app.add_subcommand("demo-fig3", "Wigner grids of the four N=4 basis states");
    std::string d_format = "csv", d_method = "direct", d_out;
    demo->add_option("--format", d_format)->check(CLI::IsMember({"csv", "json", "ascii"}));
    demo->add_option("--method", d_method)->check(CLI::IsMember({"direct", "circuit", "synth"}));
    demo->add_option("--out-dir", d_out, "Write one file per state instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        Rng rng(globals.seed);

        if (*scatter) {
            const DensityMatrix rho = load_state(sc_rho, rng, globals);
            ScatteringResult r;
            if (!sc_u.empty()) {
                const UnitaryOperator u = load_unitary(sc_u, rng);
                r = scattering_circuit(rho, u);
            } else {
                const Circuit c =
                    io::circuit_from_json(io::parse_json(io::read_file(sc_circuit), sc_circuit));
                const int width =
                    std::max(io::circuit_width(c), 1 + register_qubits(rho.dim()));
                r = scatter_through(rho, c, width);
            }
            std::cout << io::scattering_to_json(r).dump() << "\n";
        } else if (*wigner) {
            const DensityMatrix rho = load_state(w_rho, rng, globals);
            const Method m = kMethods.at(w_method);
            if (!w_point.empty()) {
                const auto parts = split(w_point, ',');
                if (parts.size() != 2)
                    fail(ErrorCode::InvalidArgument, "--point expects q,p");
                const PhasePoint alpha(static_cast<int>(parse_count(parts[0], "q")),
                                       static_cast<int>(parse_count(parts[1], "p")), rho.dim());
                const double w = wigner_point(rho, alpha, m);
                if (w_format == "json")
                    std::cout << point_json(alpha.q(), alpha.p(), w) << "\n";
                else if (w_format == "csv")
                    std::cout << "q,p,w\n"
                              << alpha.q() << "," << alpha.p() << "," << io::format_number(w)
                              << "\n";
                else
                    fail(ErrorCode::InvalidArgument, "--format ascii needs the full grid");
            } else {
                std::cout << render_grid(wigner_grid(rho, m), w_format);
            }
        } else if (*spectrum) {
            const UnitaryOperator u = load_unitary(s_u, rng);
            SpectralSeries s;
            if (s_structure && s_circuit)
                fail(ErrorCode::InvalidArgument,
                     "--via-circuit is available for the spectral density only");
            if (s_structure)
                s = structure_function(u, s_n1);
            else if (s_circuit)
                s = spectral_density_via_circuit(u, s_n1);
            else
                s = spectral_density(u, s_n1);
            if (s_format == "json")
                std::cout << io::spectrum_to_json(s).dump() << "\n";
            else
                std::cout << io::spectrum_to_csv(s);
        } else if (*synth) {
            const PhasePoint alpha(y_q, y_p, y_n);
            const GateSequence seq = synth_phase_point_circuit(alpha);
            if (y_emit == "json") {
                std::cout << io::circuit_to_json(seq.gates).dump(2) << "\n";
            } else {
                std::cout << "# qubits " << seq.num_qubits << " (control 0, system 1.."
                          << seq.system_qubits << ", work " << seq.work_qubits() << ")\n";
                for (const auto &g : seq.gates)
                    std::cout << gate_text(g) << "\n";
            }
            if (y_verify) {
                const auto check = verify_against(seq, phase_point_unitary(alpha).matrix());
                const bool ok = check.max_error < 1e-12 && check.leakage < 1e-12;
                std::cerr << "verify: max_error=" << io::format_number(check.max_error)
                          << " leakage=" << io::format_number(check.leakage) << " "
                          << (ok ? "ok" : "FAILED") << "\n";
                if (!ok)
                    fail(ErrorCode::InvalidState, "synthesised circuit differs from the dense operator");
            }
        } else if (*demo) {
            const Method m = kMethods.at(d_method);
            const char *labels[] = {"00", "01", "10", "11"};
            std::vector<WignerGrid> grids;
            for (std::size_t q0 = 0; q0 < 4; ++q0)
                grids.push_back(wigner_grid(pseudo_pure(q0, 4, globals.noise_p.value_or(0.0)), m));
            if (!d_out.empty()) {
                fs::create_directories(d_out);
                for (std::size_t q0 = 0; q0 < 4; ++q0) {
                    const fs::path path =
                        fs::path(d_out) / ("fig3_" + std::string(labels[q0]) + "." +
                                           (d_format == "ascii" ? "txt" : d_format));
                    std::ofstream out(path, std::ios::binary);
                    out << render_grid(grids[q0], d_format);
                    if (!out)
                        fail(ErrorCode::Io, "cannot write '" + path.string() + "'");
                    std::cout << path.string() << "\n";
                }
            } else {
                for (std::size_t q0 = 0; q0 < 4; ++q0)
                    std::cout << "# |" << labels[q0] << ">\n" << render_grid(grids[q0], d_format);
            }
        }
    } catch (const Error &e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception &e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
