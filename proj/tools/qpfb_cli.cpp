// Command-line front end: bound evaluation, figure-data sweeps,
// extremal-channel export, dual-certificate reports, noisy-gate simulation,
// N-qubit scaling tables and the brute-force oracle.
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpfb/boundnq.hpp"
#include "qpfb/certificate.hpp"
#include "qpfb/json_io.hpp"
#include "qpfb/oracle.hpp"

using nlohmann::json;
using namespace qpfb;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

const char* regime_name(Regime r) {
    return r == Regime::Active ? "Active" : "BelowThreshold";
}

json report_to_json(const BoundReport& r) {
    return {{"bound", r.bound},
            {"f_th", r.f_th},
            {"regime", regime_name(r.regime)},
            {"hofmann_equiv", r.hofmann_equiv}};
}

UnitaryGate parse_gate(const std::string& spec, int n_qubits) {
    if (spec == "cnot") return UnitaryGate::cnot();
    if (spec == "cz") return UnitaryGate::cz();
    if (spec == "toffoli") return UnitaryGate::toffoli();
    if (spec == "identity") return UnitaryGate::identity(n_qubits);
    if (spec.rfind("random:", 0) == 0) {
        std::mt19937_64 rng(std::stoull(spec.substr(7)));
        return haar_random_unitary(n_qubits, rng);
    }
    const CMat u = io::matrix_from_json(io::load_json_file(spec));
    const int n = static_cast<int>(std::lround(std::log2(u.rows())));
    return UnitaryGate(n, u);
}

void write_csv(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string format_row(double f, double g, const BoundReport& r) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g\n", f, g, r.bound, r.f_th,
                  hofmann_bound(f, g));
    return buf;
}

void emit_gnuplot_script(const std::string& csv_path, bool diagonal) {
    const std::string script = csv_path + ".gp";
    std::ofstream out(script);
    if (!out) throw std::runtime_error("cannot write " + script);
    out << "set datafile separator ','\n";
    if (diagonal) {
        out << "set xlabel 'F = G'\nset ylabel 'lower bound'\n"
            << "plot '" << csv_path << "' skip 1 using 1:3 with lines title 'bound', \\\n"
            << "     '" << csv_path << "' skip 1 using 1:5 with lines title 'Hofmann'\n";
    } else {
        out << "set xlabel 'F'\nset ylabel 'G'\nset zlabel 'bound'\n"
            << "set dgrid3d\nsplot '" << csv_path << "' skip 1 using 1:2:3 with lines\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Process-fidelity lower bounds from minimal state-fidelity data"};
    app.require_subcommand(1);

    double f = 0.0, g = 0.0, noise_p = 0.0;
    int n_qubits = 2;
    std::string gate_spec = "identity";
    std::string out_path;
    std::string n_range = "2..8";
    std::uint64_t seed = 1;
    int restarts = 20;
    bool diagonal = false, gnuplot = false;
    double f_min = 0.75, f_max = 1.0, g_min = 0.75, g_max = 1.0;
    int f_steps = 101, g_steps = 101;

    auto* cmd_bound = app.add_subcommand("bound", "Evaluate the lower bound at (F, G)");
    cmd_bound->add_option("--F", f)->required();
    cmd_bound->add_option("--G", g)->required();
    cmd_bound->add_option("--N", n_qubits);

    auto* cmd_sweep = app.add_subcommand("sweep", "Write a CSV sweep over (F, G)");
    cmd_sweep->add_option("--f-min", f_min);
    cmd_sweep->add_option("--f-max", f_max);
    cmd_sweep->add_option("--f-steps", f_steps);
    cmd_sweep->add_option("--g-min", g_min);
    cmd_sweep->add_option("--g-max", g_max);
    cmd_sweep->add_option("--g-steps", g_steps);
    cmd_sweep->add_flag("--diagonal", diagonal, "Sweep the G = F diagonal");
    cmd_sweep->add_flag("--gnuplot", gnuplot, "Also emit a gnuplot script");
    cmd_sweep->add_option("--out", out_path)->required();

    auto* cmd_extremal = app.add_subcommand("extremal", "Export the extremal Choi matrix");
    cmd_extremal->add_option("--F", f)->required();
    cmd_extremal->add_option("--G", g)->required();
    cmd_extremal->add_option("--N", n_qubits);
    cmd_extremal->add_option("--gate", gate_spec);
    cmd_extremal->add_option("--out", out_path)->required();

    auto* cmd_cert = app.add_subcommand("certificate", "Verify the dual certificate at (F, G)");
    cmd_cert->add_option("--F", f)->required();
    cmd_cert->add_option("--G", g)->required();

    auto* cmd_sim = app.add_subcommand("simulate", "Depolarized gate versus the bound");
    cmd_sim->add_option("--gate", gate_spec);
    cmd_sim->add_option("--p", noise_p)->required();
    cmd_sim->add_option("--N", n_qubits);

    auto* cmd_scaling = app.add_subcommand("scaling", "Bound versus qubit count, CSV");
    cmd_scaling->add_option("--F", f)->required();
    cmd_scaling->add_option("--G", g)->required();
    cmd_scaling->add_option("--n", n_range, "Range as min..max");
    cmd_scaling->add_option("--out", out_path);

    auto* cmd_oracle = app.add_subcommand("oracle", "Minimize process fidelity numerically");
    cmd_oracle->add_option("--F", f)->required();
    cmd_oracle->add_option("--G", g)->required();
    cmd_oracle->add_option("--unitary", gate_spec);
    cmd_oracle->add_option("--restarts", restarts);
    cmd_oracle->add_option("--seed", seed)->required();
    cmd_oracle->add_option("--N", n_qubits);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_bound->parsed()) {
            const BoundReport r = n_qubits == 2 ? bound2q::bound(f, g) : boundnq::bound(n_qubits, f, g);
            std::cout << report_to_json(r).dump(2) << "\n";
        } else if (cmd_sweep->parsed()) {
            std::string csv = "F,G,bound,f_th,hofmann\n";
            if (diagonal) {
                for (int i = 0; i < f_steps; ++i) {
                    const double fv = f_min + (f_max - f_min) * i / (f_steps - 1);
                    csv += format_row(fv, fv, bound2q::bound(fv, fv));
                }
            } else {
                for (int i = 0; i < f_steps; ++i)
                    for (int j = 0; j < g_steps; ++j) {
                        const double fv = f_min + (f_max - f_min) * i / (f_steps - 1);
                        const double gv = g_min + (g_max - g_min) * j / (g_steps - 1);
                        csv += format_row(fv, gv, bound2q::bound(fv, gv));
                    }
            }
            write_csv(out_path, csv);
            if (gnuplot) emit_gnuplot_script(out_path, diagonal);
        } else if (cmd_extremal->parsed()) {
            const UnitaryGate u = parse_gate(gate_spec, n_qubits);
            const ChoiMatrix chi = u.n_qubits == 2 ? bound2q::extremal_channel(f, g, u)
                                                   : boundnq::extremal_channel(u.n_qubits, f, g, u);
            io::save_json_file(out_path, io::choi_to_json(chi));
        } else if (cmd_cert->parsed()) {
            const auto cert = certificate::build_m(f, g);
            const double expected = bound2q::bound(f, g).bound;
            json j = {{"F", f},
                      {"G", g},
                      {"x", cert.mult.x},
                      {"w", cert.mult.w},
                      {"y", cert.mult.y},
                      {"z", cert.mult.z},
                      {"min_eig", cert.min_eig},
                      {"slackness_norm", cert.slackness_norm},
                      {"bound_recovered", cert.bound_recovered}};
            std::cout << j.dump(2) << "\n";
            if (cert.min_eig < -1e-9 || cert.slackness_norm > 1e-9 ||
                std::abs(cert.bound_recovered - expected) > 1e-9) {
                std::cerr << "certificate invariant violated\n";
                return kExitNumerical;
            }
        } else if (cmd_sim->parsed()) {
            const UnitaryGate u = parse_gate(gate_spec, n_qubits);
            const ChoiMatrix chi = depolarizing(u.n_qubits, noise_p, u);
            const double fv = basis_fidelity(chi, u);
            const double gv = superposition_fidelity(chi, u);
            const double true_fchi = process_fidelity(chi, u);
            const BoundReport r = u.n_qubits == 2 ? bound2q::bound(fv, gv)
                                                  : boundnq::bound(u.n_qubits, fv, gv);
            json j = {{"F", fv},
                      {"G", gv},
                      {"bound", r.bound},
                      {"hofmann_FG", hofmann_bound(fv, gv)},
                      {"true_fchi", true_fchi},
                      {"gap", true_fchi - r.bound}};
            std::cout << j.dump(2) << "\n";
        } else if (cmd_scaling->parsed()) {
            const auto sep = n_range.find("..");
            if (sep == std::string::npos)
                throw std::invalid_argument("scaling: --n expects min..max");
            const int n_min = std::stoi(n_range.substr(0, sep));
            const int n_max = std::stoi(n_range.substr(sep + 2));
            std::string csv = "N,f_th,bound,hofmann\n";
            for (const auto& row : boundnq::scaling_table(n_min, n_max, f, g)) {
                char buf[128];
                std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g\n", row.n, row.f_th,
                              row.bound, row.hofmann);
                csv += buf;
            }
            write_csv(out_path, csv);
        } else if (cmd_oracle->parsed()) {
            const UnitaryGate u = parse_gate(gate_spec, n_qubits);
            oracle::OracleConfig cfg;
            cfg.restarts = restarts;
            cfg.seed = seed;
            const auto res = oracle::minimize_fchi(u, f, g, cfg);
            json j = {{"best_fchi", res.best_fchi},
                      {"achieved_F", res.achieved_f},
                      {"achieved_G", res.achieved_g},
                      {"tp_residual", res.tp_residual},
                      {"f_residual", res.f_residual},
                      {"g_residual", res.g_residual},
                      {"converged", res.converged}};
            std::cout << j.dump(2) << "\n";
            if (!res.converged) {
                std::cerr << "oracle did not converge\n";
                return kExitNumerical;
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
