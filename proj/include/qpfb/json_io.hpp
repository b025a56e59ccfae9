// JSON serialization for matrices and Choi matrices, shared by the CLI.
// Matrix format: {"rows": r, "cols": c, "entries": [[re, im], ...]} with
// entries flat row-major; Choi files add "n_qubits".
#pragma once

#include <fstream>

#include <json.hpp>

#include "qpfb/channels.hpp"

namespace qpfb::io {

inline nlohmann::json matrix_to_json(const CMat& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (const cplx& v : m.entries())
        entries.push_back({v.real(), v.imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline CMat matrix_from_json(const nlohmann::json& j) {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const auto& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != rows * cols)
        throw std::invalid_argument("matrix JSON: entries length mismatch");
    CMat m(rows, cols);
    size_t k = 0;
    for (const auto& e : entries)
        m.entries()[k++] = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    return m;
}

inline nlohmann::json choi_to_json(const ChoiMatrix& chi) {
    nlohmann::json j = matrix_to_json(chi.mat);
    j["n_qubits"] = chi.n_qubits;
    return j;
}

inline ChoiMatrix choi_from_json(const nlohmann::json& j) {
    return ChoiMatrix(j.at("n_qubits").get<int>(), matrix_from_json(j));
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

inline void save_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace qpfb::io
