#include <catch_amalgamated.hpp>

#include <random>

#include "qpfb/bound2q.hpp"
#include "qpfb/json_io.hpp"

using namespace qpfb;

TEST_CASE("matrix JSON uses the exact field names") {
    CMat m(1, 2);
    m(0, 0) = cplx(1.0, -2.0);
    m(0, 1) = cplx(0.5, 0.0);
    const nlohmann::json j = io::matrix_to_json(m);
    CHECK(j.at("rows") == 1);
    CHECK(j.at("cols") == 2);
    CHECK(j.at("entries")[0][0] == 1.0);
    CHECK(j.at("entries")[0][1] == -2.0);
    CHECK(j.at("entries")[1][0] == 0.5);
}

TEST_CASE("round trip preserves matrices bit-exactly") {
    std::mt19937_64 rng(64);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat m(5, 3);
    for (auto& v : m.entries()) v = cplx(gauss(rng), gauss(rng));
    const CMat back = io::matrix_from_json(io::matrix_to_json(m));
    REQUIRE(back.rows() == m.rows());
    REQUIRE(back.cols() == m.cols());
    for (size_t k = 0; k < m.entries().size(); ++k)
        CHECK(back.entries()[k] == m.entries()[k]);
}

TEST_CASE("choi JSON carries the qubit count and round trips") {
    const ChoiMatrix chi = bound2q::extremal_channel(0.95, 0.95, UnitaryGate::cnot());
    const nlohmann::json j = io::choi_to_json(chi);
    CHECK(j.at("n_qubits") == 2);
    const ChoiMatrix back = io::choi_from_json(j);
    CHECK(back.n_qubits == 2);
    CHECK((back.mat - chi.mat).frobenius_norm() == 0.0);
    // reloaded channel still scores the bound
    CHECK(process_fidelity(back, UnitaryGate::cnot()) ==
          Catch::Approx(bound2q::bound(0.95, 0.95).bound).margin(1e-9));
}

TEST_CASE("entries length mismatch is rejected") {
    nlohmann::json j = {{"rows", 2}, {"cols", 2}, {"entries", {{1.0, 0.0}}}};
    CHECK_THROWS_AS(io::matrix_from_json(j), std::invalid_argument);
}
