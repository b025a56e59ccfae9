#include <catch_amalgamated.hpp>

#include "qpfb/bound2q.hpp"
#include "qpfb/oracle.hpp"

using namespace qpfb;
using namespace qpfb::oracle;

TEST_CASE("random CPTP construction passes is_cptp for any seed") {
    for (std::uint64_t seed : {1ull, 42ull, 12345ull}) {
        const ChoiMatrix chi = random_cptp(2, 16, seed);
        const CptpReport rep = is_cptp(chi, 1e-9);
        CHECK(rep.ok);
        CHECK(rep.tp_residual < 1e-10);
    }
}

TEST_CASE("rank-1 random CPTP maps are unitary channels") {
    const ChoiMatrix chi = random_cptp(2, 1, 7);
    const EigResult es = eigh(chi.mat);
    // pure Choi state of trace 4: single eigenvalue 4
    CHECK(es.eigenvalues.back() == Catch::Approx(4.0).margin(1e-9));
    for (int k = 0; k < 15; ++k) CHECK(std::abs(es.eigenvalues[k]) < 1e-9);
}

TEST_CASE("random CPTP is deterministic in the seed") {
    const ChoiMatrix a = random_cptp(2, 8, 99);
    const ChoiMatrix b = random_cptp(2, 8, 99);
    REQUIRE(a.mat.entries().size() == b.mat.entries().size());
    for (size_t k = 0; k < a.mat.entries().size(); ++k)
        CHECK(a.mat.entries()[k] == b.mat.entries()[k]);
}

TEST_CASE("analytic gradient matches central finite differences") {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const UnitaryGate u = UnitaryGate::cnot();
    const PenaltyProblem pb = PenaltyProblem::make(u, 0.95, 0.95, 100.0);
    const double h = 1e-5;

    for (int point = 0; point < 10; ++point) {
        CMat l(16, 6);
        for (auto& v : l.entries()) v = cplx(gauss(rng), gauss(rng));
        const CMat grad = pb.gradient(l);

        // probe a handful of coordinates per point
        for (int probe = 0; probe < 6; ++probe) {
            const int i = static_cast<int>(rng() % 16);
            const int j = static_cast<int>(rng() % 6);
            for (int part = 0; part < 2; ++part) {
                CMat lp = l, lm = l;
                const cplx dir = part == 0 ? cplx(h, 0.0) : cplx(0.0, h);
                lp(i, j) += dir;
                lm(i, j) -= dir;
                const double fd = (pb.value(lp) - pb.value(lm)) / (2.0 * h);
                const double an =
                    2.0 * (part == 0 ? grad(i, j).real() : grad(i, j).imag());
                CHECK(fd == Catch::Approx(an).epsilon(1e-4).margin(1e-7));
            }
        }
    }
}

TEST_CASE("oracle reproduces a perfect gate under tight constraints") {
    OracleConfig cfg;
    cfg.restarts = 2;
    cfg.seed = 5;
    const OracleResult res = minimize_fchi(UnitaryGate::cnot(), 1.0, 1.0, cfg);
    REQUIRE(res.converged);
    CHECK(res.best_fchi == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("oracle approaches the bound from above at (0.95, 0.95)") {
    OracleConfig cfg;
    cfg.restarts = 3;
    cfg.seed = 11;
    const OracleResult res = minimize_fchi(UnitaryGate::cnot(), 0.95, 0.95, cfg);
    REQUIRE(res.converged);
    const double b = bound2q::bound(0.95, 0.95).bound;
    CHECK(res.best_fchi >= b - 1e-9);
    CHECK(res.best_fchi <= b + 5e-3);
    CHECK(res.f_residual <= 1e-6);
    CHECK(res.g_residual <= 1e-6);
    CHECK(res.tp_residual <= 1e-6);
}

TEST_CASE("oracle result does not depend on the target unitary") {
    OracleConfig cfg;
    cfg.restarts = 3;
    cfg.seed = 21;
    const OracleResult a = minimize_fchi(UnitaryGate::cnot(), 0.9, 0.9, cfg);
    std::mt19937_64 rng(77);
    cfg.seed = 22;
    const OracleResult b = minimize_fchi(haar_random_unitary(2, rng), 0.9, 0.9, cfg);
    REQUIRE(a.converged);
    REQUIRE(b.converged);
    CHECK(a.best_fchi == Catch::Approx(b.best_fchi).margin(1e-3));
    const double bound = bound2q::bound(0.9, 0.9).bound;
    CHECK(a.best_fchi >= bound - 1e-9);
    CHECK(b.best_fchi >= bound - 1e-9);
}

TEST_CASE("oracle is deterministic under a fixed config") {
    OracleConfig cfg;
    cfg.restarts = 2;
    cfg.seed = 33;
    cfg.max_iters = 300;
    const OracleResult a = minimize_fchi(UnitaryGate::cnot(), 0.97, 0.96, cfg);
    const OracleResult b = minimize_fchi(UnitaryGate::cnot(), 0.97, 0.96, cfg);
    CHECK(a.best_fchi == b.best_fchi);
    CHECK(a.achieved_f == b.achieved_f);
    CHECK(a.achieved_g == b.achieved_g);
}
