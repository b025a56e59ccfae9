#include <catch_amalgamated.hpp>

#include <random>

#include "qpfb/matcore.hpp"

using namespace qpfb;

namespace {

CMat random_hermitian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = gauss(rng);
        for (int j = i + 1; j < n; ++j) {
            m(i, j) = cplx(gauss(rng), gauss(rng));
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

CMat random_psd(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat l(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            l(i, j) = cplx(gauss(rng), gauss(rng));
    return l * l.adjoint();
}

CMat pauli_z2() {
    CMat z(2, 2);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    return z;
}

CMat pauli_x2() {
    CMat x(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    return x;
}

}  // namespace

TEST_CASE("kron of identities") {
    const CMat r = kron(CMat::identity(2), CMat::identity(2));
    CHECK((r - CMat::identity(4)).frobenius_norm() == 0.0);
}

TEST_CASE("kron of sigma_z with sigma_z is diag(1,-1,-1,1)") {
    const CMat r = kron(pauli_z2(), pauli_z2());
    CMat expected(4, 4);
    expected(0, 0) = 1.0;
    expected(1, 1) = -1.0;
    expected(2, 2) = -1.0;
    expected(3, 3) = 1.0;
    CHECK((r - expected).frobenius_norm() == 0.0);
}

TEST_CASE("kron block structure of |0><0| with sigma_x") {
    CMat proj(2, 2);
    proj(0, 0) = 1.0;
    const CMat r = kron(proj, pauli_x2());
    CHECK(r(0, 1) == cplx(1.0));
    CHECK(r(1, 0) == cplx(1.0));
    for (int i = 2; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(r(i, j) == cplx(0.0));
}

TEST_CASE("kron associativity on random triples") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const CMat a = random_hermitian(2, rng);
        const CMat b = random_hermitian(3, rng);
        const CMat c = random_hermitian(2, rng);
        const CMat lhs = kron(kron(a, b), c);
        const CMat rhs = kron(a, kron(b, c));
        CHECK((lhs - rhs).frobenius_norm() <= 1e-12 * lhs.frobenius_norm());
    }
}

TEST_CASE("partial trace of maximally entangled projector gives identity") {
    // 4 |Phi_2+><Phi_2+| traced over the output leaves I_4
    CMat phi(16, 1);
    for (int j = 0; j < 4; ++j) phi(j * 4 + j, 0) = 0.5;
    const CMat chi = 4.0 * outer(phi);
    const CMat tr_out = partial_trace(chi, 4, 4, Subsystem::Out);
    CHECK((tr_out - CMat::identity(4)).frobenius_norm() < 1e-14);
}

TEST_CASE("partial trace factorizes on product operators") {
    std::mt19937_64 rng(5);
    const CMat a = random_hermitian(3, rng);
    const CMat b = random_hermitian(4, rng);
    const CMat traced = partial_trace(kron(a, b), 3, 4, Subsystem::In);
    const CMat expected = a.trace() * b;
    CHECK((traced - expected).frobenius_norm() < 1e-12 * expected.frobenius_norm());
}

TEST_CASE("partial trace of identity") {
    const CMat r = partial_trace(CMat::identity(16), 4, 4, Subsystem::In);
    CHECK((r - 4.0 * CMat::identity(4)).frobenius_norm() < 1e-14);
}

TEST_CASE("partial trace preserves the full trace") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 5; ++rep) {
        const CMat m = random_psd(12, rng);
        const CMat reduced = partial_trace(m, 3, 4, Subsystem::Out);
        CHECK(std::abs((reduced.trace() - m.trace()).real()) < 1e-10 * std::abs(m.trace().real()));
    }
}

TEST_CASE("partial trace rejects dimension mismatch") {
    CHECK_THROWS_AS(partial_trace(CMat::identity(6), 4, 4, Subsystem::In),
                    std::invalid_argument);
}

TEST_CASE("eigh of a diagonal matrix sorts ascending") {
    CMat m(3, 3);
    m(0, 0) = 3.0;
    m(1, 1) = 1.0;
    m(2, 2) = 2.0;
    const EigResult r = eigh(m);
    CHECK(r.eigenvalues[0] == Catch::Approx(1.0).margin(1e-14));
    CHECK(r.eigenvalues[1] == Catch::Approx(2.0).margin(1e-14));
    CHECK(r.eigenvalues[2] == Catch::Approx(3.0).margin(1e-14));
}

TEST_CASE("eigh of sigma_x") {
    const EigResult r = eigh(pauli_x2());
    CHECK(r.eigenvalues[0] == Catch::Approx(-1.0).margin(1e-13));
    CHECK(r.eigenvalues[1] == Catch::Approx(1.0).margin(1e-13));
}

TEST_CASE("eigh of the basis-fidelity operator R_F") {
    // R_F = 1/4 sum |jk><jk| (x) |jk><jk| is diagonal with four entries 1/4
    CMat rf(16, 16);
    for (int j = 0; j < 4; ++j) rf(j * 4 + j, j * 4 + j) = 0.25;
    const EigResult r = eigh(rf);
    for (int k = 0; k < 12; ++k) CHECK(r.eigenvalues[k] == Catch::Approx(0.0).margin(1e-13));
    for (int k = 12; k < 16; ++k) CHECK(r.eigenvalues[k] == Catch::Approx(0.25).margin(1e-13));
}

TEST_CASE("eigh rejects non-Hermitian input") {
    CMat m(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(eigh(m), std::invalid_argument);
}

TEST_CASE("eigh reconstruction and unitarity on random Hermitian matrices") {
    std::mt19937_64 rng(42);
    for (int n : {4, 16, 64}) {
        const CMat m = random_hermitian(n, rng);
        const EigResult r = eigh(m);

        CMat lambda(n, n);
        for (int k = 0; k < n; ++k) lambda(k, k) = r.eigenvalues[k];
        const CMat rebuilt = r.eigenvectors * lambda * r.eigenvectors.adjoint();
        CHECK((rebuilt - m).frobenius_norm() <= 1e-9 * m.frobenius_norm());

        const CMat gram = r.eigenvectors.adjoint() * r.eigenvectors;
        CHECK((gram - CMat::identity(n)).frobenius_norm() <= 1e-10);

        // residual per eigenpair
        for (int k = 0; k < n; ++k) {
            CMat v(n, 1);
            for (int i = 0; i < n; ++i) v(i, 0) = r.eigenvectors(i, k);
            const CMat resid = m * v - r.eigenvalues[k] * v;
            CHECK(resid.frobenius_norm() <= 1e-10 * m.frobenius_norm());
        }
    }
}

TEST_CASE("hermitian-tagged construction enforces symmetry") {
    CMat m(2, 2);
    m(0, 1) = cplx(0.0, 1.0);
    m(1, 0) = cplx(0.0, -1.0);
    CHECK_NOTHROW(CMat::hermitian(m));
    m(1, 0) = cplx(0.0, -1.0 + 1e-6);
    CHECK_THROWS_AS(CMat::hermitian(m), std::invalid_argument);
}
