// Choi-matrix representation of qubit channels: construction from unitaries,
// channel application, CP/TP checks, convex mixing and a depolarizing noise
// model. Tensor convention: input space first, qubit 1 leftmost.
#pragma once

#include <cstdint>
#include <random>

#include "qpfb/matcore.hpp"

namespace qpfb {

inline int pow2(int n) { return 1 << n; }

// --- standard gates -------------------------------------------------------

inline CMat pauli_x() {
    CMat m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline CMat pauli_y() {
    CMat m(2, 2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

inline CMat pauli_z() {
    CMat m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

inline CMat hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    CMat m(2, 2);
    m(0, 0) = s; m(0, 1) = s;
    m(1, 0) = s; m(1, 1) = -s;
    return m;
}

inline CMat cnot_matrix() {
    CMat m(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
}

inline CMat cz_matrix() {
    CMat m = CMat::identity(4);
    m(3, 3) = -1.0;
    return m;
}

inline CMat toffoli_matrix() {
    CMat m = CMat::identity(8);
    m(6, 6) = 0.0; m(7, 7) = 0.0;
    m(6, 7) = 1.0; m(7, 6) = 1.0;
    return m;
}

struct UnitaryGate {
    int n_qubits;
    CMat u;

    UnitaryGate(int n, CMat mat) : n_qubits(n), u(std::move(mat)) {
        const int d = pow2(n);
        if (u.rows() != d || u.cols() != d)
            throw std::invalid_argument("UnitaryGate: dimension does not match qubit count");
        if ((u.adjoint() * u - CMat::identity(d)).frobenius_norm() > 1e-10)
            throw std::invalid_argument("UnitaryGate: matrix is not unitary");
    }

    static UnitaryGate identity(int n) { return UnitaryGate(n, CMat::identity(pow2(n))); }
    static UnitaryGate cnot() { return UnitaryGate(2, cnot_matrix()); }
    static UnitaryGate cz() { return UnitaryGate(2, cz_matrix()); }
    static UnitaryGate toffoli() { return UnitaryGate(3, toffoli_matrix()); }
};

// Haar-random unitary via QR (modified Gram-Schmidt with phase fix) of a
// complex Gaussian matrix.
inline UnitaryGate haar_random_unitary(int n_qubits, std::mt19937_64& rng) {
    const int d = pow2(n_qubits);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            g(i, j) = cplx(gauss(rng), gauss(rng));
    CMat q(d, d);
    for (int j = 0; j < d; ++j) {
        std::vector<cplx> v(d);
        for (int i = 0; i < d; ++i) v[i] = g(i, j);
        for (int k = 0; k < j; ++k) {
            cplx proj = 0.0;
            for (int i = 0; i < d; ++i) proj += std::conj(q(i, k)) * v[i];
            for (int i = 0; i < d; ++i) v[i] -= proj * q(i, k);
        }
        double nrm = 0.0;
        for (int i = 0; i < d; ++i) nrm += std::norm(v[i]);
        nrm = std::sqrt(nrm);
        // fix the phase so the diagonal of R is real positive
        cplx r = 0.0;
        for (int i = 0; i < d; ++i)
            if (std::abs(v[i]) > 1e-300) { r = v[i] / std::abs(v[i]); break; }
        if (r == 0.0) r = 1.0;
        for (int i = 0; i < d; ++i) q(i, j) = v[i] / (nrm * r);
    }
    return UnitaryGate(n_qubits, q);
}

// --- Choi matrices --------------------------------------------------------

struct ChoiMatrix {
    int n_qubits;
    CMat mat;  // 4^N x 4^N, input (x) output

    ChoiMatrix(int n, CMat m) : n_qubits(n), mat(std::move(m)) {
        const int dim = pow2(2 * n);
        if (mat.rows() != dim || mat.cols() != dim)
            throw std::invalid_argument("ChoiMatrix: dimension does not match qubit count");
        if (mat.hermiticity_error() > 1e-10 * std::max(1.0, mat.frobenius_norm()))
            throw std::invalid_argument("ChoiMatrix: matrix is not Hermitian");
    }

    int dim() const { return pow2(n_qubits); }
};

// (1/sqrt(2^N)) sum_j |j>|j>, as a 4^N column vector.
inline CMat max_entangled(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("max_entangled: N must be >= 1");
    const int d = pow2(n_qubits);
    CMat v(d * d, 1);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) v(j * d + j, 0) = amp;
    return v;
}

// |chi_U> = (I (x) U) |Phi_N^+>
inline CMat choi_vector(const UnitaryGate& u) {
    const int d = pow2(u.n_qubits);
    return kron(CMat::identity(d), u.u) * max_entangled(u.n_qubits);
}

// chi_U = 2^N |chi_U><chi_U|
inline ChoiMatrix choi_from_unitary(const UnitaryGate& u) {
    const CMat v = choi_vector(u);
    return ChoiMatrix(u.n_qubits, static_cast<double>(pow2(u.n_qubits)) * outer(v));
}

// rho_out = Tr_in[(rho_in^T (x) I) chi], transposition in the computational basis.
inline CMat apply(const ChoiMatrix& chi, const CMat& rho_in) {
    const int d = chi.dim();
    if (rho_in.rows() != d || rho_in.cols() != d)
        throw std::invalid_argument("apply: input state dimension mismatch");
    const CMat op = kron(rho_in.transpose(), CMat::identity(d)) * chi.mat;
    return partial_trace(op, d, d, Subsystem::In);
}

struct CptpReport {
    double min_eig;
    double tp_residual;
    bool ok;
};

inline CptpReport is_cptp(const ChoiMatrix& chi, double tol = 1e-9) {
    const int d = chi.dim();
    CptpReport r{};
    r.min_eig = min_eigenvalue(chi.mat);
    r.tp_residual =
        (partial_trace(chi.mat, d, d, Subsystem::Out) - CMat::identity(d)).frobenius_norm();
    r.ok = r.min_eig >= -tol && r.tp_residual <= tol;
    return r;
}

inline ChoiMatrix mix(double p, const ChoiMatrix& a, const ChoiMatrix& b) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("mix: p must lie in [0,1]");
    if (a.n_qubits != b.n_qubits) throw std::invalid_argument("mix: qubit count mismatch");
    return ChoiMatrix(a.n_qubits, (1.0 - p) * a.mat + p * b.mat);
}

// (1-p) chi_U + p * (I (x) I) / 2^N; the second term is the fully
// depolarizing channel, trace preserving by construction.
inline ChoiMatrix depolarizing(int n_qubits, double p, const UnitaryGate& u) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing: p must lie in [0,1]");
    const int dim = pow2(2 * n_qubits);
    const ChoiMatrix white(n_qubits,
                           (1.0 / pow2(n_qubits)) * CMat::identity(dim));
    return mix(p, choi_from_unitary(u), white);
}

}  // namespace qpfb
