// The three fidelity functionals: average computational-basis fidelity F,
// superposition-state fidelity G and process fidelity F_chi, plus the
// Hofmann bound. Valid for arbitrary qubit count.
#pragma once

#include "qpfb/channels.hpp"

namespace qpfb {

struct FidelityPair {
    double f_basis;
    double g_super;
    int n_qubits;
};

// |s> = (1/sqrt(2^N)) sum_j |j>
inline CMat superposition_state(int n_qubits) {
    const int d = pow2(n_qubits);
    CMat v(d, 1);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) v(j, 0) = amp;
    return v;
}

// R_F = (1/2^N) sum_j |j><j| (x) |j><j|
inline CMat fidelity_operator_rf(int n_qubits) {
    const int d = pow2(n_qubits);
    CMat r(d * d, d * d);
    const double w = 1.0 / d;
    for (int j = 0; j < d; ++j) r(j * d + j, j * d + j) = w;
    return r;
}

// R_G = |s><s| (x) |s><s|
inline CMat fidelity_operator_rg(int n_qubits) {
    const CMat s = superposition_state(n_qubits);
    return outer(kron(s, s));
}

namespace detail {
inline double rotated_trace(const CMat& r, const ChoiMatrix& chi, const UnitaryGate& u) {
    if (chi.n_qubits != u.n_qubits)
        throw std::invalid_argument("fidelity: channel/gate qubit count mismatch");
    const CMat iu = kron(CMat::identity(chi.dim()), u.u);
    return ((iu * r * iu.adjoint()) * chi.mat).trace().real();
}
}  // namespace detail

// F = Tr[(I (x) U) R_F (I (x) U^dag) chi]
inline double basis_fidelity(const ChoiMatrix& chi, const UnitaryGate& u) {
    return detail::rotated_trace(fidelity_operator_rf(u.n_qubits), chi, u);
}

// G = Tr[(I (x) U) R_G (I (x) U^dag) chi]
inline double superposition_fidelity(const ChoiMatrix& chi, const UnitaryGate& u) {
    return detail::rotated_trace(fidelity_operator_rg(u.n_qubits), chi, u);
}

// F_chi = <chi_U| chi |chi_U> / 2^N, requiring chi trace preserving so that
// Tr[chi] = 2^N and this agrees with the normalized overlap.
inline double process_fidelity(const ChoiMatrix& chi, const UnitaryGate& u) {
    if (chi.n_qubits != u.n_qubits)
        throw std::invalid_argument("process_fidelity: qubit count mismatch");
    const CMat v = choi_vector(u);
    return (inner(v, chi.mat * v)).real() / pow2(u.n_qubits);
}

// F_chi >= F + F' - 1, clamped at zero.
inline double hofmann_bound(double f, double f_prime) {
    if (f < 0.0 || f > 1.0 || f_prime < 0.0 || f_prime > 1.0)
        throw std::invalid_argument("hofmann_bound: fidelities must lie in [0,1]");
    return std::max(f + f_prime - 1.0, 0.0);
}

}  // namespace qpfb
