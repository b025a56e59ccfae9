// Two-qubit lower bound on process fidelity from the basis fidelity F and
// the superposition fidelity G: the closed-form bound with its threshold,
// inversion of (F, G) to the extremal ansatz parameters (a, b, c, d), the
// extremal channel that saturates the bound, and the three boundary
// unitaries realizing the sub-threshold corner points.
#pragma once

#include <array>

#include "qpfb/fidelity.hpp"

namespace qpfb {

enum class Regime { Active, BelowThreshold };

struct BoundReport {
    double bound;
    double f_th;
    Regime regime;
    double hofmann_equiv;  // Hofmann bound with F' = G
};

struct ExtremalParams {
    double a, b, c, d;
};

namespace detail {
// Radicands that are exact zeros analytically at the domain boundary may
// round slightly negative; clamp those.
inline double clamp0(double v) {
    if (v < 0.0 && v > -1e-14) return 0.0;
    return v;
}

inline void check_unit_interval(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}
}  // namespace detail

namespace bound2q {

inline double threshold(double g) {
    detail::check_unit_interval(g, "G");
    return (5.0 - g + std::sqrt(detail::clamp0(9.0 - 10.0 * g + g * g))) / 8.0;
}

inline BoundReport bound(double f, double g) {
    detail::check_unit_interval(f, "F");
    detail::check_unit_interval(g, "G");
    BoundReport r{};
    r.f_th = threshold(g);
    r.hofmann_equiv = hofmann_bound(f, g);
    if (f < r.f_th) {
        r.bound = 0.0;
        r.regime = Regime::BelowThreshold;
        return r;
    }
    const double root =
        std::sqrt(detail::clamp0((4.0 * f - 1.0) * (1.0 - f))) * std::sqrt(detail::clamp0(1.0 - g));
    const double inner = (2.0 * f - 1.0) * std::sqrt(g) - root;
    r.bound = inner * inner;
    r.regime = Regime::Active;
    return r;
}

inline ExtremalParams params_from_fidelities(double f, double g) {
    detail::check_unit_interval(f, "F");
    detail::check_unit_interval(g, "G");
    if (f < threshold(g))
        throw std::invalid_argument("params_from_fidelities: F below threshold");
    ExtremalParams p{};
    p.a = (2.0 / 3.0) *
          ((8.0 * f - 5.0) * std::sqrt(g) -
           4.0 * std::sqrt(detail::clamp0((1.0 - f) * (4.0 * f - 1.0) * (1.0 - g))));
    p.b = std::sqrt(g) - p.a / 2.0;
    p.c = std::sqrt(detail::clamp0((4.0 - p.a * p.a) / 3.0));
    p.d = std::sqrt(detail::clamp0((1.0 - g) / 3.0)) - 0.5 * p.c;
    return p;
}

// The four ansatz vectors |chi_m> in the U = I frame:
//   |chi_0> = a |Phi+> + b |++>|++>
//   |chi_m> = c Z_m |Phi+> + d |++> (sigma-z pattern m applied to |++>)
inline std::array<CMat, 4> extremal_components(const ExtremalParams& p) {
    const CMat phi = max_entangled(2);
    const CMat plus2 = superposition_state(2);  // |++>
    const CMat i2 = CMat::identity(2), i4 = CMat::identity(4);
    const CMat z = pauli_z();
    const std::array<CMat, 4> zjk = {i4, kron(i2, z), kron(z, i2), kron(z, z)};

    std::array<CMat, 4> out = {CMat(16, 1), CMat(16, 1), CMat(16, 1), CMat(16, 1)};
    for (int m = 0; m < 4; ++m) {
        const double amp_ent = (m == 0) ? p.a : p.c;
        const double amp_prod = (m == 0) ? p.b : p.d;
        const CMat ent = kron(i4, zjk[m]) * phi;
        const CMat prod = kron(plus2, zjk[m] * plus2);
        out[m] = amp_ent * ent + amp_prod * prod;
    }
    return out;
}

// chi_S = sum_m |chi_m><chi_m| in the U = I frame.
inline CMat extremal_choi_seed(const ExtremalParams& p) {
    const auto comps = extremal_components(p);
    CMat chi_s(16, 16);
    for (const CMat& v : comps) chi_s = chi_s + outer(v);
    return chi_s;
}

// chi_tilde = (I (x) U) chi_S (I (x) U^dag)
inline ChoiMatrix extremal_channel(double f, double g, const UnitaryGate& u) {
    if (u.n_qubits != 2)
        throw std::invalid_argument("extremal_channel: two-qubit gate required");
    const CMat chi_s = extremal_choi_seed(params_from_fidelities(f, g));
    const CMat iu = kron(CMat::identity(4), u.u);
    return ChoiMatrix(2, iu * chi_s * iu.adjoint());
}

enum class BoundaryKind { FlipX, FlipZ, FlipZX };

// The unitaries U*X, U*Z, U*Z*X with X = sx (x) sx and Z = sz (x) sz reach
// fidelity triples (F, G, F_chi) = (0,1,0), (1,0,0) and (0,0,0).
inline ChoiMatrix boundary_channel(BoundaryKind kind, const UnitaryGate& u) {
    if (u.n_qubits != 2)
        throw std::invalid_argument("boundary_channel: two-qubit gate required");
    const CMat x2 = kron(pauli_x(), pauli_x());
    const CMat z2 = kron(pauli_z(), pauli_z());
    CMat v = u.u;
    switch (kind) {
        case BoundaryKind::FlipX: v = u.u * x2; break;
        case BoundaryKind::FlipZ: v = u.u * z2; break;
        case BoundaryKind::FlipZX: v = u.u * z2 * x2; break;
    }
    return choi_from_unitary(UnitaryGate(2, v));
}

// Linearized bound near F = 1 - eps, G = 1 - delta.
inline double expansion_bound(double eps, double delta) {
    return 1.0 - 4.0 * eps - delta - 2.0 * std::sqrt(3.0) * std::sqrt(eps * delta);
}

}  // namespace bound2q
}  // namespace qpfb
