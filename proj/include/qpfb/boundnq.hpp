// N-qubit generalization of the bound: phase-pattern ansatz with V_j
// operators, TP constraints, the closed-form bound and threshold, numerical
// parameter inversion, channel construction (N <= 4) and the scaling table
// against the Hofmann bound.
#pragma once

#include "qpfb/bound2q.hpp"

namespace qpfb {

struct NQubitParams {
    int n;
    double a, b, c, d;
};

namespace boundnq {

inline double threshold(int n, double g) {
    if (n < 1) throw std::invalid_argument("threshold: N must be >= 1");
    detail::check_unit_interval(g, "G");
    const double d = pow2(n);
    const double dm1 = d - 1.0;
    return 1.0 - 2.0 / d + (1.0 - g) / (d * d / 2.0) +
           (2.0 / (d * d)) * std::sqrt(detail::clamp0((1.0 - g) * (dm1 * dm1 - g)));
}

inline BoundReport bound(int n, double f, double g) {
    if (n < 1) throw std::invalid_argument("nq_bound: N must be >= 1");
    detail::check_unit_interval(f, "F");
    detail::check_unit_interval(g, "G");
    BoundReport r{};
    r.f_th = threshold(n, g);
    r.hofmann_equiv = hofmann_bound(f, g);
    if (f < r.f_th) {
        r.bound = 0.0;
        r.regime = Regime::BelowThreshold;
        return r;
    }
    const double d = pow2(n);
    const double e = 1.0 - f;
    const double inner =
        (1.0 - e * d / 2.0) * std::sqrt(g) -
        std::sqrt(detail::clamp0(e * (1.0 - g))) *
            std::sqrt(detail::clamp0(d - 1.0 - e * d * d / 4.0));
    r.bound = inner * inner;
    r.regime = Regime::Active;
    return r;
}

namespace detail_nq {

// Back-substitute b, c, d from a using the G equation and the two TP
// constraints; the d branch is chosen to match the N=2 closed form.
inline NQubitParams complete_from_a(int n, double a, double g) {
    const double rt = std::pow(2.0, n / 2.0);  // 2^{N/2}
    const double d_dim = pow2(n);
    const double dm1 = d_dim - 1.0;
    NQubitParams p{};
    p.n = n;
    p.a = a;
    p.b = std::sqrt(g) - a / rt;
    p.c = std::sqrt(qpfb::detail::clamp0((d_dim - a * a) / dm1));
    const double gamma = p.b * p.b + (2.0 / rt) * a * p.b;
    const double beta = dm1 * (2.0 / rt) * p.c;
    const double disc = qpfb::detail::clamp0(beta * beta - 4.0 * dm1 * gamma);
    p.d = (-beta + std::sqrt(disc)) / (2.0 * dm1);
    return p;
}

inline double f_of_params(const NQubitParams& p) {
    const double rt = std::pow(2.0, p.n / 2.0);
    const double d_dim = pow2(p.n);
    const double t1 = p.a + p.b / rt;
    const double t2 = p.c + p.d / rt;
    return t1 * t1 / d_dim + (1.0 - 1.0 / d_dim) * t2 * t2;
}

inline double g_of_params(const NQubitParams& p) {
    const double rt = std::pow(2.0, p.n / 2.0);
    const double t = p.a / rt + p.b;
    return t * t;
}

inline std::array<double, 2> tp_residuals(const NQubitParams& p) {
    const double rt = std::pow(2.0, p.n / 2.0);
    const double d_dim = pow2(p.n);
    const double dm1 = d_dim - 1.0;
    return {
        p.a * p.a + dm1 * p.c * p.c - d_dim,
        p.b * p.b + (2.0 / rt) * p.a * p.b + dm1 * (p.d * p.d + (2.0 / rt) * p.c * p.d),
    };
}

}  // namespace detail_nq

// Invert (F, G) to the ansatz parameters. The closed-form bound fixes
// a + b/2^{N/2} up to sign; that seed is then polished by a 1-D Newton
// iteration on a so the F equation holds to machine precision.
inline NQubitParams params(int n, double f, double g) {
    const BoundReport rep = bound(n, f, g);
    if (rep.regime == Regime::BelowThreshold)
        throw std::invalid_argument("nq_params: F below threshold, no real solution");
    const double rt = std::pow(2.0, n / 2.0);
    const double d_dim = pow2(n);
    double a = (rt * std::sqrt(rep.bound) - std::sqrt(g) / rt) / (1.0 - 1.0 / d_dim);

    auto residual = [&](double aa) {
        return detail_nq::f_of_params(detail_nq::complete_from_a(n, aa, g)) - f;
    };
    for (int it = 0; it < 60; ++it) {
        const double r = residual(a);
        if (std::abs(r) < 1e-13) break;
        const double h = 1e-7 * std::max(1.0, std::abs(a));
        const double dr = (residual(a + h) - residual(a - h)) / (2.0 * h);
        if (std::abs(dr) < 1e-14) break;
        double step = r / dr;
        if (std::abs(step) > 0.5) step = std::copysign(0.5, step);
        a -= step;
    }

    const NQubitParams p = detail_nq::complete_from_a(n, a, g);
    const auto tp = detail_nq::tp_residuals(p);
    if (std::abs(tp[0]) > 1e-8 || std::abs(tp[1]) > 1e-8 ||
        std::abs(detail_nq::f_of_params(p) - f) > 1e-8 ||
        std::abs(detail_nq::g_of_params(p) - g) > 1e-8)
        throw std::invalid_argument("nq_params: inversion failed to satisfy constraints");
    return p;
}

// V_j = tensor_k sigma_z^{j_k}, j_k the k-th most significant bit of j.
inline CMat phase_pattern(int n, int j) {
    const int d = pow2(n);
    CMat v(d, d);
    for (int m = 0; m < d; ++m) {
        // parity of the overlap between the pattern j and basis index m
        const int bits = j & m;
        const int parity = __builtin_popcount(static_cast<unsigned>(bits)) & 1;
        v(m, m) = parity ? -1.0 : 1.0;
    }
    return v;
}

// The 2^N ansatz vectors in the U = I frame:
//   |chi_0> = a |Phi_N+> + b |s>|s>
//   |chi_j> = (I (x) V_j)(c |Phi_N+> + d |s>|s>), j >= 1.
inline std::vector<CMat> extremal_components(const NQubitParams& p) {
    const int d = pow2(p.n);
    const CMat phi = max_entangled(p.n);
    const CMat s = superposition_state(p.n);
    const CMat ss = kron(s, s);
    const CMat id = CMat::identity(d);
    std::vector<CMat> out;
    out.reserve(d);
    for (int j = 0; j < d; ++j) {
        const double amp_ent = (j == 0) ? p.a : p.c;
        const double amp_prod = (j == 0) ? p.b : p.d;
        const CMat base = amp_ent * phi + amp_prod * ss;
        out.push_back(j == 0 ? base : kron(id, phase_pattern(p.n, j)) * base);
    }
    return out;
}

inline ChoiMatrix extremal_channel(int n, double f, double g, const UnitaryGate& u) {
    if (n > 4)
        throw std::invalid_argument("nq_extremal_channel: N > 4 exceeds the size cap");
    if (u.n_qubits != n)
        throw std::invalid_argument("nq_extremal_channel: gate qubit count mismatch");
    const NQubitParams p = params(n, f, g);
    const int dd = pow2(2 * n);
    CMat chi_s(dd, dd);
    for (const CMat& v : extremal_components(p)) chi_s = chi_s + outer(v);
    const CMat iu = kron(CMat::identity(pow2(n)), u.u);
    return ChoiMatrix(n, iu * chi_s * iu.adjoint());
}

struct ScalingRow {
    int n;
    double f_th;
    double bound;
    double hofmann;
};

// Per-N threshold and bound at fixed (F, G); the Hofmann column F + G - 1
// does not depend on N.
inline std::vector<ScalingRow> scaling_table(int n_min, int n_max, double f, double g) {
    std::vector<ScalingRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        const BoundReport r = bound(n, f, g);
        rows.push_back({n, r.f_th, r.bound, hofmann_bound(f, g)});
    }
    return rows;
}

}  // namespace boundnq
}  // namespace qpfb
