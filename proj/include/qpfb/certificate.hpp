// Dual certificate for the two-qubit bound: closed-form Lagrange
// multipliers (x, w, y, z), the operator
//   M = 1/4 |Phi+><Phi+| + x R_F + w R_G + y I + z |++><++| (x) I_out,
// complementary slackness M chi_S = 0, positivity M >= 0, the analytic
// eigenvalue formulas with the identities A^2 = B and C^2 = D, and the
// bound recovery F_chi = -(xF + wG + 4y + z). Everything lives in the
// U = I frame; slackness is frame independent.
#pragma once

#include "qpfb/bound2q.hpp"

namespace qpfb::certificate {

struct Multipliers {
    double x, w, y, z;
};

struct DualCertificate {
    Multipliers mult;
    CMat m;  // 16x16 Hermitian
    ExtremalParams abcd;
    double min_eig;
    double slackness_norm;   // ||M chi_S||_F
    double bound_recovered;  // -(xF + wG + 4y + z)
};

namespace detail {
inline void check_interior(double f, double g) {
    if (!(g > 0.0 && g < 1.0))
        throw std::invalid_argument("certificate: G must lie strictly inside (0,1)");
    if (!(f > bound2q::threshold(g) && f <= 1.0))
        throw std::invalid_argument("certificate: F must lie in (F_th(G), 1]");
}
}  // namespace detail

// Closed-form multipliers evaluated at a = a(F, G).
inline Multipliers multipliers(double f, double g) {
    detail::check_interior(f, g);
    const double a = bound2q::params_from_fidelities(f, g).a;
    const double sg = std::sqrt(g);
    const double s1g = std::sqrt(1.0 - g);
    const double s4a = std::sqrt(qpfb::detail::clamp0(4.0 - a * a));
    const double denom = std::sqrt(g * (4.0 - a * a)) - a * s1g;
    if (std::abs(denom) < 1e-14)
        throw std::invalid_argument("certificate: singular multiplier system");
    Multipliers m{};
    m.x = s4a * (3.0 * a + 2.0 * sg) / (2.0 * a * s1g - 2.0 * std::sqrt(g * (4.0 - a * a)));
    m.w = -(3.0 * s4a + 2.0 * s1g) * (3.0 * a + 2.0 * sg) / (64.0 * std::sqrt(g * (1.0 - g)));
    m.y = (3.0 * a + 2.0 * sg) * (3.0 * s4a + 2.0 * s1g) / (32.0 * denom);
    m.z = (s4a - 2.0 * s1g) / (2.0 * s1g) * m.y;
    return m;
}

// Independent route: solve the 4x4 linear system M|chi_m> = 0 expressed in
// the ansatz coefficients,
//   2a(1 + x + 4y) + b(1 + x) = 0
//   a(w + z) + 2b(w + y + z) = 0
//   2c(x + 4y) + d x        = 0
//   c z + 2d(y + z)          = 0
// by Gaussian elimination with partial pivoting.
inline Multipliers multipliers_from_linear_system(double f, double g) {
    detail::check_interior(f, g);
    const ExtremalParams p = bound2q::params_from_fidelities(f, g);
    // unknown order: x, w, y, z
    double mat[4][5] = {
        {2.0 * p.a + p.b, 0.0, 8.0 * p.a, 0.0, -(2.0 * p.a + p.b)},
        {0.0, p.a + 2.0 * p.b, 2.0 * p.b, p.a + 2.0 * p.b, 0.0},
        {2.0 * p.c + p.d, 0.0, 8.0 * p.c, 0.0, 0.0},
        {0.0, 0.0, 2.0 * p.d, p.c + 2.0 * p.d, 0.0},
    };
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(mat[r][col]) > std::abs(mat[piv][col])) piv = r;
        if (std::abs(mat[piv][col]) < 1e-13)
            throw std::invalid_argument("certificate: singular multiplier system");
        std::swap(mat[col], mat[piv]);
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double fac = mat[r][col] / mat[col][col];
            for (int c = col; c < 5; ++c) mat[r][c] -= fac * mat[col][c];
        }
    }
    return Multipliers{mat[0][4] / mat[0][0], mat[1][4] / mat[1][1],
                       mat[2][4] / mat[2][2], mat[3][4] / mat[3][3]};
}

// Residuals of the four slackness equations at given multipliers.
inline std::array<double, 4> linear_system_residuals(const ExtremalParams& p,
                                                     const Multipliers& m) {
    return {
        2.0 * p.a * (1.0 + m.x + 4.0 * m.y) + p.b * (1.0 + m.x),
        p.a * (m.w + m.z) + 2.0 * p.b * (m.w + m.y + m.z),
        2.0 * p.c * (m.x + 4.0 * m.y) + p.d * m.x,
        p.c * m.z + 2.0 * p.d * (m.y + m.z),
    };
}

inline CMat dual_operator(const Multipliers& m) {
    const CMat phi = max_entangled(2);
    const CMat plus2 = superposition_state(2);
    CMat op = 0.25 * outer(phi) + m.x * fidelity_operator_rf(2) +
              m.w * fidelity_operator_rg(2) + m.y * CMat::identity(16) +
              m.z * kron(outer(plus2), CMat::identity(4));
    return op;
}

inline DualCertificate build_m(double f, double g) {
    DualCertificate cert{};
    cert.mult = multipliers(f, g);
    cert.abcd = bound2q::params_from_fidelities(f, g);
    cert.m = dual_operator(cert.mult);
    cert.min_eig = min_eigenvalue(cert.m);
    cert.slackness_norm = (cert.m * bound2q::extremal_choi_seed(cert.abcd)).frobenius_norm();
    cert.bound_recovered = -(cert.mult.x * f + cert.mult.w * g + 4.0 * cert.mult.y + cert.mult.z);
    return cert;
}

struct AnalyticSpectrum {
    double l1, l2, l3, l4, l5;
    double a_coef, b_coef, c_coef, d_coef;  // the A, B, C, D intermediates
};

// lambda_1 = y (8-fold), lambda_{2,3} = (A -/+ sqrt(B))/8 (3-fold each),
// lambda_{4,5} = (C -/+ sqrt(D))/8 (simple).
inline AnalyticSpectrum analytic_eigenvalues(const Multipliers& m) {
    AnalyticSpectrum s{};
    s.a_coef = m.x + 8.0 * m.y + 4.0 * m.z;
    s.b_coef = m.x * m.x - 4.0 * m.x * m.z + 16.0 * m.z * m.z;
    s.c_coef = 1.0 + 4.0 * m.w + m.x + 8.0 * m.y + 4.0 * m.z;
    s.d_coef = 1.0 + 16.0 * m.w * m.w + 2.0 * m.x + m.x * m.x -
               4.0 * m.w * (1.0 + m.x - 8.0 * m.z) - 4.0 * m.z - 4.0 * m.x * m.z +
               16.0 * m.z * m.z;
    const double sb = std::sqrt(qpfb::detail::clamp0(s.b_coef));
    const double sd = std::sqrt(qpfb::detail::clamp0(s.d_coef));
    s.l1 = m.y;
    s.l2 = (s.a_coef - sb) / 8.0;
    s.l3 = (s.a_coef + sb) / 8.0;
    s.l4 = (s.c_coef - sd) / 8.0;
    s.l5 = (s.c_coef + sd) / 8.0;
    return s;
}

// The closed forms of A and C in terms of (a, G), used as an extra
// consistency route.
inline double a_coef_from_params(double a, double g) {
    const double denom = std::sqrt(g * (4.0 - a * a)) - a * std::sqrt(1.0 - g);
    return (3.0 * a + 2.0 * std::sqrt(g)) / (16.0 * std::sqrt(1.0 - g)) *
           (16.0 - 3.0 * a * a - 4.0 * g) / denom;
}

inline double c_coef_from_params(double a, double g) {
    const double denom = std::sqrt(g * (4.0 - a * a)) - a * std::sqrt(1.0 - g);
    return (3.0 * a * a + 4.0 * g) / (16.0 * std::sqrt(g)) *
           (3.0 * std::sqrt(4.0 - a * a) + 2.0 * std::sqrt(1.0 - g)) / denom;
}

// Full analytic multiset {l1 x8, l2 x3, l3 x3, l4, l5}, ascending.
inline std::vector<double> analytic_spectrum_multiset(const AnalyticSpectrum& s) {
    std::vector<double> v;
    v.insert(v.end(), 8, s.l1);
    v.insert(v.end(), 3, s.l2);
    v.insert(v.end(), 3, s.l3);
    v.push_back(s.l4);
    v.push_back(s.l5);
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace qpfb::certificate
