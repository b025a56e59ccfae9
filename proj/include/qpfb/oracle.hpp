// Independent numerical check of the bound: minimize process fidelity over
// CPTP maps with (F, G) pinned by an escalating quadratic penalty, the map
// parametrized as chi = L L^dag so complete positivity is automatic.
// Gradients are analytic (Wirtinger derivative w.r.t. conj(L)); descent
// uses Barzilai-Borwein steps safeguarded by backtracking line search.
// Also provides deterministic random CPTP sampling for property tests.
#pragma once

#include "qpfb/fidelity.hpp"

namespace qpfb::oracle {

struct OracleConfig {
    int rank = 16;
    int restarts = 20;
    double penalty_init = 10.0;
    // quadratic-penalty bias on the constraints scales as 1/weight; 1e12
    // leaves residuals near 1e-12 so the minimizer cannot dip measurably
    // below the bound through slack constraints
    double penalty_max = 1e12;
    double penalty_scale = 10.0;
    double ls_shrink = 0.5;       // backtracking factor
    double ls_armijo = 1e-4;      // sufficient-decrease constant
    std::uint64_t seed = 1;
    int max_iters = 2000;         // per penalty stage
};

struct OracleResult {
    double best_fchi;
    double achieved_f;
    double achieved_g;
    double tp_residual;
    double f_residual;
    double g_residual;
    bool converged;
};

// f(L) = Tr[P chi] + w [(Tr[RF chi]-F)^2 + (Tr[RG chi]-G)^2 + ||Tr_out chi - I||^2],
// chi = L L^dag, P = |chi_U><chi_U| / 2^N.
struct PenaltyProblem {
    CMat p;        // process-fidelity operator in the U frame
    CMat rf, rg;   // rotated fidelity operators
    double f_target;
    double g_target;
    double weight;
    int dim;       // 2^N

    static PenaltyProblem make(const UnitaryGate& u, double f_target, double g_target,
                               double weight) {
        const int d = pow2(u.n_qubits);
        const CMat iu = kron(CMat::identity(d), u.u);
        PenaltyProblem pb{
            (1.0 / d) * outer(choi_vector(u)),
            iu * fidelity_operator_rf(u.n_qubits) * iu.adjoint(),
            iu * fidelity_operator_rg(u.n_qubits) * iu.adjoint(),
            f_target,
            g_target,
            weight,
            d,
        };
        return pb;
    }

    struct Eval {
        double value;
        double fchi, f, g, tp_norm;
    };

    Eval evaluate_chi(const CMat& chi) const {
        Eval e{};
        e.fchi = (p * chi).trace().real();
        e.f = (rf * chi).trace().real();
        e.g = (rg * chi).trace().real();
        const CMat delta = partial_trace(chi, dim, dim, Subsystem::Out) - CMat::identity(dim);
        e.tp_norm = delta.frobenius_norm();
        const double df = e.f - f_target, dg = e.g - g_target;
        e.value = e.fchi + weight * (df * df + dg * dg + e.tp_norm * e.tp_norm);
        return e;
    }

    Eval evaluate(const CMat& l) const { return evaluate_chi(l * l.adjoint()); }

    double value(const CMat& l) const { return evaluate(l).value; }

    // d f / d conj(L); a step along -gradient decreases f to first order as
    // df = 2 Re Tr[grad^dag dL].
    CMat gradient(const CMat& l) const {
        const CMat chi = l * l.adjoint();
        const double df = (rf * chi).trace().real() - f_target;
        const double dg = (rg * chi).trace().real() - g_target;
        const CMat delta = partial_trace(chi, dim, dim, Subsystem::Out) - CMat::identity(dim);
        const CMat effective =
            p + (2.0 * weight * df) * rf + (2.0 * weight * dg) * rg +
            (2.0 * weight) * kron(delta, CMat::identity(dim));
        return effective * l;
    }
};

namespace detail {

inline CMat gaussian_factor(int rows, int cols, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> gauss(0.0, scale);
    CMat l(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            l(i, j) = cplx(gauss(rng), gauss(rng));
    return l;
}

// Gradient descent with Barzilai-Borwein step sizes, safeguarded by Armijo
// backtracking, until the gradient norm stalls or max_iters is reached.
inline void descend(const PenaltyProblem& pb, CMat& l, int max_iters, double shrink,
                    double armijo) {
    double fval = pb.value(l);
    CMat grad = pb.gradient(l);
    CMat prev_l = l, prev_grad = grad;
    const double fallback_step = 1.0 / std::max(1.0, pb.weight);
    double step = fallback_step;
    double fval_window = fval;  // value 20 iterations ago, for stagnation stop
    for (int it = 0; it < max_iters; ++it) {
        double gnorm2 = 0.0;
        for (const cplx& v : grad.entries()) gnorm2 += std::norm(v);
        if (gnorm2 < 1e-26 * std::max(1.0, fval * fval)) break;
        if (it % 20 == 0) {
            if (it > 0 && fval_window - fval < 1e-15 * std::max(1.0, std::abs(fval)))
                break;
            fval_window = fval;
        }
        if (it > 0) {
            double ss = 0.0, sy = 0.0;
            for (size_t k = 0; k < l.entries().size(); ++k) {
                const cplx s = l.entries()[k] - prev_l.entries()[k];
                const cplx y = grad.entries()[k] - prev_grad.entries()[k];
                ss += std::norm(s);
                sy += (std::conj(s) * y).real();
            }
            step = sy > 1e-300 ? ss / sy : fallback_step;
        }
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            CMat trial(l.rows(), l.cols());
            for (size_t k = 0; k < l.entries().size(); ++k)
                trial.entries()[k] = l.entries()[k] - step * grad.entries()[k];
            const double ftrial = pb.value(trial);
            if (ftrial <= fval - armijo * step * 2.0 * gnorm2) {
                prev_l = std::move(l);
                prev_grad = std::move(grad);
                l = std::move(trial);
                fval = ftrial;
                grad = pb.gradient(l);
                accepted = true;
                break;
            }
            step *= shrink;
        }
        if (!accepted) break;  // no descent direction left at this scale
    }
}

// Rebuild L from the eigendecomposition of chi = L L^dag, largest modes in
// the leading columns. Leaves chi unchanged up to rounding but resets the
// factor gauge, which keeps later penalty stages well conditioned.
inline CMat refactor(const CMat& l) {
    const CMat chi = l * l.adjoint();
    const EigResult es = eigh(CMat::hermitian(chi, 1e-6));
    const int n = l.rows();
    CMat out(n, l.cols());
    for (int j = 0; j < l.cols() && j < n; ++j) {
        const int src = n - 1 - j;
        const double s = std::sqrt(std::max(0.0, es.eigenvalues[src]));
        for (int i = 0; i < n; ++i) out(i, j) = s * es.eigenvectors(i, src);
    }
    return out;
}

}  // namespace detail

inline OracleResult minimize_fchi(const UnitaryGate& u, double f, double g,
                                  const OracleConfig& cfg = {}) {
    if (cfg.rank < 1 || cfg.restarts < 1)
        throw std::invalid_argument("minimize_fchi: rank and restarts must be >= 1");
    const int dd = pow2(2 * u.n_qubits);
    std::mt19937_64 rng(cfg.seed);

    OracleResult best{};
    best.best_fchi = std::numeric_limits<double>::infinity();
    best.converged = false;

    const CMat chi_u = choi_from_unitary(u).mat;
    for (int restart = 0; restart < cfg.restarts; ++restart) {
        CMat l = detail::gaussian_factor(dd, cfg.rank, rng,
                                         1.0 / std::sqrt(static_cast<double>(cfg.rank)));
        for (double w = cfg.penalty_init; w <= cfg.penalty_max * 1.0000001;
             w *= cfg.penalty_scale) {
            const PenaltyProblem pb = PenaltyProblem::make(u, f, g, w);
            detail::descend(pb, l, cfg.max_iters, cfg.ls_shrink, cfg.ls_armijo);
            l = detail::refactor(l);
        }
        const PenaltyProblem pb = PenaltyProblem::make(u, f, g, cfg.penalty_max);
        auto e = pb.evaluate(l);
        // feasibility polish: when the achieved fidelities undershoot the
        // targets, mix toward chi_U (both fidelities are linear in chi, so
        // the mix restores them without dipping below the optimum); keep the
        // mix only if it shrinks the worst constraint residual
        const auto worst = [&](const PenaltyProblem::Eval& ev) {
            return std::max({std::abs(ev.f - f), std::abs(ev.g - g), ev.tp_norm});
        };
        double t = 0.0;
        if (f > e.f && e.f < 1.0 - 1e-15) t = std::max(t, (f - e.f) / (1.0 - e.f));
        if (g > e.g && e.g < 1.0 - 1e-15) t = std::max(t, (g - e.g) / (1.0 - e.g));
        if (t > 0.0) {
            const CMat mixed = (1.0 - std::min(t, 1.0)) * (l * l.adjoint()) +
                               std::min(t, 1.0) * chi_u;
            const auto e2 = pb.evaluate_chi(mixed);
            if (worst(e2) <= worst(e)) e = e2;
        }
        const double f_res = std::abs(e.f - f);
        const double g_res = std::abs(e.g - g);
        const bool conv = f_res <= 1e-6 && g_res <= 1e-6 && e.tp_norm <= 1e-6;
        if (conv && e.fchi < best.best_fchi) {
            best.best_fchi = e.fchi;
            best.achieved_f = e.f;
            best.achieved_g = e.g;
            best.tp_residual = e.tp_norm;
            best.f_residual = f_res;
            best.g_residual = g_res;
            best.converged = true;
        }
    }
    return best;
}

// Draw a Gaussian factor, form L L^dag, then conjugate by the inverse square
// root of the input marginal so Tr_out[chi] = I exactly.
inline ChoiMatrix random_cptp(int n_qubits, int rank, std::uint64_t seed) {
    const int d = pow2(n_qubits);
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        const CMat l = detail::gaussian_factor(d * d, rank, rng, 1.0);
        const CMat chi0 = l * l.adjoint();
        const CMat marginal = partial_trace(chi0, d, d, Subsystem::Out);
        const EigResult es = eigh(marginal);
        if (es.eigenvalues.front() < 1e-10 * es.eigenvalues.back()) continue;  // re-draw
        CMat inv_sqrt(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < d; ++k)
                    s += es.eigenvectors(i, k) * std::conj(es.eigenvectors(j, k)) /
                         std::sqrt(es.eigenvalues[k]);
                inv_sqrt(i, j) = s;
            }
        const CMat corr = kron(inv_sqrt, CMat::identity(d));
        CMat chi = corr * chi0 * corr.adjoint();
        return ChoiMatrix(n_qubits, CMat::hermitian(chi, 1e-9));
    }
    throw std::runtime_error("random_cptp: persistent singular marginal");
}

}  // namespace qpfb::oracle
