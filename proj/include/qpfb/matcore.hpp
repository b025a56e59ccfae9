// Dense complex linear algebra for small Hermitian problems: Kronecker
// products, partial traces and a Jacobi eigensolver. Everything here is a
// pure value type; matrices are immutable once built and safe to share
// across threads.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpfb {

using cplx = std::complex<double>;

class CMat {
public:
    CMat() = default;
    CMat(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows <= 0 || cols <= 0)
            throw std::invalid_argument("CMat: dimensions must be positive");
    }

    static CMat zero(int rows, int cols) { return CMat(rows, cols); }

    static CMat identity(int n) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    // Column vector from amplitudes.
    static CMat col(std::vector<cplx> v) {
        CMat m(static_cast<int>(v.size()), 1);
        m.a_ = std::move(v);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<cplx>& entries() const { return a_; }
    std::vector<cplx>& entries() { return a_; }

    CMat operator+(const CMat& o) const {
        check_same_shape(o);
        CMat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }

    CMat operator-(const CMat& o) const {
        check_same_shape(o);
        CMat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }

    CMat operator*(const CMat& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("CMat: inner dimension mismatch");
        CMat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int k = 0; k < cols_; ++k) {
                const cplx aik = (*this)(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r(i, j) += aik * o(k, j);
            }
        }
        return r;
    }

    friend CMat operator*(cplx s, const CMat& m) {
        CMat r(m.rows_, m.cols_);
        for (size_t k = 0; k < m.a_.size(); ++k) r.a_[k] = s * m.a_[k];
        return r;
    }
    friend CMat operator*(double s, const CMat& m) { return cplx(s, 0.0) * m; }

    CMat adjoint() const {
        CMat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    CMat transpose() const {
        CMat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                r(j, i) = (*this)(i, j);
        return r;
    }

    CMat conjugate() const {
        CMat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = std::conj(a_[k]);
        return r;
    }

    cplx trace() const {
        if (rows_ != cols_) throw std::invalid_argument("CMat: trace of non-square matrix");
        cplx t = 0.0;
        for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    // Largest entrywise deviation from Hermitian symmetry.
    double hermiticity_error() const {
        if (rows_ != cols_) return std::numeric_limits<double>::infinity();
        double e = 0.0;
        for (int i = 0; i < rows_; ++i)
            for (int j = i; j < cols_; ++j)
                e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return e;
    }

    // Hermitian-tagged construction: rejects matrices that are not Hermitian
    // to 1e-12 entrywise, and returns the exactly symmetrized value.
    static CMat hermitian(const CMat& m, double tol = 1e-12) {
        if (m.rows() != m.cols() || m.hermiticity_error() > tol)
            throw std::invalid_argument("CMat::hermitian: input is not Hermitian");
        CMat r(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
        return r;
    }

private:
    void check_same_shape(const CMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("CMat: shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

inline CMat kron(const CMat& a, const CMat& b) {
    CMat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == 0.0) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

// |v><w|
inline CMat outer(const CMat& v, const CMat& w) {
    if (v.cols() != 1 || w.cols() != 1)
        throw std::invalid_argument("outer: expected column vectors");
    CMat r(v.rows(), w.rows());
    for (int i = 0; i < v.rows(); ++i)
        for (int j = 0; j < w.rows(); ++j)
            r(i, j) = v(i, 0) * std::conj(w(j, 0));
    return r;
}

inline CMat outer(const CMat& v) { return outer(v, v); }

inline cplx inner(const CMat& v, const CMat& w) {
    if (v.cols() != 1 || w.cols() != 1 || v.rows() != w.rows())
        throw std::invalid_argument("inner: expected equal-length column vectors");
    cplx s = 0.0;
    for (int i = 0; i < v.rows(); ++i) s += std::conj(v(i, 0)) * w(i, 0);
    return s;
}

enum class Subsystem { In, Out };

// Partial trace of an operator on H_in (x) H_out; the input space is the
// left tensor factor throughout the library.
inline CMat partial_trace(const CMat& m, int d_in, int d_out, Subsystem sub) {
    if (m.rows() != m.cols() || m.rows() != d_in * d_out)
        throw std::invalid_argument("partial_trace: dimension mismatch");
    if (sub == Subsystem::In) {
        CMat r(d_out, d_out);
        for (int i = 0; i < d_out; ++i)
            for (int j = 0; j < d_out; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < d_in; ++k)
                    s += m(k * d_out + i, k * d_out + j);
                r(i, j) = s;
            }
        return r;
    }
    CMat r(d_in, d_in);
    for (int i = 0; i < d_in; ++i)
        for (int j = 0; j < d_in; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < d_out; ++k)
                s += m(i * d_out + k, j * d_out + k);
            r(i, j) = s;
        }
    return r;
}

struct EigResult {
    std::vector<double> eigenvalues;  // ascending
    CMat eigenvectors;                // columns, unitary
};

// Hermitian eigendecomposition by cyclic Jacobi with complex rotations.
// Terminates when the off-diagonal Frobenius norm drops below
// 1e-13 * ||M||_F, or after 100 sweeps.
inline EigResult eigh(const CMat& m_in) {
    const int n = m_in.rows();
    if (m_in.hermiticity_error() > 1e-9 * std::max(1.0, m_in.frobenius_norm()))
        throw std::invalid_argument("eigh: input is not Hermitian");
    CMat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = 0.5 * (m_in(i, j) + std::conj(m_in(j, i)));
    CMat v = CMat::identity(n);

    const double fnorm = a.frobenius_norm();
    const double stop = 1e-13 * fnorm;

    auto offdiag_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && offdiag_norm() > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double b = std::abs(apq);
                if (b <= 1e-300) continue;
                const double phi = std::arg(apq);
                const double alpha = a(p, p).real();
                const double gamma = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * b, alpha - gamma);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                // 2x2 unitary G = [[c, -s], [s e^{-i phi}, c e^{-i phi}]]
                const cplx g11(c, 0.0), g12(-s, 0.0);
                const cplx g21 = s * std::exp(cplx(0.0, -phi));
                const cplx g22 = c * std::exp(cplx(0.0, -phi));
                // A <- G^dag A G applied to rows/cols p, q.
                for (int i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip * g11 + aiq * g21;
                    a(i, q) = aip * g12 + aiq * g22;
                }
                for (int i = 0; i < n; ++i) {
                    const cplx api = a(p, i), aqi = a(q, i);
                    a(p, i) = std::conj(g11) * api + std::conj(g21) * aqi;
                    a(q, i) = std::conj(g12) * api + std::conj(g22) * aqi;
                }
                for (int i = 0; i < n; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip * g11 + viq * g21;
                    v(i, q) = vip * g12 + viq * g22;
                }
                a(p, q) = std::conj(a(q, p));  // keep exact symmetry
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigResult res;
    res.eigenvalues.resize(n);
    res.eigenvectors = CMat(n, n);
    for (int k = 0; k < n; ++k) {
        res.eigenvalues[k] = a(order[k], order[k]).real();
        for (int i = 0; i < n; ++i)
            res.eigenvectors(i, k) = v(i, order[k]);
    }
    return res;
}

inline double min_eigenvalue(const CMat& m) { return eigh(m).eigenvalues.front(); }

}  // namespace qpfb
