#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "resonet/errors.hpp"

namespace resonet {

using cplx = std::complex<double>;

// Row-major dense real symmetric matrix bundled with its order.
struct SymMatrix {
    std::size_t n = 0;
    std::vector<double> a; // n*n row-major

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static SymMatrix zero(std::size_t n) {
        return SymMatrix{n, std::vector<double>(n * n, 0.0)};
    }
};

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    std::vector<double> vectors; // row-major; column k is the eigenvector of values[k]
    std::size_t n = 0;

    double vec(std::size_t i, std::size_t k) const { return vectors[i * n + k]; }
};

inline double frobenius_norm(const SymMatrix& m) {
    double s = 0.0;
    for (double v : m.a) s += v * v;
    return std::sqrt(s);
}

inline double offdiag_norm(const SymMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            if (i != j) s += m.at(i, j) * m.at(i, j);
    return std::sqrt(s);
}

// Cyclic Jacobi for real symmetric matrices. Sweeps row by row, rotating
// every off-diagonal pair; stops once the off-diagonal Frobenius norm falls
// below 1e-14 times the matrix norm. Eigenvalues are returned ascending with
// matching eigenvector columns.
inline EigenDecomposition jacobi_eigh(const SymMatrix& input) {
    const std::size_t n = input.n;
    SymMatrix m = input;
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    const double scale = frobenius_norm(m);
    const double target = 1e-14 * (scale > 0.0 ? scale : 1.0);
    const int max_sweeps = 100;

    int sweep = 0;
    double off = offdiag_norm(m);
    for (; sweep < max_sweeps && off > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m.at(p, q);
                if (apq == 0.0) continue;
                const double app = m.at(p, p);
                const double aqq = m.at(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                // Stable tangent of the rotation angle.
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m.at(k, p);
                    const double mkq = m.at(k, q);
                    m.at(k, p) = c * mkp - s * mkq;
                    m.at(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m.at(p, k);
                    const double mqk = m.at(q, k);
                    m.at(p, k) = c * mpk - s * mqk;
                    m.at(q, k) = s * mpk + c * mqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        off = offdiag_norm(m);
    }
    if (off > target)
        throw numerical_failure_error("jacobi eigensolver failed to converge", sweep, off);

    EigenDecomposition out;
    out.n = n;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = m.at(i, i);

    // Sort ascending, permuting eigenvector columns along.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t best = i;
        for (std::size_t j = i + 1; j < n; ++j)
            if (out.values[order[j]] < out.values[order[best]]) best = j;
        std::swap(order[i], order[best]);
    }
    std::vector<double> vals(n);
    std::vector<double> vecs(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        vals[k] = out.values[order[k]];
        for (std::size_t i = 0; i < n; ++i) vecs[i * n + k] = v[i * n + order[k]];
    }
    out.values = std::move(vals);
    out.vectors = std::move(vecs);
    return out;
}

// Gaussian elimination with partial pivoting for dense complex systems.
// Throws invalid_argument_error when the matrix is numerically singular.
inline std::vector<cplx> solve_complex(std::vector<cplx> a, std::vector<cplx> b,
                                       std::size_t n) {
    double scale = 0.0;
    for (const cplx& z : a) scale = std::max(scale, std::abs(z));
    if (scale == 0.0) throw invalid_argument_error("singular linear system (zero matrix)");

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double mag = std::abs(a[r * n + col]);
            if (mag > best) {
                best = mag;
                piv = r;
            }
        }
        if (best <= 1e-300 * scale || best == 0.0)
            throw invalid_argument_error("singular linear system");
        if (piv != col) {
            for (std::size_t k = col; k < n; ++k) std::swap(a[piv * n + k], a[col * n + k]);
            std::swap(b[piv], b[col]);
        }
        const cplx inv_pivot = 1.0 / a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = a[r * n + col] * inv_pivot;
            if (f == cplx(0.0, 0.0)) continue;
            a[r * n + col] = 0.0;
            for (std::size_t k = col + 1; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
            b[r] -= f * b[col];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t i = n; i-- > 0;) {
        cplx acc = b[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= a[i * n + k] * x[k];
        x[i] = acc / a[i * n + i];
    }
    return x;
}

inline double norm2(const std::vector<cplx>& x) {
    double s = 0.0;
    for (const cplx& z : x) s += std::norm(z);
    return std::sqrt(s);
}

} // namespace resonet
