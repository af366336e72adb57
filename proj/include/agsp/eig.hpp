#pragma once

#include <algorithm>
#include <cfloat>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "agsp/matrix.hpp"

namespace agsp {

/// Eigendecomposition of a real symmetric matrix: A = V diag(lambda) V^T,
/// eigenvalues ascending, columns of V orthonormal with a deterministic sign
/// convention (largest-magnitude entry of each column is positive).
struct SymEig {
    RealVec eigenvalues;
    RealMatrix eigenvectors;
};

namespace detail {

inline double sign_like(double a, double b) { return b >= 0.0 ? std::fabs(a) : -std::fabs(a); }

// Householder reduction to tridiagonal form with accumulated transform
// (classic tred2). On exit z holds the orthogonal Q, d the diagonal and
// e[1..n-1] the subdiagonal of T with A = Q T Q^T.
inline void tred2(RealMatrix& z, RealVec& d, RealVec& e) {
    const int n = static_cast<int>(z.rows());
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (int k = 0; k <= l; ++k) scale += std::fabs(z(i, k));
            if (scale == 0.0) {
                e[i] = z(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    z(i, k) /= scale;
                    h += z(i, k) * z(i, k);
                }
                double f = z(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                z(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    z(j, i) = z(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
                    for (int k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
                    e[j] = g / h;
                    f += e[j] * z(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = z(i, j);
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (int k = 0; k <= j; ++k) z(j, k) -= f * e[k] + g * z(i, k);
                }
            }
        } else {
            e[i] = z(i, l);
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        if (d[i] != 0.0) {
            for (int j = 0; j < i; ++j) {
                double g = 0.0;
                for (int k = 0; k < i; ++k) g += z(i, k) * z(k, j);
                for (int k = 0; k < i; ++k) z(k, j) -= g * z(k, i);
            }
        }
        d[i] = z(i, i);
        z(i, i) = 1.0;
        for (int j = 0; j < i; ++j) z(i, j) = z(j, i) = 0.0;
    }
}

// QL with implicit shifts on a symmetric tridiagonal matrix (classic tqli),
// rotations accumulated into z.
inline void tqli(RealVec& d, RealVec& e, RealMatrix& z) {
    const int n = static_cast<int>(d.size());
    if (n < 2) return;
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                volatile double t = std::fabs(e[m]) + dd;
                if (t == dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw numeric_error("sym_eig: QL iteration failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + sign_like(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace detail

inline SymEig sym_eig(const RealMatrix& a, double symtol = tol::symmetry) {
    if (!a.square() || a.empty()) throw dimension_error("sym_eig: matrix must be square and nonempty");
    if (!all_finite(a)) throw numeric_error("sym_eig: non-finite entries");
    const double nrm = frobenius_norm(a);
    if (symmetry_residual(a) > symtol * std::max(1.0, nrm))
        throw numeric_error("sym_eig: input not symmetric within tolerance");
    const std::size_t n = a.rows();
    SymEig out;
    if (n == 1) {
        out.eigenvalues = {a(0, 0)};
        out.eigenvectors = RealMatrix::identity(1);
        return out;
    }
    // work on the symmetrized copy so roundoff asymmetry cannot leak through
    RealMatrix z(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) z(i, j) = 0.5 * (a(i, j) + a(j, i));
    RealVec d, e;
    detail::tred2(z, d, e);
    detail::tqli(d, e, z);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&d](std::size_t x, std::size_t y) { return d[x] < d[y]; });

    out.eigenvalues.resize(n);
    out.eigenvectors = RealMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.eigenvalues[j] = d[src];
        std::size_t imax = 0;
        double vmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double av = std::fabs(z(i, src));
            if (av > vmax) { vmax = av; imax = i; }
        }
        const double flip = z(imax, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = flip * z(i, src);
    }
    return out;
}

/// Eigendecomposition of a unitary (normal) matrix: Q = V diag(lambda) V^H,
/// |lambda_k| = 1, columns of V orthonormal. Eigenvalues are sorted by
/// principal argument psi in (-pi, pi] (psi = pi chosen at the branch point),
/// ties by ascending imaginary part. psi is cached for fractional powers.
struct UnitaryEig {
    ComplexVec eigenvalues;
    RealVec angles;  // principal arguments, branch convention applied
    ComplexMatrix eigenvectors;

    /// V diag(exp(i*alpha*psi)) V^H on the frozen decomposition. The zero
    /// power is the exact identity.
    ComplexMatrix power(double alpha) const {
        const std::size_t n = angles.size();
        if (alpha == 0.0) return ComplexMatrix::identity(n);
        ComplexMatrix w = eigenvectors;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx phase = std::polar(1.0, alpha * angles[k]);
            for (std::size_t i = 0; i < n; ++i) w(i, k) *= phase;
        }
        return w * adjoint(eigenvectors);
    }
};

namespace detail {

// Householder reduction of a complex matrix to upper Hessenberg form,
// accumulating the unitary similarity into q.
inline void hessenberg(ComplexMatrix& h, ComplexMatrix& q) {
    const std::size_t n = h.rows();
    q = ComplexMatrix::identity(n);
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;  // length of the column tail
        ComplexVec v(m);
        double xnorm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = h(k + 1 + i, k);
            xnorm += std::norm(v[i]);
        }
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        const cplx alpha = v[0];
        const cplx phase = std::abs(alpha) == 0.0 ? cplx(1.0) : alpha / std::abs(alpha);
        const cplx beta = -phase * xnorm;
        v[0] -= beta;
        double vv = 0.0;
        for (const auto& c : v) vv += std::norm(c);
        if (vv == 0.0) continue;
        const double tau = 2.0 / vv;
        // left: rows k+1..n-1
        for (std::size_t j = k; j < n; ++j) {
            cplx dot{};
            for (std::size_t i = 0; i < m; ++i) dot += std::conj(v[i]) * h(k + 1 + i, j);
            dot *= tau;
            for (std::size_t i = 0; i < m; ++i) h(k + 1 + i, j) -= dot * v[i];
        }
        // right: columns k+1..n-1
        for (std::size_t i = 0; i < n; ++i) {
            cplx dot{};
            for (std::size_t j = 0; j < m; ++j) dot += h(i, k + 1 + j) * v[j];
            dot *= tau;
            for (std::size_t j = 0; j < m; ++j) h(i, k + 1 + j) -= dot * std::conj(v[j]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            cplx dot{};
            for (std::size_t j = 0; j < m; ++j) dot += q(i, k + 1 + j) * v[j];
            dot *= tau;
            for (std::size_t j = 0; j < m; ++j) q(i, k + 1 + j) -= dot * std::conj(v[j]);
        }
    }
}

struct Givens {
    double c;
    cplx s;
};

// Rotation [[c, s], [-conj(s), c]] with real c that maps (a, b) to (r, 0).
inline Givens make_givens(cplx a, cplx b) {
    if (std::abs(b) == 0.0) return {1.0, cplx(0.0)};
    if (std::abs(a) == 0.0) return {0.0, b == cplx(0.0) ? cplx(1.0) : std::conj(b) / std::abs(b)};
    const double scale = std::abs(a) + std::abs(b);
    const double nrm = scale * std::sqrt(std::norm(a / scale) + std::norm(b / scale));
    const cplx phase = a / std::abs(a);
    return {std::abs(a) / nrm, phase * std::conj(b) / nrm};
}

// Shifted QR with deflation on an upper Hessenberg matrix, accumulating the
// Schur vectors into q. For normal input the result is diagonal to roundoff.
inline void hessenberg_qr(ComplexMatrix& h, ComplexMatrix& q) {
    const std::size_t n = h.rows();
    if (n < 2) return;
    const double eps = DBL_EPSILON;
    double hnorm = frobenius_norm(h);
    if (hnorm == 0.0) return;
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    long iters_left = 120 * static_cast<long>(n);
    while (hi > 0) {
        // deflate negligible subdiagonals
        std::ptrdiff_t l = hi;
        while (l > 0) {
            double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (s == 0.0) s = hnorm;
            if (std::abs(h(l, l - 1)) <= eps * s) {
                h(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == hi) {
            --hi;
            continue;
        }
        if (iters_left-- <= 0) throw numeric_error("unitary_eig: QR iteration failed to converge");

        // Wilkinson shift: trailing 2x2 eigenvalue closest to h(hi,hi)
        const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
        const cplx c = h(hi, hi - 1), d = h(hi, hi);
        const cplx tr2 = 0.5 * (a + d);
        const cplx disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
        const cplx mu = std::abs(tr2 + disc - d) < std::abs(tr2 - disc - d) ? tr2 + disc : tr2 - disc;

        for (std::ptrdiff_t i = l; i <= hi; ++i) h(i, i) -= mu;
        std::vector<Givens> rots;
        rots.reserve(hi - l);
        for (std::ptrdiff_t i = l; i < hi; ++i) {
            const Givens g = make_givens(h(i, i), h(i + 1, i));
            rots.push_back(g);
            for (std::size_t j = i; j < n; ++j) {
                const cplx x = h(i, j), y = h(i + 1, j);
                h(i, j) = g.c * x + g.s * y;
                h(i + 1, j) = -std::conj(g.s) * x + g.c * y;
            }
            h(i + 1, i) = 0.0;
        }
        for (std::ptrdiff_t i = l; i < hi; ++i) {
            const Givens g = rots[i - l];
            const std::size_t rmax = static_cast<std::size_t>(hi) + 1;
            for (std::size_t r = 0; r < rmax; ++r) {
                const cplx x = h(r, i), y = h(r, i + 1);
                h(r, i) = g.c * x + std::conj(g.s) * y;
                h(r, i + 1) = -g.s * x + g.c * y;
            }
            for (std::size_t r = 0; r < n; ++r) {
                const cplx x = q(r, i), y = q(r, i + 1);
                q(r, i) = g.c * x + std::conj(g.s) * y;
                q(r, i + 1) = -g.s * x + g.c * y;
            }
        }
        for (std::ptrdiff_t i = l; i <= hi; ++i) h(i, i) += mu;
    }
}

inline double principal_angle(cplx lambda, double snap = tol::branch_snap) {
    if (std::abs(lambda + cplx(1.0)) <= snap) return std::numbers::pi;
    return std::arg(lambda);
}

}  // namespace detail

inline UnitaryEig unitary_eig(const ComplexMatrix& qin, double utol = tol::unitarity_in) {
    if (!qin.square() || qin.empty()) throw dimension_error("unitary_eig: matrix must be square and nonempty");
    if (!all_finite(qin)) throw numeric_error("unitary_eig: non-finite entries");
    const double resid = unitarity_residual(qin);
    if (resid > utol) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "unitary_eig: input not unitary (residual %.3e)", resid);
        throw numeric_error(buf);
    }
    const std::size_t n = qin.rows();
    ComplexMatrix h = qin, v;
    detail::hessenberg(h, v);
    detail::hessenberg_qr(h, v);

    ComplexVec lam(n);
    RealVec psi(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx d = h(k, k);
        const double m = std::abs(d);
        if (m == 0.0) throw numeric_error("unitary_eig: zero eigenvalue on a unitary matrix");
        d /= m;
        lam[k] = d;
        psi[k] = detail::principal_angle(d);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (psi[x] != psi[y]) return psi[x] < psi[y];
        return lam[x].imag() < lam[y].imag();
    });
    UnitaryEig out;
    out.eigenvalues.resize(n);
    out.angles.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.eigenvalues[j] = lam[src];
        out.angles[j] = psi[src];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, src);
    }
    return out;
}

inline UnitaryEig unitary_eig(const RealMatrix& q, double utol = tol::unitarity_in) {
    return unitary_eig(to_complex(q), utol);
}

}  // namespace agsp
