#pragma once

#include <cmath>

#include "agsp/eig.hpp"
#include "agsp/matrix.hpp"

namespace agsp {

namespace detail {

inline double norm_1(const RealMatrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::fabs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

// Scaling-and-squaring matrix exponential with the degree-13 Pade approximant.
inline RealMatrix expm_pade(RealMatrix a) {
    static const double b[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;
    const std::size_t n = a.rows();
    const double nrm = norm_1(a);
    int squarings = 0;
    if (nrm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        const double scale = std::ldexp(1.0, -squarings);
        for (auto& v : a.data()) v *= scale;
    }
    const RealMatrix eye = RealMatrix::identity(n);
    const RealMatrix a2 = a * a;
    const RealMatrix a4 = a2 * a2;
    const RealMatrix a6 = a2 * a4;
    RealMatrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                        b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye);
    RealMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                   b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye;
    RealMatrix num = v + u;
    RealMatrix den = v - u;
    std::vector<std::size_t> perm;
    lu_decompose(den, perm);
    RealMatrix f = lu_solve(den, perm, num);
    for (int i = 0; i < squarings; ++i) f = f * f;
    return f;
}

// Newton polar correction: repeated squaring of exp(phi J) drifts off the
// orthogonal manifold by ~2^squarings * eps for huge |phi|; one or two steps
// of X <- X (3I - X^T X)/2 restore it to machine precision.
inline void polar_snap(RealMatrix& x) {
    const std::size_t n = x.rows();
    for (int it = 0; it < 3; ++it) {
        RealMatrix gap = RealMatrix::identity(n) - transpose(x) * x;
        if (frobenius_norm(gap) < 1e-13) break;
        x = x + 0.5 * (x * gap);
    }
}

}  // namespace detail

/// exp(phi*J) for skew-symmetric J; the result is orthogonal with det +1.
/// phi = 0 (or J = 0) returns the exact identity.
inline RealMatrix expm_skew(const RealMatrix& j, double phi, double skewtol = tol::skewness) {
    if (!j.square() || j.empty()) throw dimension_error("expm_skew: matrix must be square and nonempty");
    if (!all_finite(j)) throw numeric_error("expm_skew: non-finite entries");
    double skew = 0.0;
    for (std::size_t r = 0; r < j.rows(); ++r)
        for (std::size_t c = 0; c < j.cols(); ++c) skew += sq(j(r, c) + j(c, r));
    if (std::sqrt(skew) > skewtol)
        throw numeric_error("expm_skew: input not skew-symmetric within tolerance");
    if (phi == 0.0 || max_abs(j) == 0.0) return RealMatrix::identity(j.rows());
    RealMatrix scaled = j;
    for (auto& v : scaled.data()) v *= phi;
    RealMatrix out = detail::expm_pade(std::move(scaled));
    detail::polar_snap(out);
    return out;
}

/// Principal-branch fractional power of a unitary matrix:
/// Q^alpha = V diag(exp(i*alpha*psi_k)) V^H with psi_k in (-pi, pi].
inline ComplexMatrix frac_power_unitary(const ComplexMatrix& q, double alpha,
                                        double utol = tol::unitarity_in) {
    return unitary_eig(q, utol).power(alpha);
}

inline ComplexMatrix frac_power_unitary(const RealMatrix& q, double alpha,
                                        double utol = tol::unitarity_in) {
    return unitary_eig(q, utol).power(alpha);
}

}  // namespace agsp
