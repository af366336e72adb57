#pragma once

#include <cmath>

#include "agsp/matfunc.hpp"
#include "agsp/matrix.hpp"

namespace agsp {

enum class AxisKind { roll, pitch, yaw };
enum class RotationFamily { degeneracy_friendly, legacy };

/// Parameters of one rotation: axis, family, angle theta and the scale kappa
/// of the inner angle map phi(theta) = kappa * theta (degeneracy-friendly
/// family only; the legacy family has no kappa).
struct RotationSpec {
    AxisKind axis = AxisKind::yaw;
    RotationFamily family = RotationFamily::degeneracy_friendly;
    double theta = 0.0;
    double kappa = 1.0;
};

inline const char* axis_name(AxisKind a) {
    switch (a) {
        case AxisKind::roll: return "roll";
        case AxisKind::pitch: return "pitch";
        default: return "yaw";
    }
}

inline const char* family_name(RotationFamily f) {
    return f == RotationFamily::degeneracy_friendly ? "df" : "legacy";
}

/// Upside-down flip: row i of the output is row M+1-i of the input.
inline RealMatrix flip_updown(const RealMatrix& r) {
    if (!r.square()) throw dimension_error("flip_updown: matrix must be square");
    const std::size_t m = r.rows();
    RealMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) out(i, j) = r(m - 1 - i, j);
    return out;
}

/// Double flip X -> P X P (conjugation by the anti-diagonal permutation).
inline RealMatrix diamond(const RealMatrix& x) {
    if (!x.square()) throw dimension_error("diamond: matrix must be square");
    const std::size_t m = x.rows();
    RealMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) out(i, j) = x(m - 1 - i, m - 1 - j);
    return out;
}

namespace detail {

inline RealMatrix rot2(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return RealMatrix{{c, s}, {-s, c}};
}

inline RealMatrix rot3(AxisKind axis, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    switch (axis) {
        case AxisKind::roll:
            return RealMatrix{{1, 0, 0}, {0, c, s}, {0, -s, c}};
        case AxisKind::pitch:
            return RealMatrix{{c, 0, -s}, {0, 1, 0}, {s, 0, c}};
        default:
            return RealMatrix{{c, s, 0}, {-s, c, 0}, {0, 0, 1}};
    }
}

}  // namespace detail

/// Recursive roll/pitch/yaw rotation of the older construction. Orthogonal for
/// all theta but NOT the identity at theta = 0 once n >= 4 (the equal-weight
/// 1/sqrt(2) block combination is angle-independent).
inline RealMatrix legacy_rotation(AxisKind axis, std::size_t n, double theta) {
    if (n == 0) throw dimension_error("legacy_rotation: n must be >= 1");
    if (n == 1) return RealMatrix::identity(1);
    if (n == 2) return detail::rot2(theta);
    if (n == 3) return detail::rot3(axis, theta);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (n % 2 == 0) {
        const std::size_t m = n / 2;
        const RealMatrix r = legacy_rotation(axis, m, theta);
        const RealMatrix rf = flip_updown(r);
        RealMatrix out(n, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                out(i, j) = inv_sqrt2 * r(i, j);
                out(i, m + j) = inv_sqrt2 * r(i, j);
                out(m + i, j) = -inv_sqrt2 * rf(i, j);
                out(m + i, m + j) = inv_sqrt2 * rf(i, j);
            }
        return out;
    }
    const std::size_t m = (n - 1) / 2;
    const RealMatrix r = legacy_rotation(axis, m, theta);
    const RealMatrix rf = flip_updown(r);
    RealMatrix out(n, n);
    switch (axis) {
        case AxisKind::roll:
            // (sqrt(2), 0, 0; 0, R, R; 0, -R^flip, R^flip) / sqrt(2)
            out(0, 0) = 1.0;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    out(1 + i, 1 + j) = inv_sqrt2 * r(i, j);
                    out(1 + i, 1 + m + j) = inv_sqrt2 * r(i, j);
                    out(1 + m + i, 1 + j) = -inv_sqrt2 * rf(i, j);
                    out(1 + m + i, 1 + m + j) = inv_sqrt2 * rf(i, j);
                }
            break;
        case AxisKind::pitch:
            // (R, 0, -R^flip; 0, sqrt(2), 0; R, 0, R^flip) / sqrt(2)
            out(m, m) = 1.0;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    out(i, j) = inv_sqrt2 * r(i, j);
                    out(i, m + 1 + j) = -inv_sqrt2 * rf(i, j);
                    out(m + 1 + i, j) = inv_sqrt2 * r(i, j);
                    out(m + 1 + i, m + 1 + j) = inv_sqrt2 * rf(i, j);
                }
            break;
        default:
            // (R, R, 0; -R^flip, R^flip, 0; 0, 0, sqrt(2)) / sqrt(2)
            out(n - 1, n - 1) = 1.0;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    out(i, j) = inv_sqrt2 * r(i, j);
                    out(i, m + j) = inv_sqrt2 * r(i, j);
                    out(m + i, j) = -inv_sqrt2 * rf(i, j);
                    out(m + i, m + j) = inv_sqrt2 * rf(i, j);
                }
            break;
    }
    return out;
}

/// Axis-dependent skew-symmetric generator. roll: full +-1 sub/superdiagonal;
/// yaw: +-1 only on pairs whose first (1-based) index is odd; pitch: even.
inline RealMatrix j_matrix(AxisKind axis, std::size_t n) {
    if (n < 2) throw dimension_error("j_matrix: n must be >= 2");
    RealMatrix j(n, n);
    for (std::size_t r = 0; r + 1 < n; ++r) {
        const bool odd_pair = r % 2 == 0;  // 1-based index r+1 is odd
        const bool place = axis == AxisKind::roll || (axis == AxisKind::yaw && odd_pair) ||
                           (axis == AxisKind::pitch && !odd_pair);
        if (place) {
            j(r, r + 1) = -1.0;
            j(r + 1, r) = 1.0;
        }
    }
    return j;
}

/// S_M(phi): the 2m x 2m block rotation (cos phi I, sin phi I; -sin phi I, cos phi I).
inline RealMatrix block_rotation_even(std::size_t m, double phi) {
    if (m == 0) throw dimension_error("block_rotation_even: m must be >= 1");
    const double c = std::cos(phi), s = std::sin(phi);
    RealMatrix out(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        out(i, i) = c;
        out(i, m + i) = s;
        out(m + i, i) = -s;
        out(m + i, m + i) = c;
    }
    return out;
}

enum class BlockPair { p12, p13, p23 };

/// T_M(phi) on a (2m+1)-dimensional space split into three blocks; the named
/// pair of equally-sized blocks carries the Givens structure, the remaining
/// singleton stays fixed. Block sizes: p12 -> (m, m, 1), p13 -> (m, 1, m),
/// p23 -> (1, m, m).
inline RealMatrix block_rotation_odd(BlockPair pair, std::size_t m, double phi) {
    if (m == 0) throw dimension_error("block_rotation_odd: m must be >= 1");
    const std::size_t n = 2 * m + 1;
    const double c = std::cos(phi), s = std::sin(phi);
    RealMatrix out(n, n);
    std::size_t a0 = 0, b0 = 0, fix = 0;
    switch (pair) {
        case BlockPair::p12: a0 = 0; b0 = m; fix = 2 * m; break;
        case BlockPair::p13: a0 = 0; b0 = m + 1; fix = m; break;
        case BlockPair::p23: a0 = 1; b0 = m + 1; fix = 0; break;
    }
    out(fix, fix) = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        out(a0 + i, a0 + i) = c;
        out(a0 + i, b0 + i) = s;
        out(b0 + i, a0 + i) = -s;
        out(b0 + i, b0 + i) = c;
    }
    return out;
}

/// Degeneracy-friendly rotation family: member of SO(n) for every theta and
/// exactly the identity at theta = 0. Even case 2m:
///   blkdiag(R_m, R_m^diamond) * S_m(phi) * exp(phi * J_axis(2m)),
/// odd case 2m+1 pairs the two m-sized blocks per axis; phi = kappa * theta.
inline RealMatrix df_rotation(const RotationSpec& spec, std::size_t n) {
    if (n == 0) throw dimension_error("df_rotation: n must be >= 1");
    if (n == 1) return RealMatrix::identity(1);
    if (n == 2) return detail::rot2(spec.theta);
    if (n == 3) return detail::rot3(spec.axis, spec.theta);
    const double phi = spec.kappa * spec.theta;
    if (n % 2 == 0) {
        const std::size_t m = n / 2;
        const RealMatrix rm = df_rotation(spec, m);
        const RealMatrix blk = blkdiag<double>({rm, diamond(rm)});
        return blk * block_rotation_even(m, phi) * expm_skew(j_matrix(spec.axis, n), phi);
    }
    const std::size_t m = (n - 1) / 2;
    const RealMatrix rm = df_rotation(spec, m);
    const RealMatrix rd = diamond(rm);
    const RealMatrix one = RealMatrix::identity(1);
    switch (spec.axis) {
        case AxisKind::yaw:
            return blkdiag<double>({rm, rd, one}) * block_rotation_odd(BlockPair::p12, m, phi);
        case AxisKind::pitch:
            return blkdiag<double>({rm, one, rd}) * block_rotation_odd(BlockPair::p13, m, phi);
        default:
            return blkdiag<double>({one, rm, rd}) * block_rotation_odd(BlockPair::p23, m, phi);
    }
}

/// Dispatch on the family carried by the spec.
inline RealMatrix rotation_matrix(const RotationSpec& spec, std::size_t n) {
    if (spec.family == RotationFamily::legacy) return legacy_rotation(spec.axis, n, spec.theta);
    return df_rotation(spec, n);
}

}  // namespace agsp
