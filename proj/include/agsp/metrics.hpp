#pragma once

#include <cmath>
#include <limits>

#include "agsp/matrix.hpp"

namespace agsp {

/// Grayscale image with values in [0, 1], row-major.
using Image = RealMatrix;

inline double mse(const RealVec& a, const RealVec& b) {
    if (a.size() != b.size()) throw dimension_error("mse: length mismatch");
    if (a.empty()) throw dimension_error("mse: empty input");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += sq(a[i] - b[i]);
    return s / static_cast<double>(a.size());
}

inline double mse(const Image& a, const Image& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("mse: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += sq(a.data()[i] - b.data()[i]);
    return s / static_cast<double>(a.data().size());
}

/// 10 log10(peak^2 / mse); +inf for a perfect reconstruction.
inline double psnr(double mse_value, double peak = 1.0) {
    if (mse_value < 0.0) throw param_error("psnr: mse must be nonnegative");
    if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / mse_value);
}

namespace detail {

inline RealMatrix gaussian_window(std::size_t size, double sigma) {
    RealMatrix w(size, size);
    const double half = (static_cast<double>(size) - 1.0) / 2.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            const double v = std::exp(-(sq(static_cast<double>(i) - half) + sq(static_cast<double>(j) - half)) /
                                      (2.0 * sigma * sigma));
            w(i, j) = v;
            sum += v;
        }
    for (auto& v : w.data()) v /= sum;
    return w;
}

}  // namespace detail

/// Structural similarity with the standard 11x11 Gaussian window (sigma 1.5)
/// and C1 = 0.01^2, C2 = 0.03^2 for unit dynamic range, averaged over all
/// fully-interior window positions. Images smaller than the window fall back
/// to a single uniform window over the whole image.
inline double ssim(const Image& a, const Image& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("ssim: shape mismatch");
    if (a.empty()) throw dimension_error("ssim: empty image");
    constexpr double c1 = 0.01 * 0.01;
    constexpr double c2 = 0.03 * 0.03;
    constexpr std::size_t win = 11;

    auto local_ssim = [&](const RealMatrix& w, std::size_t r0, std::size_t c0) {
        double mu_a = 0, mu_b = 0;
        for (std::size_t i = 0; i < w.rows(); ++i)
            for (std::size_t j = 0; j < w.cols(); ++j) {
                mu_a += w(i, j) * a(r0 + i, c0 + j);
                mu_b += w(i, j) * b(r0 + i, c0 + j);
            }
        double va = 0, vb = 0, cov = 0;
        for (std::size_t i = 0; i < w.rows(); ++i)
            for (std::size_t j = 0; j < w.cols(); ++j) {
                const double da = a(r0 + i, c0 + j) - mu_a;
                const double db = b(r0 + i, c0 + j) - mu_b;
                va += w(i, j) * da * da;
                vb += w(i, j) * db * db;
                cov += w(i, j) * da * db;
            }
        return ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
               ((mu_a * mu_a + mu_b * mu_b + c1) * (va + vb + c2));
    };

    if (a.rows() < win || a.cols() < win) {
        RealMatrix uniform(a.rows(), a.cols(), 1.0 / static_cast<double>(a.data().size()));
        return local_ssim(uniform, 0, 0);
    }
    const RealMatrix w = detail::gaussian_window(win, 1.5);
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t r = 0; r + win <= a.rows(); ++r)
        for (std::size_t c = 0; c + win <= a.cols(); ++c) {
            total += local_ssim(w, r, c);
            ++count;
        }
    return total / static_cast<double>(count);
}

}  // namespace agsp
