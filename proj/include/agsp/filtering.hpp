#pragma once

#include <limits>
#include <optional>

#include "agsp/spectral.hpp"
#include "agsp/threading.hpp"

namespace agsp {

/// Diagonal spectral gains.
struct FilterH {
    RealVec h;
};

struct GdTracePoint {
    double loss;
    double theta;
    double alpha;
    double kappa;
};

/// Output of either optimizer. mse is ||x_tilde - x||^2 / N at the optimum;
/// the trace (gradient descent only) records the raw loss per iteration.
struct OptResult {
    double theta = 0.0;
    double alpha = 1.0;
    double kappa = 1.0;
    FilterH filter;
    double mse = 0.0;
    std::vector<GdTracePoint> trace;
};

/// Filtered reconstruction plus the norm of the imaginary residual that was
/// discarded when re-realizing.
struct FilterOutput {
    RealVec signal;
    double imag_residual = 0.0;
};

/// Least-squares diagonal filter: minimizes ||diag(h) y_hat - x_hat||_2 over
/// real h, per-coefficient closed form with h_k = 0 where |y_hat_k|^2 falls
/// below the regularization floor.
inline FilterH wiener_h(const TransformOperator& op, const RealVec& y, const RealVec& x,
                        double floor_sq = tol::wiener_floor) {
    if (y.size() != op.n() || x.size() != op.n())
        throw dimension_error("wiener_h: signal length mismatch");
    const ComplexVec yh = apply(op, y);
    const ComplexVec xh = apply(op, x);
    FilterH f;
    f.h.resize(op.n());
    for (std::size_t k = 0; k < op.n(); ++k) {
        const double denom = std::norm(yh[k]);
        f.h[k] = denom < floor_sq ? 0.0 : (std::conj(yh[k]) * xh[k]).real() / denom;
    }
    return f;
}

inline FilterOutput filter_signal(const TransformOperator& op, const FilterH& filt,
                                  const RealVec& y) {
    if (y.size() != op.n() || filt.h.size() != op.n())
        throw dimension_error("filter_signal: length mismatch");
    ComplexVec yh = apply(op, y);
    for (std::size_t k = 0; k < yh.size(); ++k) yh[k] *= filt.h[k];
    const ComplexVec xt = apply_inverse(op, yh);
    return {real_part(xt), imag_norm(xt)};
}

/// ||Re(F^{-1} diag(h) F y) - x||_2^2 for the operator built at the given
/// parameters.
inline double loss_for_operator(const TransformOperator& op, const FilterH& filt, const RealVec& y,
                                const RealVec& x) {
    const FilterOutput out = filter_signal(op, filt, y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += sq(out.signal[i] - x[i]);
    return s;
}

inline double loss(const GraphSpectrum& spec, TransformKind kind, AxisKind axis,
                   RotationFamily family, const FilterH& filt, double theta, double alpha,
                   double kappa, const RealVec& y, const RealVec& x) {
    OperatorCache cache(std::make_shared<GraphSpectrum>(spec));
    RotationSpec rot{axis, family, theta, kappa};
    return loss_for_operator(*cache.get(kind, rot, alpha), filt, y, x);
}

struct GridSearchOptions {
    int threads = 1;
    OperatorCache* cache = nullptr;  // optional shared cache
};

/// Theta outer, alpha inner; per cell solve the Wiener filter and keep a
/// strictly smaller MSE only, so the first cell attaining the minimum wins
/// ties. kappa is fixed to 1. kind = gfrft pins theta = 0; kind = agft pins
/// alpha = 1.
inline OptResult grid_search(const GraphSpectrum& spec, TransformKind kind, AxisKind axis,
                             RotationFamily family, const RealVec& y, const RealVec& x,
                             const RealVec& theta_grid, const RealVec& alpha_grid,
                             GridSearchOptions opts = {}) {
    if (theta_grid.empty() || alpha_grid.empty()) throw param_error("grid_search: empty grid");
    if (y.size() != spec.n() || x.size() != spec.n())
        throw dimension_error("grid_search: signal length mismatch");
    const double n = static_cast<double>(spec.n());

    const RealVec thetas = kind == TransformKind::gfrft || kind == TransformKind::gft
                               ? RealVec{0.0}
                               : theta_grid;
    const RealVec alphas = kind == TransformKind::agft || kind == TransformKind::gft
                               ? RealVec{1.0}
                               : alpha_grid;

    std::optional<OperatorCache> local;
    OperatorCache* cache = opts.cache;
    if (!cache) {
        local.emplace(std::make_shared<GraphSpectrum>(spec));
        cache = &*local;
    }

    struct Cell {
        double mse = std::numeric_limits<double>::infinity();
        std::size_t ti = 0, ai = 0;
        FilterH filter;
    };
    std::vector<Cell> best_per_theta(thetas.size());

    parallel_for(thetas.size(), opts.threads, [&](std::size_t ti) {
        Cell best;
        for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
            RotationSpec rot{axis, family, thetas[ti], 1.0};
            auto op = cache->get(kind, rot, alphas[ai]);
            FilterH h = wiener_h(*op, y, x);
            const double cell_mse = loss_for_operator(*op, h, y, x) / n;
            if (cell_mse < best.mse) {
                best.mse = cell_mse;
                best.ti = ti;
                best.ai = ai;
                best.filter = std::move(h);
            }
        }
        best_per_theta[ti] = std::move(best);
    });

    // first strict minimum in (theta, alpha) loop order
    const Cell* winner = &best_per_theta[0];
    for (const Cell& c : best_per_theta)
        if (c.mse < winner->mse) winner = &c;

    OptResult res;
    res.theta = thetas[winner->ti];
    res.alpha = alphas[winner->ai];
    res.kappa = 1.0;
    res.filter = winner->filter;
    res.mse = winner->mse;
    return res;
}

struct GdInit {
    std::optional<FilterH> h0;  // default: wiener_h at the initial parameters
    double theta0 = 0.0;
    double alpha0 = 1.0;
    double kappa0 = 1.0;
};

struct GdOptions {
    double eta = 0.01;
    std::size_t t_max = 1000;
    double fd_step = tol::fd_step;
    OperatorCache* cache = nullptr;
};

/// Joint descent on (h, theta, alpha, kappa) with a shared rate. Tracks the
/// best loss seen (strict improvement) and returns that iterate, not the last
/// one. The h gradient is the analytic least-squares gradient in the transform
/// domain; parameter gradients are central finite differences.
inline OptResult gradient_descent(const GraphSpectrum& spec, TransformKind kind, AxisKind axis,
                                  RotationFamily family, const RealVec& y, const RealVec& x,
                                  const GdInit& init = {}, GdOptions opts = {}) {
    if (opts.eta <= 0.0) throw param_error("gradient_descent: eta must be positive");
    if (opts.t_max < 1) throw param_error("gradient_descent: t_max must be >= 1");
    if (y.size() != spec.n() || x.size() != spec.n())
        throw dimension_error("gradient_descent: signal length mismatch");
    const std::size_t n = spec.n();

    std::optional<OperatorCache> local;
    OperatorCache* cache = opts.cache;
    if (!cache) {
        local.emplace(std::make_shared<GraphSpectrum>(spec));
        cache = &*local;
    }
    auto op_at = [&](double theta, double alpha, double kappa) {
        return cache->get(kind, RotationSpec{axis, family, theta, kappa}, alpha);
    };

    double theta = init.theta0, alpha = init.alpha0, kappa = init.kappa0;
    FilterH h = init.h0 ? *init.h0 : wiener_h(*op_at(theta, alpha, kappa), y, x);
    if (h.h.size() != n) throw dimension_error("gradient_descent: h0 length mismatch");

    OptResult best;
    best.mse = std::numeric_limits<double>::infinity();
    double best_loss = std::numeric_limits<double>::infinity();
    OptResult res;
    res.trace.reserve(opts.t_max);

    const double step = opts.fd_step;
    for (std::size_t t = 0; t < opts.t_max; ++t) {
        auto op = op_at(theta, alpha, kappa);
        const double cur = loss_for_operator(*op, h, y, x);
        res.trace.push_back({cur, theta, alpha, kappa});
        if (cur < best_loss) {
            best_loss = cur;
            best.theta = theta;
            best.alpha = alpha;
            best.kappa = kappa;
            best.filter = h;
        }

        // analytic gradient in h: 2 Re(conj(y_hat) .* (h .* y_hat - x_hat))
        const ComplexVec yh = apply(*op, y);
        const ComplexVec xh = apply(*op, x);
        RealVec grad_h(n);
        for (std::size_t k = 0; k < n; ++k)
            grad_h[k] = 2.0 * (std::conj(yh[k]) * (h.h[k] * yh[k] - xh[k])).real();

        auto fd = [&](double th, double al, double ka) {
            return loss_for_operator(*op_at(th, al, ka), h, y, x);
        };
        const double g_theta =
            (fd(theta + step, alpha, kappa) - fd(theta - step, alpha, kappa)) / (2.0 * step);
        const double g_alpha =
            (fd(theta, alpha + step, kappa) - fd(theta, alpha - step, kappa)) / (2.0 * step);
        const double g_kappa =
            (fd(theta, alpha, kappa + step) - fd(theta, alpha, kappa - step)) / (2.0 * step);

        for (std::size_t k = 0; k < n; ++k) h.h[k] -= opts.eta * grad_h[k];
        theta -= opts.eta * g_theta;
        alpha -= opts.eta * g_alpha;
        kappa -= opts.eta * g_kappa;
    }

    res.theta = best.theta;
    res.alpha = best.alpha;
    res.kappa = best.kappa;
    res.filter = std::move(best.filter);
    res.mse = best_loss / static_cast<double>(n);
    return res;
}

}  // namespace agsp
