#pragma once

#include <map>
#include <memory>
#include <string>

#include "agsp/filtering.hpp"
#include "agsp/graphs.hpp"
#include "agsp/io.hpp"
#include "agsp/metrics.hpp"
#include "agsp/noise.hpp"
#include "agsp/spectral.hpp"
#include "agsp/threading.hpp"

namespace agsp {

struct MethodSpec {
    TransformKind kind = TransformKind::gfrft;
    AxisKind axis = AxisKind::yaw;
    RotationFamily family = RotationFamily::degeneracy_friendly;

    std::string label() const { return kind_name(kind); }
    bool uses_rotation() const {
        return kind == TransformKind::agft || kind == TransformKind::agfrft_i ||
               kind == TransformKind::agfrft_ii;
    }
};

enum class OptimizerKind { grid, gd };

inline RealVec default_alpha_grid() {
    RealVec g;
    for (int i = 0; i <= 10; ++i) g.push_back(0.1 * i);
    return g;
}

inline RealVec default_theta_grid() {
    RealVec g;
    for (int i = 0;; ++i) {
        const double t = 0.628 * i;
        if (t > 6.2832) break;
        g.push_back(t);
    }
    return g;
}

struct ExperimentConfig {
    std::vector<MethodSpec> methods;
    RealVec sigmas;
    std::size_t knn_k = 5;
    GsoKind gso_kind = GsoKind::laplacian;
    OptimizerKind optimizer = OptimizerKind::grid;
    RealVec theta_grid = default_theta_grid();
    RealVec alpha_grid = default_alpha_grid();
    double lr = 0.01;
    std::size_t epochs = 1000;
    std::uint64_t seed = 0;
    int threads = 1;
    std::vector<std::size_t> checkpoints = {100, 200, 300};  // timeseries truncation lengths
    std::size_t max_patch = 100;                             // pointcloud patch size cap
    std::size_t pc_k = 10;                                   // pointcloud k-NN
    double sigma_w = 0.0;                                    // gaussian bandwidth, 0 = auto
};

namespace detail {

inline void validate(const ExperimentConfig& cfg) {
    if (cfg.methods.empty()) throw param_error("config: methods must be nonempty");
    if (cfg.sigmas.empty()) throw param_error("config: sigmas must be nonempty");
    for (double s : cfg.sigmas)
        if (s < 0.0) throw param_error("config: sigma must be nonnegative");
}

inline OptResult optimize_method(OperatorCache& cache, const MethodSpec& m, const RealVec& y,
                                 const RealVec& x, const ExperimentConfig& cfg) {
    if (cfg.optimizer == OptimizerKind::grid) {
        GridSearchOptions o;
        o.cache = &cache;
        return grid_search(cache.spectrum(), m.kind, m.axis, m.family, y, x, cfg.theta_grid,
                           cfg.alpha_grid, o);
    }
    GdOptions o;
    o.eta = cfg.lr;
    o.t_max = cfg.epochs;
    o.cache = &cache;
    return gradient_descent(cache.spectrum(), m.kind, m.axis, m.family, y, x, GdInit{}, o);
}

inline void warn_imag(const std::vector<double>& ratios, const std::string& method) {
    double worst = 0.0;
    for (double r : ratios) worst = std::max(worst, r);
    if (worst > 1e-6)
        std::fprintf(stderr,
                     "warning: %s discarded an imaginary residual of %.3e x ||y|| on "
                     "re-realization\n",
                     method.c_str(), worst);
}

inline ResultRow make_row(const MethodSpec& m, double sigma, const std::string& segment,
                          const OptResult& opt) {
    ResultRow r;
    r.method = m.label();
    if (m.uses_rotation()) {
        r.axis = axis_name(m.axis);
        r.family = family_name(m.family);
    }
    r.sigma = sigma;
    r.segment = segment;
    r.alpha = opt.alpha;
    r.theta = opt.theta;
    r.kappa = opt.kappa;
    r.mse = opt.mse;
    r.psnr = psnr(opt.mse, 1.0);
    return r;
}

}  // namespace detail

/// Truncate the series to each checkpoint length, denoise on a binary k-NN
/// sequence graph, one row per (checkpoint, sigma, method).
inline std::vector<ResultRow> run_timeseries(const ExperimentConfig& cfg, const RealVec& series) {
    detail::validate(cfg);
    if (cfg.checkpoints.empty()) throw param_error("timeseries: no checkpoints");
    std::vector<ResultRow> rows;
    for (std::size_t ci = 0; ci < cfg.checkpoints.size(); ++ci) {
        const std::size_t t = cfg.checkpoints[ci];
        if (t < 2) throw param_error("timeseries: checkpoint must be >= 2");
        if (t > series.size())
            throw param_error("timeseries: checkpoint " + std::to_string(t) +
                              " exceeds series length " + std::to_string(series.size()));
        const RealVec x(series.begin(), series.begin() + static_cast<std::ptrdiff_t>(t));
        const Graph g = sequence_graph(t, cfg.knn_k);
        auto spec = std::make_shared<GraphSpectrum>(build_spectrum(gso(g, cfg.gso_kind)));
        OperatorCache cache(spec);

        const std::size_t cells = cfg.sigmas.size() * cfg.methods.size();
        std::vector<ResultRow> slot(cells);
        std::vector<RealVec> noisy(cfg.sigmas.size());
        for (std::size_t si = 0; si < cfg.sigmas.size(); ++si)
            noisy[si] = add_gaussian_noise(x, cfg.sigmas[si], mix_seed(cfg.seed, ci * 1000 + si));
        parallel_for(cells, cfg.threads, [&](std::size_t cell) {
            const std::size_t si = cell / cfg.methods.size();
            const std::size_t mi = cell % cfg.methods.size();
            const OptResult opt =
                detail::optimize_method(cache, cfg.methods[mi], noisy[si], x, cfg);
            slot[cell] =
                detail::make_row(cfg.methods[mi], cfg.sigmas[si], std::to_string(t), opt);
        });
        rows.insert(rows.end(), slot.begin(), slot.end());
    }
    return rows;
}

namespace detail {

struct BlockCtx {
    std::shared_ptr<GraphSpectrum> spec;
    std::unique_ptr<OperatorCache> cache;
};

struct BlockRef {
    std::size_t r0, c0, h, w;
};

}  // namespace detail

/// Per 8x8 block (smaller on ragged edges): flatten row-major, denoise on the
/// pixel-coordinate 4-NN graph, reassemble, then score the full image.
/// sigma is interpreted on the source pixel scale and divided by
/// sigma_divisor before injection into the [0,1]-normalized image.
inline std::vector<ResultRow> run_image(const ExperimentConfig& cfg, const Image& clean,
                                        const std::string& segment, double sigma_divisor = 255.0) {
    detail::validate(cfg);
    if (clean.empty()) throw param_error("image: empty input");
    if (sigma_divisor <= 0.0) throw param_error("image: sigma divisor must be positive");
    const std::size_t height = clean.rows(), width = clean.cols();

    std::vector<detail::BlockRef> blocks;
    for (std::size_t r0 = 0; r0 < height; r0 += 8)
        for (std::size_t c0 = 0; c0 < width; c0 += 8)
            blocks.push_back({r0, c0, std::min<std::size_t>(8, height - r0),
                              std::min<std::size_t>(8, width - c0)});

    std::map<std::pair<std::size_t, std::size_t>, detail::BlockCtx> ctx;
    for (const auto& b : blocks) {
        const auto key = std::make_pair(b.h, b.w);
        if (!ctx.count(key)) {
            detail::BlockCtx c;
            c.spec = std::make_shared<GraphSpectrum>(
                build_spectrum(gso(pixel_block_graph(b.h, b.w), cfg.gso_kind)));
            c.cache = std::make_unique<OperatorCache>(c.spec);
            ctx.emplace(key, std::move(c));
        }
    }

    std::vector<ResultRow> rows;
    for (std::size_t si = 0; si < cfg.sigmas.size(); ++si) {
        const double sigma_norm = cfg.sigmas[si] / sigma_divisor;
        Image noisy = clean;
        noisy.data() = add_gaussian_noise(clean.data(), sigma_norm, mix_seed(cfg.seed, si));
        for (const auto& m : cfg.methods) {
            Image out(height, width);
            std::vector<double> asum(blocks.size()), tsum(blocks.size()), ksum(blocks.size());
            std::vector<double> imag_ratio(blocks.size());
            std::vector<RealVec> block_out(blocks.size());
            parallel_for(blocks.size(), cfg.threads, [&](std::size_t bi) {
                const auto& b = blocks[bi];
                RealVec x, y;
                x.reserve(b.h * b.w);
                y.reserve(b.h * b.w);
                for (std::size_t i = 0; i < b.h; ++i)
                    for (std::size_t j = 0; j < b.w; ++j) {
                        x.push_back(clean(b.r0 + i, b.c0 + j));
                        y.push_back(noisy(b.r0 + i, b.c0 + j));
                    }
                auto& c = ctx.at({b.h, b.w});
                const OptResult opt = detail::optimize_method(*c.cache, m, y, x, cfg);
                auto op = c.cache->get(m.kind, RotationSpec{m.axis, m.family, opt.theta, opt.kappa},
                                       opt.alpha);
                const FilterOutput fo = filter_signal(*op, opt.filter, y);
                block_out[bi] = fo.signal;
                imag_ratio[bi] = fo.imag_residual / std::max(1e-300, norm2(y));
                asum[bi] = opt.alpha;
                tsum[bi] = opt.theta;
                ksum[bi] = opt.kappa;
            });
            detail::warn_imag(imag_ratio, m.label());
            for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
                const auto& b = blocks[bi];
                for (std::size_t i = 0; i < b.h; ++i)
                    for (std::size_t j = 0; j < b.w; ++j)
                        out(b.r0 + i, b.c0 + j) = block_out[bi][i * b.w + j];
            }
            ResultRow r;
            r.method = m.label();
            if (m.uses_rotation()) {
                r.axis = axis_name(m.axis);
                r.family = family_name(m.family);
            }
            r.sigma = cfg.sigmas[si];
            r.segment = segment;
            const double nb = static_cast<double>(blocks.size());
            r.alpha = std::accumulate(asum.begin(), asum.end(), 0.0) / nb;
            r.theta = std::accumulate(tsum.begin(), tsum.end(), 0.0) / nb;
            r.kappa = std::accumulate(ksum.begin(), ksum.end(), 0.0) / nb;
            r.mse = mse(out, clean);
            r.psnr = psnr(r.mse, 1.0);
            r.ssim = ssim(out, clean);
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

/// Patchwise denoising of the three coordinate channels. The cloud is shifted
/// and scaled so its clean bounding-box diagonal is 1; sigma is interpreted in
/// input units and rescaled the same way, so PSNR uses peak = 1.
inline std::vector<ResultRow> run_pointcloud(const ExperimentConfig& cfg,
                                             const std::vector<RealVec>& clean_pts,
                                             const std::string& segment) {
    detail::validate(cfg);
    if (clean_pts.empty()) throw param_error("pointcloud: empty input");
    for (const auto& p : clean_pts)
        if (p.size() != 3) throw dimension_error("pointcloud: points must be 3-D");
    const std::size_t n = clean_pts.size();

    RealVec lo = clean_pts[0], hi = clean_pts[0];
    for (const auto& p : clean_pts)
        for (int d = 0; d < 3; ++d) {
            lo[d] = std::min(lo[d], p[d]);
            hi[d] = std::max(hi[d], p[d]);
        }
    const double diag = std::sqrt(sq(hi[0] - lo[0]) + sq(hi[1] - lo[1]) + sq(hi[2] - lo[2]));
    if (diag == 0.0) throw param_error("pointcloud: degenerate cloud (zero bounding box)");
    std::vector<RealVec> clean(n, RealVec(3));
    for (std::size_t i = 0; i < n; ++i)
        for (int d = 0; d < 3; ++d) clean[i][d] = (clean_pts[i][d] - lo[d]) / diag;

    std::vector<ResultRow> rows;
    for (std::size_t si = 0; si < cfg.sigmas.size(); ++si) {
        const double sigma_norm = cfg.sigmas[si] / diag;
        RealVec flat(3 * n);
        for (std::size_t i = 0; i < n; ++i)
            for (int d = 0; d < 3; ++d) flat[3 * i + d] = clean[i][d];
        const RealVec noisy_flat = add_gaussian_noise(flat, sigma_norm, mix_seed(cfg.seed, si));
        std::vector<RealVec> noisy(n, RealVec(3));
        for (std::size_t i = 0; i < n; ++i)
            for (int d = 0; d < 3; ++d) noisy[i][d] = noisy_flat[3 * i + d];

        // the partition and graphs come from the noisy geometry; a denoiser
        // does not get to see the clean coordinates
        const PatchPartition part = pointcloud_patches(noisy, cfg.max_patch, cfg.pc_k, cfg.sigma_w);
        std::vector<std::unique_ptr<OperatorCache>> caches(part.patches.size());
        for (std::size_t pi = 0; pi < part.patches.size(); ++pi)
            caches[pi] = std::make_unique<OperatorCache>(std::make_shared<GraphSpectrum>(
                build_spectrum(gso(part.patches[pi].graph, cfg.gso_kind))));

        for (const auto& m : cfg.methods) {
            std::vector<RealVec> denoised(n, RealVec(3));
            std::vector<RealVec> params(part.patches.size());
            std::vector<double> imag_ratio(part.patches.size());
            parallel_for(part.patches.size(), cfg.threads, [&](std::size_t pi) {
                const Patch& patch = part.patches[pi];
                const std::size_t pn = patch.indices.size();
                double pa = 0, pt = 0, pk = 0, worst = 0;
                for (int d = 0; d < 3; ++d) {
                    RealVec x(pn), y(pn);
                    for (std::size_t i = 0; i < pn; ++i) {
                        x[i] = clean[patch.indices[i]][d];
                        y[i] = noisy[patch.indices[i]][d];
                    }
                    const OptResult opt = detail::optimize_method(*caches[pi], m, y, x, cfg);
                    auto op = caches[pi]->get(
                        m.kind, RotationSpec{m.axis, m.family, opt.theta, opt.kappa}, opt.alpha);
                    const FilterOutput fo = filter_signal(*op, opt.filter, y);
                    for (std::size_t i = 0; i < pn; ++i) denoised[patch.indices[i]][d] = fo.signal[i];
                    worst = std::max(worst, fo.imag_residual / std::max(1e-300, norm2(y)));
                    pa += opt.alpha;
                    pt += opt.theta;
                    pk += opt.kappa;
                }
                params[pi] = {pa / 3.0, pt / 3.0, pk / 3.0};
                imag_ratio[pi] = worst;
            });
            detail::warn_imag(imag_ratio, m.label());
            ResultRow r;
            r.method = m.label();
            if (m.uses_rotation()) {
                r.axis = axis_name(m.axis);
                r.family = family_name(m.family);
            }
            r.sigma = cfg.sigmas[si];
            r.segment = segment;
            const double np = static_cast<double>(part.patches.size());
            for (const auto& p : params) {
                r.alpha += p[0] / np;
                r.theta += p[1] / np;
                r.kappa += p[2] / np;
            }
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (int d = 0; d < 3; ++d) s += sq(denoised[i][d] - clean[i][d]);
            r.mse = s / static_cast<double>(3 * n);
            r.psnr = psnr(r.mse, 1.0);
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

// Deterministic synthetic fixtures for demos and tests.

inline RealVec synth_timeseries(std::size_t length) {
    RealVec x(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double t = static_cast<double>(i);
        x[i] = std::sin(2.0 * std::numbers::pi * t / 25.0) +
               0.5 * std::sin(2.0 * std::numbers::pi * t / 60.0 + 1.0) + 0.01 * t;
    }
    return x;
}

inline Image synth_image(std::size_t height, std::size_t width) {
    Image img(height, width);
    for (std::size_t r = 0; r < height; ++r)
        for (std::size_t c = 0; c < width; ++c) {
            const double v = 0.5 +
                             0.22 * std::sin(2.0 * std::numbers::pi * static_cast<double>(r) / 16.0) +
                             0.22 * std::cos(2.0 * std::numbers::pi * static_cast<double>(c) / 16.0);
            img(r, c) = std::round(std::min(1.0, std::max(0.0, v)) * 255.0) / 255.0;
        }
    return img;
}

inline std::vector<RealVec> synth_pointcloud(std::size_t nu = 12, std::size_t nv = 10) {
    std::vector<RealVec> pts;
    pts.reserve(nu * nv);
    for (std::size_t i = 0; i < nu; ++i)
        for (std::size_t j = 0; j < nv; ++j) {
            const double u = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(nu);
            const double v = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nv);
            const double rr = 2.0 + 0.7 * std::cos(v);
            pts.push_back({rr * std::cos(u), rr * std::sin(u), 0.7 * std::sin(v)});
        }
    return pts;
}

}  // namespace agsp
