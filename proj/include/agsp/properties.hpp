#pragma once

#include <random>
#include <string>
#include <vector>

#include "agsp/filtering.hpp"
#include "agsp/graphs.hpp"
#include "agsp/spectral.hpp"

namespace agsp {

/// Deterministic uniform stream on [0, 1) (MT19937-64, top 53 bits).
class UniformSampler {
  public:
    explicit UniformSampler(std::uint64_t seed) : rng_(seed) {}
    double operator()() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

  private:
    std::mt19937_64 rng_;
};

/// Laplacian of a seeded random weighted graph; the generic symmetric GSO
/// used by the property suite and the test corpus.
inline RealMatrix random_symmetric_gso(std::size_t n, std::uint64_t seed) {
    UniformSampler u(seed);
    Graph g;
    g.n = n;
    g.weights = RealMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool edge = u() < 0.6;
            const double w = u.range(0.1, 2.0);
            if (edge) {
                g.weights(i, j) = w;
                g.weights(j, i) = w;
            }
        }
    // keep the graph connected enough to be interesting: chain fallback
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (g.weights(i, i + 1) == 0.0) {
            const double w = u.range(0.1, 2.0);
            g.weights(i, i + 1) = w;
            g.weights(i + 1, i) = w;
        }
    return gso(g, GsoKind::laplacian);
}

inline RealVec random_vector(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    UniformSampler u(seed);
    RealVec v(n);
    for (auto& x : v) x = u.range(lo, hi);
    return v;
}

inline RealMatrix random_skew(std::size_t n, std::uint64_t seed) {
    UniformSampler u(seed);
    RealMatrix j(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c) {
            const double v = u.range(-1.0, 1.0);
            j(r, c) = v;
            j(c, r) = -v;
        }
    return j;
}

enum class PropertyStatus { pass, fail, expected_fail, skipped, info };

struct PropertyResult {
    std::string name;
    PropertyStatus status;
    std::string detail;
};

inline const char* status_name(PropertyStatus s) {
    switch (s) {
        case PropertyStatus::pass: return "PASS";
        case PropertyStatus::fail: return "FAIL";
        case PropertyStatus::expected_fail: return "EXPECTED-FAIL";
        case PropertyStatus::skipped: return "SKIP";
        default: return "INFO";
    }
}

/// Runs the full invariant suite on a seeded random symmetric GSO of size n.
/// tol scales the operator-level checks (unitarity, reductions, round trips).
inline std::vector<PropertyResult> run_property_suite(std::size_t n, std::uint64_t seed,
                                                      double tol = 1e-9) {
    if (n < 1) throw param_error("check-properties: n must be >= 1");
    std::vector<PropertyResult> out;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        out.push_back({name, ok ? PropertyStatus::pass : PropertyStatus::fail, detail});
    };
    char buf[160];

    const RealMatrix z = random_symmetric_gso(n, seed);
    const GraphSpectrum spec = build_spectrum(z);

    {
        const RealMatrix& v = spec.eig.eigenvectors;
        RealMatrix vd = v;
        for (std::size_t jj = 0; jj < n; ++jj)
            for (std::size_t ii = 0; ii < n; ++ii) vd(ii, jj) *= spec.eig.eigenvalues[jj];
        const double recon = frobenius_norm(z * v - vd);
        const double orth = orthogonality_residual(v);
        const double scale = std::max(1e-300, frobenius_norm(z));
        std::snprintf(buf, sizeof buf, "recon %.2e (rel), orth %.2e", recon / scale, orth);
        report("sym-eig reconstruction", recon <= 1e-10 * scale && orth <= 1e-10, buf);
    }

    {
        const UnitaryEig e = unitary_eig(spec.gft);
        ComplexMatrix vd = e.eigenvectors;
        for (std::size_t jj = 0; jj < n; ++jj)
            for (std::size_t ii = 0; ii < n; ++ii) vd(ii, jj) *= e.eigenvalues[jj];
        const double recon = frobenius_norm(to_complex(spec.gft) * e.eigenvectors - vd);
        const double orth = unitarity_residual(e.eigenvectors);
        double mod = 0.0;
        for (const auto& lam : e.eigenvalues) mod = std::max(mod, std::fabs(std::abs(lam) - 1.0));
        const double scale = std::max(1.0, frobenius_norm(spec.gft));
        std::snprintf(buf, sizeof buf, "recon %.2e, orth %.2e, |lambda|-1 %.2e", recon, orth, mod);
        report("unitary-eig reconstruction", recon <= 1e-9 * scale && orth <= 1e-9 && mod <= 1e-10,
               buf);
    }

    {
        bool ok = true;
        double worst = 0.0;
        for (int trial = 0; trial < 5 && n >= 2; ++trial) {
            const RealMatrix j = random_skew(n, mix_seed(seed, 100 + trial));
            const RealMatrix o = expm_skew(j, 0.3 + 0.4 * trial);
            const double r = orthogonality_residual(o);
            const double dd = std::fabs(determinant(o) - 1.0);
            worst = std::max({worst, r, dd});
            ok = ok && r <= 1e-10 && dd <= 1e-8;
        }
        std::snprintf(buf, sizeof buf, "worst residual %.2e", worst);
        report("expm-skew orthogonality and det", ok, buf);
    }

    {
        const UnitaryEig e = unitary_eig(spec.gft);
        const double r =
            frobenius_norm(e.power(0.3) * e.power(0.45) - e.power(0.75));
        std::snprintf(buf, sizeof buf, "residual %.2e", r);
        report("frac-power semigroup", r <= tol, buf);
    }

    {
        bool ok = true;
        double worst = 0.0;
        for (AxisKind axis : {AxisKind::roll, AxisKind::pitch, AxisKind::yaw})
            for (double theta : {0.0, 0.7, 2.4, 5.1})
                for (double kappa : {0.5, 1.0, 2.0}) {
                    const RealMatrix r = df_rotation({axis, RotationFamily::degeneracy_friendly,
                                                      theta, kappa}, n);
                    const double orth = orthogonality_residual(r);
                    const double dd = std::fabs(determinant(r) - 1.0);
                    worst = std::max({worst, orth, dd});
                    ok = ok && orth <= 1e-9 && dd <= 1e-7;
                }
        std::snprintf(buf, sizeof buf, "worst residual %.2e", worst);
        report("df rotations in SO(n) (Theorem 1)", ok, buf);
    }

    {
        double worst = 0.0;
        for (AxisKind axis : {AxisKind::roll, AxisKind::pitch, AxisKind::yaw}) {
            const RealMatrix r =
                df_rotation({axis, RotationFamily::degeneracy_friendly, 0.0, 1.0}, n);
            worst = std::max(worst, identity_residual(r));
        }
        std::snprintf(buf, sizeof buf, "max |R(0) - I| = %.2e", worst);
        report("df zero-angle exact identity", worst == 0.0, buf);
    }

    if (n >= 4) {
        double dev = 1e300;
        for (AxisKind axis : {AxisKind::roll, AxisKind::pitch, AxisKind::yaw})
            dev = std::min(dev, identity_residual(legacy_rotation(axis, n, 0.0)));
        std::snprintf(buf, sizeof buf, "legacy R(0) deviates from I by %.3f (> 0.1 expected)", dev);
        out.push_back({"legacy zero-angle degeneracy", dev > 0.1 ? PropertyStatus::expected_fail
                                                                 : PropertyStatus::fail,
                       buf});
    } else {
        out.push_back({"legacy zero-angle degeneracy", PropertyStatus::skipped,
                       "n < 4: the legacy no-go needs n >= 4"});
    }

    // operator-level checks on a small (theta, alpha) sample, all kinds
    OperatorCache cache(std::make_shared<GraphSpectrum>(spec));
    const RotationFamily df = RotationFamily::degeneracy_friendly;
    const std::vector<double> thetas = {0.0, 1.1, 3.9};
    const std::vector<double> alphas = {0.0, 0.35, 0.8, 1.0};
    const RealVec x = random_vector(n, mix_seed(seed, 7));

    {
        bool ok = true;
        double worst = 0.0;
        for (TransformKind kind : {TransformKind::gft, TransformKind::gfrft, TransformKind::agft,
                                   TransformKind::agfrft_i, TransformKind::agfrft_ii})
            for (double th : thetas)
                for (double al : alphas) {
                    auto op = cache.get(kind, {AxisKind::yaw, df, th, 1.0}, al);
                    const double r = unitarity_residual(op->forward);
                    const double rt = identity_residual(op->forward * op->inverse);
                    worst = std::max({worst, r, rt});
                    ok = ok && r <= tol && rt <= 10 * tol;
                }
        std::snprintf(buf, sizeof buf, "worst residual %.2e", worst);
        report("operator unitarity and inverse (Properties 4-5)", ok, buf);
    }

    {
        auto op1 = cache.get(TransformKind::agfrft_i, {AxisKind::yaw, df, 0.0, 1.0}, 0.0);
        auto op2 = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, df, 0.0, 1.0}, 0.0);
        const double r = std::max(identity_residual(op1->forward), identity_residual(op2->forward));
        std::snprintf(buf, sizeof buf, "residual %.2e", r);
        report("identity at theta=0, alpha=0 (Property 1)", r <= tol, buf);
    }

    {
        double worst = 0.0;
        for (double al : alphas) {
            auto gf = cache.get(TransformKind::gfrft, {}, al);
            auto i0 = cache.get(TransformKind::agfrft_i, {AxisKind::yaw, df, 0.0, 1.0}, al);
            auto ii0 = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, df, 0.0, 1.0}, al);
            worst = std::max(worst, frobenius_norm(i0->forward - gf->forward));
            worst = std::max(worst, frobenius_norm(ii0->forward - gf->forward));
        }
        for (double th : thetas) {
            auto ag = cache.get(TransformKind::agft, {AxisKind::yaw, df, th, 1.0}, 1.0);
            auto i1 = cache.get(TransformKind::agfrft_i, {AxisKind::yaw, df, th, 1.0}, 1.0);
            auto ii1 = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, df, th, 1.0}, 1.0);
            worst = std::max(worst, frobenius_norm(i1->forward - ag->forward));
            worst = std::max(worst, frobenius_norm(ii1->forward - ag->forward));
        }
        std::snprintf(buf, sizeof buf, "worst residual %.2e", worst);
        report("reduction chain (Property 2)", worst <= 1e-10 * std::max(1.0, std::sqrt(double(n))),
               buf);
    }

    {
        double worst = 0.0;
        for (double th : thetas) {
            auto a = cache.get(TransformKind::agfrft_i, {AxisKind::yaw, df, th, 1.0}, 0.35);
            auto b = cache.get(TransformKind::agfrft_i, {AxisKind::yaw, df, th, 1.0}, 0.45);
            auto c = cache.get(TransformKind::agfrft_i, {AxisKind::yaw, df, th, 1.0}, 0.80);
            worst = std::max(worst, frobenius_norm(a->forward * b->forward - c->forward));
        }
        std::snprintf(buf, sizeof buf, "worst residual %.2e", worst);
        report("type-I additivity (Property 3)", worst <= tol, buf);
    }

    {
        double best = 0.0;
        for (double th : thetas)
            if (th != 0.0) {
                auto a = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, df, th, 1.0}, 0.35);
                auto b = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, df, th, 1.0}, 0.45);
                auto c = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, df, th, 1.0}, 0.80);
                best = std::max(best, frobenius_norm(a->forward * b->forward - c->forward));
            }
        std::snprintf(buf, sizeof buf, "largest additivity defect %.2e %s", best,
                      best > 1e-4 ? "(witness found)" : "(no witness on this fixture)");
        out.push_back({"type-II non-additivity witness (Property 3)", PropertyStatus::info, buf});
    }

    {
        auto op = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, df, 1.1, 1.0}, 0.45);
        const UnitaryEig e = unitary_eig(spec.gft);
        const RealMatrix r = df_rotation({AxisKind::yaw, df, 1.1, 1.0}, n);
        const ComplexMatrix naive = e.power(-0.45) * transpose(r);
        const double exact = identity_residual(op->forward * op->inverse);
        const double naive_res = identity_residual(op->forward * naive);
        std::snprintf(buf, sizeof buf, "exact inverse %.2e, naive alpha-negation %.2e", exact,
                      naive_res);
        out.push_back({"type-II inverse caveat (Property 5)", PropertyStatus::info, buf});
    }

    {
        double worst = 0.0;
        for (TransformKind kind : {TransformKind::gfrft, TransformKind::agfrft_i,
                                   TransformKind::agfrft_ii}) {
            auto op = cache.get(kind, {AxisKind::yaw, df, 2.4, 1.0}, 0.6);
            const ComplexVec xh = apply(*op, x);
            worst = std::max(worst, std::fabs(norm2(xh) - norm2(x)));
            const RealVec back = real_part(apply_inverse(*op, xh));
            double rt = 0.0;
            for (std::size_t i = 0; i < n; ++i) rt = std::max(rt, std::fabs(back[i] - x[i]));
            worst = std::max(worst, rt);
        }
        std::snprintf(buf, sizeof buf, "worst deviation %.2e", worst);
        report("Parseval and signal round trip (Properties 4-5)", worst <= 1e-8, buf);
    }

    return out;
}

}  // namespace agsp
