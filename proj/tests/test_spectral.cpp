#include <catch2/catch_amalgamated.hpp>

#include "agsp/properties.hpp"
#include "agsp/spectral.hpp"

using namespace agsp;

namespace {

RealMatrix rot2(double t) {
    return RealMatrix{{std::cos(t), std::sin(t)}, {-std::sin(t), std::cos(t)}};
}

// the generic 4-node fixture: weighted graph with distinct weights and a chord
RealMatrix fixture4() {
    Graph g;
    g.n = 4;
    g.weights = RealMatrix(4, 4);
    auto set = [&](std::size_t i, std::size_t j, double w) {
        g.weights(i, j) = w;
        g.weights(j, i) = w;
    };
    set(0, 1, 1.0);
    set(1, 2, 2.0);
    set(2, 3, 0.5);
    set(0, 2, 0.7);
    return gso(g, GsoKind::laplacian);
}

GraphSpectrum synthetic_spectrum(const RealMatrix& f) {
    GraphSpectrum s;
    s.gso = RealMatrix::identity(f.rows());
    s.gft = f;
    return s;
}

const RotationFamily kDf = RotationFamily::degeneracy_friendly;

}  // namespace

TEST_CASE("build_spectrum examples", "[spectral]") {
    const GraphSpectrum id2 = build_spectrum(RealMatrix::identity(2));
    CHECK(identity_residual(id2.gft) == 0.0);

    const GraphSpectrum path = build_spectrum(RealMatrix{{1, -1}, {-1, 1}});
    const double s = 1.0 / std::sqrt(2.0);
    CHECK_THAT(path.gft(0, 0), Catch::Matchers::WithinAbs(s, 1e-14));
    CHECK_THAT(path.gft(0, 1), Catch::Matchers::WithinAbs(s, 1e-14));
    CHECK_THAT(path.gft(1, 0), Catch::Matchers::WithinAbs(s, 1e-14));
    CHECK_THAT(path.gft(1, 1), Catch::Matchers::WithinAbs(-s, 1e-14));

    const GraphSpectrum zero = build_spectrum(RealMatrix(5, 5));
    CHECK(identity_residual(zero.gft) == 0.0);
    // F V = I
    CHECK(identity_residual(path.gft * path.eig.eigenvectors) <= 1e-14);
    CHECK_THROWS_AS(build_spectrum(RealMatrix{{0, 1}, {2, 0}}), numeric_error);
}

TEST_CASE("gfrft_operator: limits and the synthetic half-power anchor", "[spectral]") {
    const GraphSpectrum spec = build_spectrum(fixture4());
    const TransformOperator zero = gfrft_operator(spec, 0.0);
    CHECK(identity_residual(zero.forward) == 0.0);  // exact zero power
    const TransformOperator one = gfrft_operator(spec, 1.0);
    CHECK(frobenius_norm(one.forward - to_complex(spec.gft)) <= 1e-10);

    const GraphSpectrum synth = synthetic_spectrum(rot2(std::numbers::pi / 3.0));
    const TransformOperator half = gfrft_operator(synth, 0.5);
    CHECK(frobenius_norm(half.forward - to_complex(rot2(std::numbers::pi / 6.0))) <= 1e-12);
}

TEST_CASE("agft_operator: degeneracy dichotomy and direct product", "[spectral]") {
    const GraphSpectrum spec = build_spectrum(fixture4());
    const TransformOperator df0 = agft_operator(spec, {AxisKind::yaw, kDf, 0.0, 1.0});
    CHECK(max_abs(df0.forward - to_complex(spec.gft)) == 0.0);  // R(0) = I exactly

    const TransformOperator legacy0 =
        agft_operator(spec, {AxisKind::yaw, RotationFamily::legacy, 0.0, 1.0});
    CHECK(frobenius_norm(legacy0.forward - to_complex(spec.gft)) >
          0.1 * frobenius_norm(spec.gft));

    const GraphSpectrum two = build_spectrum(RealMatrix{{1, -1}, {-1, 1}});
    const TransformOperator pi_op = agft_operator(two, {AxisKind::yaw, kDf, std::numbers::pi, 1.0});
    const RealMatrix expected = two.gft * transpose(rot2(std::numbers::pi));
    CHECK(frobenius_norm(pi_op.forward - to_complex(expected)) <= 1e-14);
}

TEST_CASE("agfrft_i_operator: reductions", "[spectral]") {
    const GraphSpectrum spec = build_spectrum(fixture4());
    for (double alpha : {0.0, 0.35, 1.0}) {
        const TransformOperator i0 = agfrft_i_operator(spec, {AxisKind::pitch, kDf, 0.0, 1.0}, alpha);
        const TransformOperator gf = gfrft_operator(spec, alpha);
        CHECK(max_abs(i0.forward - gf.forward) == 0.0);  // theta = 0 short-circuits to F
    }
    const TransformOperator i1 = agfrft_i_operator(spec, {AxisKind::pitch, kDf, 1.3, 1.0}, 1.0);
    const TransformOperator ag = agft_operator(spec, {AxisKind::pitch, kDf, 1.3, 1.0});
    CHECK(frobenius_norm(i1.forward - ag.forward) <= 1e-10);
    const TransformOperator ident = agfrft_i_operator(spec, {AxisKind::pitch, kDf, 0.0, 1.0}, 0.0);
    CHECK(identity_residual(ident.forward) == 0.0);
}

TEST_CASE("agfrft_ii_operator: reductions and the exact-inverse caveat", "[spectral]") {
    const GraphSpectrum spec = build_spectrum(fixture4());
    for (double alpha : {0.2, 0.5}) {
        const TransformOperator ii0 = agfrft_ii_operator(spec, {AxisKind::yaw, kDf, 0.0, 1.0}, alpha);
        const TransformOperator gf = gfrft_operator(spec, alpha);
        CHECK(max_abs(ii0.forward - gf.forward) == 0.0);
    }
    const TransformOperator ii1 = agfrft_ii_operator(spec, {AxisKind::yaw, kDf, 2.1, 1.0}, 1.0);
    const TransformOperator ag = agft_operator(spec, {AxisKind::yaw, kDf, 2.1, 1.0});
    CHECK(frobenius_norm(ii1.forward - ag.forward) <= 1e-10);

    // the designated counterexample: naive alpha-negation is not the inverse
    const double theta = 1.0, alpha = 0.5;
    const TransformOperator op = agfrft_ii_operator(spec, {AxisKind::yaw, kDf, theta, 1.0}, alpha);
    const RealMatrix r = df_rotation({AxisKind::yaw, kDf, theta, 1.0}, 4);
    const ComplexMatrix naive = unitary_eig(spec.gft).power(-alpha) * transpose(r);
    CHECK(identity_residual(op.forward * naive) > 1e-6);
    CHECK(identity_residual(op.forward * op.inverse) <= 1e-9);
    CHECK(identity_residual(op.inverse * op.forward) <= 1e-9);
}

TEST_CASE("apply: identity, Parseval, constant signal on a connected laplacian", "[spectral]") {
    const GraphSpectrum spec = build_spectrum(fixture4());
    OperatorCache cache(std::make_shared<GraphSpectrum>(spec));
    const auto idop = cache.get(TransformKind::agfrft_i, {AxisKind::yaw, kDf, 0.0, 1.0}, 0.0);
    const RealVec x013 = {1.0, 2.0, 3.0, -1.0};
    const ComplexVec out = agsp::apply(*idop, x013);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(out[i].real() == x013[i]);
        CHECK(out[i].imag() == 0.0);
    }

    for (double alpha : {0.3, 0.8})
        for (double theta : {0.0, 1.7}) {
            const auto op = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, kDf, theta, 1.0}, alpha);
            const RealVec x = random_vector(4, mix_seed(9, static_cast<std::uint64_t>(alpha * 10)));
            CHECK_THAT(norm2(agsp::apply(*op, x)), Catch::Matchers::WithinAbs(norm2(x), 1e-9));
        }

    // constant signal: GFT pushes all energy to the null eigenvector slot
    const double c = 0.75;
    const RealVec ones(4, c);
    const ComplexVec xh = agsp::apply(*cache.get(TransformKind::gft, {}, 1.0), ones);
    CHECK_THAT(xh[0].real(), Catch::Matchers::WithinAbs(c * 2.0, 1e-12));  // c sqrt(4)
    for (std::size_t k = 1; k < 4; ++k)
        CHECK_THAT(std::abs(xh[k]), Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THROWS_AS(agsp::apply(*idop, RealVec{1.0, 2.0}), dimension_error);
}

TEST_CASE("unitarity suite over a randomized corpus (Property 4)", "[spectral]") {
    const RealVec alphas = {0.0, 0.25, 0.5, 0.75, 1.0};
    const RealVec thetas = {0.0, 1.2566, 2.5133, 3.7699, 5.0265};
    for (std::size_t n : {4u, 5u, 8u, 16u}) {
        OperatorCache cache(std::make_shared<GraphSpectrum>(
            build_spectrum(random_symmetric_gso(n, mix_seed(55, n)))));
        for (TransformKind kind : {TransformKind::gft, TransformKind::gfrft, TransformKind::agft,
                                   TransformKind::agfrft_i, TransformKind::agfrft_ii})
            for (double th : thetas)
                for (double al : alphas) {
                    const auto op = cache.get(kind, {AxisKind::roll, kDf, th, 1.0}, al);
                    CHECK(unitarity_residual(op->forward) <= 1e-9);
                    CHECK(identity_residual(op->forward * op->inverse) <= 1e-8);
                }
    }
}

TEST_CASE("type-I additivity and type-II non-additivity witness (Property 3)", "[spectral]") {
    const GraphSpectrum spec = build_spectrum(fixture4());
    OperatorCache cache(std::make_shared<GraphSpectrum>(spec));
    for (double th : {0.0, 1.2566, 3.7699}) {
        const auto a = cache.get(TransformKind::agfrft_i, {AxisKind::yaw, kDf, th, 1.0}, 0.25);
        const auto b = cache.get(TransformKind::agfrft_i, {AxisKind::yaw, kDf, th, 1.0}, 0.5);
        const auto c = cache.get(TransformKind::agfrft_i, {AxisKind::yaw, kDf, th, 1.0}, 0.75);
        CHECK(frobenius_norm(a->forward * b->forward - c->forward) <= 1e-9);
    }
    double witness = 0.0;
    for (double th : {1.2566, 2.5133, 5.0265}) {
        const auto a = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, kDf, th, 1.0}, 0.25);
        const auto b = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, kDf, th, 1.0}, 0.5);
        const auto c = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, kDf, th, 1.0}, 0.75);
        witness = std::max(witness, frobenius_norm(a->forward * b->forward - c->forward));
    }
    CHECK(witness > 1e-4);
}

TEST_CASE("round trips for all kinds and grid points (Property 5)", "[spectral]") {
    const GraphSpectrum spec = build_spectrum(random_symmetric_gso(8, 303));
    OperatorCache cache(std::make_shared<GraphSpectrum>(spec));
    const RealVec x = random_vector(8, 304);
    for (TransformKind kind : {TransformKind::gft, TransformKind::gfrft, TransformKind::agft,
                               TransformKind::agfrft_i, TransformKind::agfrft_ii})
        for (double th : {0.0, 0.9, 4.4})
            for (double al : {0.15, 0.6, 1.0}) {
                const auto op = cache.get(kind, {AxisKind::pitch, kDf, th, 1.0}, al);
                const ComplexVec back = agsp::apply_inverse(*op, agsp::apply(*op, x));
                for (std::size_t i = 0; i < x.size(); ++i)
                    CHECK_THAT(std::abs(back[i] - cplx(x[i])), Catch::Matchers::WithinAbs(0.0, 1e-8));
            }
}

TEST_CASE("legacy AGFT zero-angle inconsistency is reproduced", "[spectral]") {
    const GraphSpectrum spec = build_spectrum(random_symmetric_gso(4, 99));
    const TransformOperator legacy =
        agft_operator(spec, {AxisKind::roll, RotationFamily::legacy, 0.0, 1.0});
    CHECK(frobenius_norm(legacy.forward - to_complex(spec.gft)) > 0.1 * frobenius_norm(spec.gft));
}

TEST_CASE("operator cache: exact-key reuse and cross-cache determinism", "[spectral]") {
    const GraphSpectrum spec = build_spectrum(fixture4());
    OperatorCache cache(std::make_shared<GraphSpectrum>(spec));
    const auto a = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, kDf, 1.1, 1.0}, 0.4);
    const auto b = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, kDf, 1.1, 1.0}, 0.4);
    CHECK(a.get() == b.get());  // cache hit returns the same operator
    const auto c = cache.get(TransformKind::agfrft_ii, {AxisKind::yaw, kDf, 1.1, 1.0}, 0.4000001);
    CHECK(a.get() != c.get());  // no fuzzy matches

    OperatorCache fresh(std::make_shared<GraphSpectrum>(spec));
    const auto d = fresh.get(TransformKind::agfrft_ii, {AxisKind::yaw, kDf, 1.1, 1.0}, 0.4);
    CHECK(a->forward == d->forward);  // bitwise identical rebuild
    CHECK(a->inverse == d->inverse);
    CHECK(cache.gso_hash() == fresh.gso_hash());
}
