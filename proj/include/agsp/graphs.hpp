#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "agsp/matrix.hpp"

namespace agsp {

/// Undirected weighted graph: symmetric nonnegative weights, zero diagonal.
struct Graph {
    std::size_t n = 0;
    RealMatrix weights;
};

enum class GsoKind { adjacency, laplacian };

struct Weighting {
    enum class Kind { binary, gaussian } kind = Kind::binary;
    double sigma = 0.0;  // 0 -> mean selected-neighbor distance
    static Weighting binary() { return {Kind::binary, 0.0}; }
    static Weighting gaussian(double sigma_w = 0.0) { return {Kind::gaussian, sigma_w}; }
};

/// k-nearest-neighbor graph over points in R^d. Edge (i,j) exists iff j is
/// among i's k nearest (Euclidean, ties by lower index) or vice versa.
inline Graph knn_graph(const std::vector<RealVec>& points, std::size_t k,
                       Weighting weighting = Weighting::binary()) {
    const std::size_t n = points.size();
    if (k == 0) throw param_error("knn_graph: k must be >= 1");
    if (k >= n) throw param_error("knn_graph: k must be < number of points");
    const std::size_t dim = points[0].size();
    for (const auto& p : points) {
        if (p.size() != dim) throw dimension_error("knn_graph: inconsistent point dimensions");
        for (double v : p)
            if (!std::isfinite(v)) throw numeric_error("knn_graph: non-finite coordinate");
    }
    auto dist = [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t d = 0; d < dim; ++d) s += sq(points[i][d] - points[j][d]);
        return std::sqrt(s);
    };

    std::vector<std::vector<std::pair<std::size_t, double>>> selected(n);
    double dist_sum = 0.0;
    std::size_t dist_count = 0;
    std::vector<std::pair<double, std::size_t>> cand;
    for (std::size_t i = 0; i < n; ++i) {
        cand.clear();
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) cand.emplace_back(dist(i, j), j);
        std::sort(cand.begin(), cand.end());  // (distance, index): ties by lower index
        selected[i].reserve(k);
        for (std::size_t t = 0; t < k; ++t) {
            selected[i].emplace_back(cand[t].second, cand[t].first);
            dist_sum += cand[t].first;
            ++dist_count;
        }
    }

    double sigma = weighting.sigma;
    if (weighting.kind == Weighting::Kind::gaussian && sigma <= 0.0) {
        sigma = dist_count ? dist_sum / static_cast<double>(dist_count) : 1.0;
        if (sigma == 0.0) sigma = 1.0;  // coincident points
    }

    Graph g;
    g.n = n;
    g.weights = RealMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [j, d] : selected[i]) {
            const double w = weighting.kind == Weighting::Kind::binary
                                 ? 1.0
                                 : std::exp(-sq(d) / (2.0 * sq(sigma)));
            g.weights(i, j) = w;
            g.weights(j, i) = w;
        }
    return g;
}

/// k-NN graph over the 1-D coordinates 0..length-1 with binary weights.
inline Graph sequence_graph(std::size_t length, std::size_t k,
                            Weighting weighting = Weighting::binary()) {
    std::vector<RealVec> pts(length);
    for (std::size_t i = 0; i < length; ++i) pts[i] = {static_cast<double>(i)};
    return knn_graph(pts, k, weighting);
}

/// 4-NN binary graph over an h x w grid of integer pixel coordinates,
/// row-major node order. k clamps to n-1 on tiny partial blocks.
inline Graph pixel_block_graph(std::size_t h, std::size_t w) {
    if (h == 0 || w == 0) throw param_error("pixel_block_graph: empty block");
    const std::size_t n = h * w;
    if (n == 1) return Graph{1, RealMatrix(1, 1)};
    std::vector<RealVec> pts;
    pts.reserve(n);
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c)
            pts.push_back({static_cast<double>(r), static_cast<double>(c)});
    return knn_graph(pts, std::min<std::size_t>(4, n - 1), Weighting::binary());
}

/// The fixed 64-node graph every full 8x8 image block lives on.
inline Graph image_block_graph() { return pixel_block_graph(8, 8); }

struct Patch {
    std::vector<std::size_t> indices;
    Graph graph;
};

struct PatchPartition {
    std::vector<Patch> patches;
    std::size_t max_patch_size = 0;
};

namespace detail {

inline void median_split(const std::vector<RealVec>& pts, std::vector<std::size_t> idx,
                         std::size_t max_patch, std::vector<std::vector<std::size_t>>& out) {
    if (idx.size() <= max_patch) {
        out.push_back(std::move(idx));
        return;
    }
    const std::size_t dim = pts[idx[0]].size();
    std::size_t axis = 0;
    double best_extent = -1.0;
    for (std::size_t d = 0; d < dim; ++d) {
        double lo = pts[idx[0]][d], hi = lo;
        for (std::size_t i : idx) {
            lo = std::min(lo, pts[i][d]);
            hi = std::max(hi, pts[i][d]);
        }
        if (hi - lo > best_extent) {
            best_extent = hi - lo;
            axis = d;
        }
    }
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return pts[a][axis] < pts[b][axis]; });
    const std::size_t half = idx.size() / 2;
    std::vector<std::size_t> lo(idx.begin(), idx.begin() + half);
    std::vector<std::size_t> hi(idx.begin() + half, idx.end());
    median_split(pts, std::move(lo), max_patch, out);
    median_split(pts, std::move(hi), max_patch, out);
}

}  // namespace detail

/// Deterministic spatial partition (recursive median split along the longest
/// axis) plus a Gaussian-weighted k-NN graph per patch. k clamps to
/// patch_size - 1 on small patches; single-point patches get an edgeless graph.
inline PatchPartition pointcloud_patches(const std::vector<RealVec>& points,
                                         std::size_t max_patch = 100, std::size_t k = 10,
                                         double sigma_w = 0.0) {
    if (points.empty()) throw param_error("pointcloud_patches: empty input");
    if (max_patch == 0) throw param_error("pointcloud_patches: max_patch must be >= 1");
    if (k == 0) throw param_error("pointcloud_patches: k must be >= 1");
    std::vector<std::size_t> all(points.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> groups;
    detail::median_split(points, std::move(all), max_patch, groups);

    PatchPartition part;
    part.max_patch_size = max_patch;
    part.patches.reserve(groups.size());
    for (auto& idx : groups) {
        Patch p;
        p.indices = std::move(idx);
        const std::size_t m = p.indices.size();
        if (m == 1) {
            p.graph = Graph{1, RealMatrix(1, 1)};
        } else {
            std::vector<RealVec> sub;
            sub.reserve(m);
            for (std::size_t i : p.indices) sub.push_back(points[i]);
            p.graph = knn_graph(sub, std::min(k, m - 1), Weighting::gaussian(sigma_w));
        }
        part.patches.push_back(std::move(p));
    }
    return part;
}

/// Graph shift operator: the weight matrix itself or the combinatorial
/// Laplacian D - W.
inline RealMatrix gso(const Graph& g, GsoKind kind) {
    if (kind == GsoKind::adjacency) return g.weights;
    const std::size_t n = g.n;
    RealMatrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double deg = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            deg += g.weights(i, j);
            l(i, j) = -g.weights(i, j);
        }
        l(i, i) = deg;
    }
    return l;
}

}  // namespace agsp
