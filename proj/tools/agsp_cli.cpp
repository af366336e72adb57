// Command-line front end: spectral transforms, Wiener denoising with grid or
// gradient-descent parameter selection, the three experiment pipelines, and a
// batch property checker. Exit codes: 0 ok, 1 runtime failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "agsp/agsp.hpp"

namespace {

using namespace agsp;

TransformKind parse_kind(const std::string& s) {
    if (s == "gft") return TransformKind::gft;
    if (s == "gfrft") return TransformKind::gfrft;
    if (s == "agft") return TransformKind::agft;
    if (s == "agfrft-i") return TransformKind::agfrft_i;
    if (s == "agfrft-ii") return TransformKind::agfrft_ii;
    throw param_error("unknown kind '" + s + "' (expected gft|gfrft|agft|agfrft-i|agfrft-ii)");
}

AxisKind parse_axis(const std::string& s) {
    if (s == "roll") return AxisKind::roll;
    if (s == "pitch") return AxisKind::pitch;
    if (s == "yaw") return AxisKind::yaw;
    throw param_error("unknown axis '" + s + "' (expected roll|pitch|yaw)");
}

RotationFamily parse_family(const std::string& s) {
    if (s == "df" || s == "degeneracy-friendly") return RotationFamily::degeneracy_friendly;
    if (s == "legacy") return RotationFamily::legacy;
    throw param_error("unknown family '" + s + "' (expected df|legacy)");
}

GsoKind parse_gso(const std::string& s) {
    if (s == "adjacency") return GsoKind::adjacency;
    if (s == "laplacian") return GsoKind::laplacian;
    throw param_error("unknown gso '" + s + "' (expected adjacency|laplacian)");
}

OptimizerKind parse_optimizer(const std::string& s) {
    if (s == "grid") return OptimizerKind::grid;
    if (s == "gd") return OptimizerKind::gd;
    throw param_error("unknown optimizer '" + s + "' (expected grid|gd)");
}

// "lo:step:hi" or a comma list of values
RealVec parse_grid(const std::string& s) {
    RealVec out;
    if (s.find(':') != std::string::npos) {
        double lo, step, hi;
        char c1, c2;
        std::istringstream ss(s);
        if (!(ss >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':' || step <= 0.0)
            throw param_error("bad grid '" + s + "' (expected lo:step:hi)");
        for (double v = lo; v <= hi + step * 1e-9; v += step) out.push_back(v);
    } else {
        std::istringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            out.push_back(std::stod(tok));
        }
    }
    if (out.empty()) throw param_error("empty grid '" + s + "'");
    return out;
}

// "gfrft,agfrft-ii" with optional per-entry ":axis[:family]" suffixes
std::vector<MethodSpec> parse_methods(const std::string& s, AxisKind default_axis,
                                      RotationFamily default_family) {
    std::vector<MethodSpec> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        MethodSpec m;
        m.axis = default_axis;
        m.family = default_family;
        std::istringstream ts(tok);
        std::string part;
        int idx = 0;
        while (std::getline(ts, part, ':')) {
            if (idx == 0) m.kind = parse_kind(part);
            else if (idx == 1) m.axis = parse_axis(part);
            else if (idx == 2) m.family = parse_family(part);
            ++idx;
        }
        out.push_back(m);
    }
    if (out.empty()) throw param_error("no methods given");
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        const long v = std::stol(tok);
        if (v < 0) throw param_error("negative value in list '" + s + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw param_error("empty list '" + s + "'");
    return out;
}

void emit_results(const std::vector<ResultRow>& rows, const std::string& out_path) {
    write_results_csv(rows, out_path);
    std::printf("%-10s %-6s %-7s %8s %8s %8s %8s %12s %10s %8s\n", "method", "axis", "family",
                "sigma", "segment", "alpha", "theta", "mse", "psnr", "ssim");
    for (const auto& r : rows)
        std::printf("%-10s %-6s %-7s %8s %8s %8s %8s %12s %10s %8s\n", r.method.c_str(),
                    r.axis.c_str(), r.family.c_str(), detail::fmt6(r.sigma).c_str(),
                    r.segment.c_str(), detail::fmt6(r.alpha).c_str(),
                    detail::fmt6(r.theta).c_str(), detail::fmt6(r.mse).c_str(),
                    detail::fmt6(r.psnr).c_str(),
                    r.ssim ? detail::fmt6(*r.ssim).c_str() : "");
    std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
}

struct TransformArgs {
    std::string graph, signal, out = "-";
    std::string kind = "gft", gso = "laplacian", axis = "yaw", family = "df";
    double theta = 0.0, alpha = 1.0, kappa = 1.0;
    bool inverse = false;
};

int cmd_transform(const TransformArgs& a) {
    const Graph g = load_edges_csv(a.graph);
    const ComplexVec sig = load_complex_csv(a.signal);
    const GraphSpectrum spec = build_spectrum(gso(g, parse_gso(a.gso)));
    if (sig.size() != spec.n())
        throw dimension_error("signal length " + std::to_string(sig.size()) +
                              " does not match graph size " + std::to_string(spec.n()));
    OperatorCache cache(std::make_shared<GraphSpectrum>(spec));
    RotationSpec rot{parse_axis(a.axis), parse_family(a.family), a.theta, a.kappa};
    auto op = cache.get(parse_kind(a.kind), rot, a.alpha);
    const ComplexVec result = a.inverse ? apply_inverse(*op, sig) : apply(*op, sig);
    if (a.out == "-") {
        write_complex_csv(result, std::cout);
    } else {
        std::ofstream f(a.out);
        if (!f) throw parse_error(a.out + ": cannot open for writing");
        write_complex_csv(result, f);
    }
    return 0;
}

struct DenoiseArgs {
    std::string graph, noisy, clean, out;
    std::string kind = "agfrft-ii", gso = "laplacian", axis = "yaw", family = "df";
    std::string theta_grid = "0:0.628:6.2832", alpha_grid = "0:0.1:1";
    double lr = 0.01, theta0 = 0.0, alpha0 = 1.0, kappa0 = 1.0;
    std::size_t epochs = 1000;
    int threads = 1;
};

int cmd_denoise(const DenoiseArgs& a, bool use_gd) {
    const Graph g = load_edges_csv(a.graph);
    const RealVec y = load_signal_csv(a.noisy);
    const RealVec x = load_signal_csv(a.clean);
    const GraphSpectrum spec = build_spectrum(gso(g, parse_gso(a.gso)));
    if (y.size() != spec.n() || x.size() != spec.n())
        throw dimension_error("signal length does not match graph size");
    OperatorCache cache(std::make_shared<GraphSpectrum>(spec));
    const TransformKind kind = parse_kind(a.kind);
    const AxisKind axis = parse_axis(a.axis);
    const RotationFamily family = parse_family(a.family);

    OptResult opt;
    if (use_gd) {
        GdInit init;
        init.theta0 = a.theta0;
        init.alpha0 = a.alpha0;
        init.kappa0 = a.kappa0;
        GdOptions o;
        o.eta = a.lr;
        o.t_max = a.epochs;
        o.cache = &cache;
        opt = gradient_descent(spec, kind, axis, family, y, x, init, o);
    } else {
        GridSearchOptions o;
        o.threads = a.threads;
        o.cache = &cache;
        opt = grid_search(spec, kind, axis, family, y, x, parse_grid(a.theta_grid),
                          parse_grid(a.alpha_grid), o);
    }

    auto op = cache.get(kind, RotationSpec{axis, family, opt.theta, opt.kappa}, opt.alpha);
    const FilterOutput filtered = filter_signal(*op, opt.filter, y);
    std::printf("kind=%s axis=%s family=%s theta*=%s alpha*=%s kappa*=%s mse=%s psnr=%s\n",
                a.kind.c_str(), a.axis.c_str(), a.family.c_str(), detail::fmt6(opt.theta).c_str(),
                detail::fmt6(opt.alpha).c_str(), detail::fmt6(opt.kappa).c_str(),
                detail::fmt6(opt.mse).c_str(), detail::fmt6(psnr(opt.mse)).c_str());
    if (filtered.imag_residual > 1e-6 * std::max(1.0, norm2(y)))
        std::fprintf(stderr, "warning: imaginary residual %.3e discarded on re-realization\n",
                     filtered.imag_residual);
    if (!a.out.empty()) {
        std::ofstream f(a.out);
        if (!f) throw parse_error(a.out + ": cannot open for writing");
        write_signal_csv(filtered.signal, f);
        std::printf("wrote denoised signal to %s\n", a.out.c_str());
    }
    return 0;
}

int cmd_check_properties(std::size_t n, std::uint64_t seed, double tolerance) {
    const auto results = run_property_suite(n, seed, tolerance);
    bool all_ok = true;
    for (const auto& r : results) {
        std::printf("%-13s %s — %s\n", status_name(r.status), r.name.c_str(), r.detail.c_str());
        if (r.status == PropertyStatus::fail) all_ok = false;
    }
    std::printf("%s (n=%zu, seed=%llu)\n", all_ok ? "all properties pass" : "PROPERTY FAILURES",
                n, static_cast<unsigned long long>(seed));
    return all_ok ? 0 : 1;
}

struct PipelineArgs {
    std::string config;
    std::string in, out = "results.csv";
    std::string methods = "gfrft,agfrft-i,agfrft-ii";
    std::string axis = "yaw", family = "df", gso = "laplacian", optimizer = "grid";
    std::string sigma = "0.5,1.0,1.5";
    std::string theta_grid = "0:0.628:6.2832", alpha_grid = "0:0.1:1";
    std::string checkpoints = "100,200,300";
    double lr = 0.01, sigma_w = 0.0;
    std::size_t epochs = 1000, k = 5, max_patch = 100, pc_k = 10;
    std::uint64_t seed = 0;
    int threads = 1;
};

// plain key=value config; explicitly passed flags win over file entries
void apply_config(CLI::App* cmd, PipelineArgs& a) {
    if (a.config.empty()) return;
    std::ifstream f(a.config);
    if (!f) throw parse_error(a.config + ": cannot open config file");
    std::map<std::string, std::string> kv;
    std::string line;
    long lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const std::string t = agsp::detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) throw parse_error(a.config, lineno, "expected key=value");
        kv[agsp::detail::trim(t.substr(0, eq))] = agsp::detail::trim(t.substr(eq + 1));
    }
    auto take = [&](const std::string& key, const std::string& flag, auto& field) {
        auto it = kv.find(key);
        if (it == kv.end()) return;
        if (cmd->count(flag) == 0) {
            try {
                using T = std::decay_t<decltype(field)>;
                if constexpr (std::is_same_v<T, std::string>) field = it->second;
                else if constexpr (std::is_same_v<T, double>) field = std::stod(it->second);
                else if constexpr (std::is_same_v<T, int>) field = std::stoi(it->second);
                else if constexpr (std::is_same_v<T, std::uint64_t>) field = std::stoull(it->second);
                else field = static_cast<T>(std::stoull(it->second));
            } catch (const std::exception&) {
                throw parse_error(a.config + ": bad value for '" + key + "': " + it->second);
            }
        }
        kv.erase(it);
    };
    take("in", "--in", a.in);
    take("out", "--out", a.out);
    take("methods", "--methods", a.methods);
    take("axis", "--axis", a.axis);
    take("family", "--family", a.family);
    take("gso", "--gso", a.gso);
    take("optimizer", "--optimizer", a.optimizer);
    take("sigma", "--sigma", a.sigma);
    take("theta-grid", "--theta-grid", a.theta_grid);
    take("alpha-grid", "--alpha-grid", a.alpha_grid);
    take("t", "--t", a.checkpoints);
    take("lr", "--lr", a.lr);
    take("sigma-w", "--sigma-w", a.sigma_w);
    take("epochs", "--epochs", a.epochs);
    take("k", "--k", a.k);
    take("max-patch", "--max-patch", a.max_patch);
    take("pc-k", "--pc-k", a.pc_k);
    take("seed", "--seed", a.seed);
    take("threads", "--threads", a.threads);
    if (!kv.empty()) throw parse_error(a.config + ": unknown config key '" + kv.begin()->first + "'");
}

ExperimentConfig make_config(const PipelineArgs& a) {
    ExperimentConfig cfg;
    cfg.methods = parse_methods(a.methods, parse_axis(a.axis), parse_family(a.family));
    cfg.sigmas = parse_grid(a.sigma);
    cfg.knn_k = a.k;
    cfg.gso_kind = parse_gso(a.gso);
    cfg.optimizer = parse_optimizer(a.optimizer);
    cfg.theta_grid = parse_grid(a.theta_grid);
    cfg.alpha_grid = parse_grid(a.alpha_grid);
    cfg.lr = a.lr;
    cfg.epochs = a.epochs;
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    cfg.checkpoints = parse_size_list(a.checkpoints);
    cfg.max_patch = a.max_patch;
    cfg.pc_k = a.pc_k;
    cfg.sigma_w = a.sigma_w;
    return cfg;
}

std::string segment_stem(const std::string& path, const std::string& fallback) {
    if (path.empty()) return fallback;
    const std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const std::size_t dot = base.find_last_of('.');
    if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
    return base;
}

int cmd_timeseries(const PipelineArgs& a) {
    ExperimentConfig cfg = make_config(a);
    RealVec series;
    if (a.in.empty()) {
        std::size_t len = 0;
        for (std::size_t c : cfg.checkpoints) len = std::max(len, c);
        series = synth_timeseries(std::max<std::size_t>(len, 2));
        std::fprintf(stderr, "no --in given, using the synthetic series (length %zu)\n",
                     series.size());
    } else {
        series = load_signal_csv(a.in);
    }
    emit_results(run_timeseries(cfg, series), a.out);
    return 0;
}

int cmd_image(const PipelineArgs& a) {
    ExperimentConfig cfg = make_config(a);
    Image img;
    if (a.in.empty()) {
        img = synth_image(32, 32);
        std::fprintf(stderr, "no --in given, using the synthetic 32x32 image\n");
    } else {
        img = load_pgm(a.in);
    }
    emit_results(run_image(cfg, img, segment_stem(a.in, "synth32")), a.out);
    return 0;
}

int cmd_pointcloud(const PipelineArgs& a) {
    ExperimentConfig cfg = make_config(a);
    std::vector<RealVec> pts;
    if (a.in.empty()) {
        pts = synth_pointcloud();
        std::fprintf(stderr, "no --in given, using the synthetic torus cloud (%zu points)\n",
                     pts.size());
    } else {
        pts = load_ply_ascii(a.in);
    }
    emit_results(run_pointcloud(cfg, pts, segment_stem(a.in, "torus")), a.out);
    return 0;
}

void add_pipeline_flags(CLI::App* cmd, PipelineArgs& a, bool timeseries_flags,
                        bool pointcloud_flags) {
    cmd->add_option("--config", a.config, "key=value config file; flags override it");
    cmd->add_option("--in", a.in, "input file (omit for the bundled synthetic fixture)");
    cmd->add_option("--out", a.out, "results CSV path")->capture_default_str();
    cmd->add_option("--methods", a.methods,
                    "comma list of kind[:axis[:family]] entries")->capture_default_str();
    cmd->add_option("--axis", a.axis, "default rotation axis (roll|pitch|yaw)")
        ->capture_default_str();
    cmd->add_option("--family", a.family, "default rotation family (df|legacy)")
        ->capture_default_str();
    cmd->add_option("--gso", a.gso, "graph shift operator (adjacency|laplacian)")
        ->capture_default_str();
    cmd->add_option("--optimizer", a.optimizer, "parameter search (grid|gd)")
        ->capture_default_str();
    cmd->add_option("--sigma", a.sigma, "comma list of noise levels")->capture_default_str();
    cmd->add_option("--theta-grid", a.theta_grid, "theta grid, lo:step:hi or comma list")
        ->capture_default_str();
    cmd->add_option("--alpha-grid", a.alpha_grid, "alpha grid, lo:step:hi or comma list")
        ->capture_default_str();
    cmd->add_option("--lr", a.lr, "gradient-descent learning rate")->capture_default_str();
    cmd->add_option("--epochs", a.epochs, "gradient-descent iterations")->capture_default_str();
    cmd->add_option("--seed", a.seed, "noise seed")->capture_default_str();
    cmd->add_option("--threads", a.threads, "worker threads")->capture_default_str();
    if (timeseries_flags) {
        cmd->add_option("--k", a.k, "sequence-graph k-NN")->capture_default_str();
        cmd->add_option("--t", a.checkpoints, "comma list of checkpoint lengths")
            ->capture_default_str();
    }
    if (pointcloud_flags) {
        cmd->add_option("--max-patch", a.max_patch, "patch size cap")->capture_default_str();
        cmd->add_option("--pc-k", a.pc_k, "per-patch k-NN")->capture_default_str();
        cmd->add_option("--sigma-w", a.sigma_w, "gaussian edge bandwidth (0 = mean k-NN distance)")
            ->capture_default_str();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"angular graph spectral transforms and Wiener denoising"};
    app.require_subcommand(1);

    TransformArgs ta;
    CLI::App* transform = app.add_subcommand("transform", "apply a transform to a graph signal");
    transform->add_option("--graph", ta.graph, "edge-list CSV (i,j,w)")->required();
    transform->add_option("--signal", ta.signal, "signal CSV (value, or re,im)")->required();
    transform->add_option("--kind", ta.kind, "gft|gfrft|agft|agfrft-i|agfrft-ii")
        ->capture_default_str();
    transform->add_option("--gso", ta.gso, "adjacency|laplacian")->capture_default_str();
    transform->add_option("--axis", ta.axis, "roll|pitch|yaw")->capture_default_str();
    transform->add_option("--family", ta.family, "df|legacy")->capture_default_str();
    transform->add_option("--theta", ta.theta, "rotation angle")->capture_default_str();
    transform->add_option("--alpha", ta.alpha, "fractional order")->capture_default_str();
    transform->add_option("--kappa", ta.kappa, "inner angle scale")->capture_default_str();
    transform->add_flag("--inverse", ta.inverse, "apply the inverse transform");
    transform->add_option("--out", ta.out, "output CSV path, '-' for stdout")
        ->capture_default_str();

    DenoiseArgs da;
    CLI::App* dgrid = app.add_subcommand("denoise-grid", "Wiener denoise via grid search");
    CLI::App* dgd = app.add_subcommand("denoise-gd", "Wiener denoise via gradient descent");
    for (CLI::App* cmd : {dgrid, dgd}) {
        cmd->add_option("--graph", da.graph, "edge-list CSV (i,j,w)")->required();
        cmd->add_option("--noisy", da.noisy, "noisy signal CSV")->required();
        cmd->add_option("--clean", da.clean, "clean reference CSV")->required();
        cmd->add_option("--kind", da.kind, "gfrft|agft|agfrft-i|agfrft-ii")
            ->capture_default_str();
        cmd->add_option("--gso", da.gso, "adjacency|laplacian")->capture_default_str();
        cmd->add_option("--axis", da.axis, "roll|pitch|yaw")->capture_default_str();
        cmd->add_option("--family", da.family, "df|legacy")->capture_default_str();
        cmd->add_option("--out", da.out, "write the denoised signal here");
    }
    dgrid->add_option("--theta-grid", da.theta_grid, "lo:step:hi or comma list")
        ->capture_default_str();
    dgrid->add_option("--alpha-grid", da.alpha_grid, "lo:step:hi or comma list")
        ->capture_default_str();
    dgrid->add_option("--threads", da.threads, "worker threads")->capture_default_str();
    dgd->add_option("--lr", da.lr, "learning rate")->capture_default_str();
    dgd->add_option("--epochs", da.epochs, "iterations")->capture_default_str();
    dgd->add_option("--theta0", da.theta0, "initial theta")->capture_default_str();
    dgd->add_option("--alpha0", da.alpha0, "initial alpha")->capture_default_str();
    dgd->add_option("--kappa0", da.kappa0, "initial kappa")->capture_default_str();

    std::size_t cp_n = 8;
    std::uint64_t cp_seed = 1;
    double cp_tol = 1e-9;
    CLI::App* cprop = app.add_subcommand("check-properties", "run the invariant suite");
    cprop->add_option("--n", cp_n, "GSO size")->capture_default_str();
    cprop->add_option("--seed", cp_seed, "fixture seed")->capture_default_str();
    cprop->add_option("--tol", cp_tol, "operator-level tolerance")->capture_default_str();

    PipelineArgs ts, im, pc;
    ts.sigma = "0.5,1.0,1.5";
    im.sigma = "20";
    im.out = "image_results.csv";
    pc.sigma = "0.02";
    pc.out = "pointcloud_results.csv";
    ts.out = "timeseries_results.csv";
    CLI::App* cts = app.add_subcommand("timeseries", "sequence-graph denoising experiment");
    add_pipeline_flags(cts, ts, true, false);
    CLI::App* cim = app.add_subcommand("image", "8x8-block image denoising experiment");
    add_pipeline_flags(cim, im, false, false);
    CLI::App* cpc = app.add_subcommand("pointcloud", "patchwise point-cloud denoising experiment");
    add_pipeline_flags(cpc, pc, false, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(transform)) return cmd_transform(ta);
        if (app.got_subcommand(dgrid)) return cmd_denoise(da, false);
        if (app.got_subcommand(dgd)) return cmd_denoise(da, true);
        if (app.got_subcommand(cprop)) return cmd_check_properties(cp_n, cp_seed, cp_tol);
        if (app.got_subcommand(cts)) {
            apply_config(cts, ts);
            return cmd_timeseries(ts);
        }
        if (app.got_subcommand(cim)) {
            apply_config(cim, im);
            return cmd_image(im);
        }
        if (app.got_subcommand(cpc)) {
            apply_config(cpc, pc);
            return cmd_pointcloud(pc);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
