#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "agsp/graphs.hpp"
#include "agsp/matrix.hpp"
#include "agsp/metrics.hpp"

namespace agsp {

/// One line of the experiment results CSV.
struct ResultRow {
    std::string method;
    std::string axis;    // empty when the method carries no rotation
    std::string family;  // empty when the method carries no rotation
    double sigma = 0.0;
    std::string segment;
    double alpha = 1.0;
    double theta = 0.0;
    double kappa = 1.0;
    double mse = 0.0;
    double psnr = 0.0;
    std::optional<double> ssim;  // images only
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    return out;
}

inline double parse_double(const std::string& s, const std::string& file, long line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw parse_error(file, line, "expected a number, got '" + s + "'");
    }
}

/// Six significant digits; "inf" for infinities to keep the CSV greppable.
inline std::string fmt6(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

/// Signal CSV: one real per line, optional leading "value" header. A second
/// column is accepted and ignored here (see load_complex_csv).
inline RealVec load_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open");
    RealVec out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (lineno == 1 && !t.empty() && !std::isdigit(static_cast<unsigned char>(t[0])) &&
            t[0] != '-' && t[0] != '+' && t[0] != '.')
            continue;  // header
        const auto fields = detail::split_csv(t);
        out.push_back(detail::parse_double(fields[0], path, lineno));
    }
    if (out.empty()) throw parse_error(path + ": no samples found");
    return out;
}

/// Spectrum CSV: "re,im" rows (optional header); single-column files load as
/// purely real.
inline ComplexVec load_complex_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open");
    ComplexVec out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (lineno == 1 && !t.empty() && !std::isdigit(static_cast<unsigned char>(t[0])) &&
            t[0] != '-' && t[0] != '+' && t[0] != '.')
            continue;
        const auto fields = detail::split_csv(t);
        const double re = detail::parse_double(fields[0], path, lineno);
        const double im = fields.size() > 1 ? detail::parse_double(fields[1], path, lineno) : 0.0;
        out.emplace_back(re, im);
    }
    if (out.empty()) throw parse_error(path + ": no samples found");
    return out;
}

inline void write_complex_csv(const ComplexVec& v, std::ostream& out) {
    out << "re,im\n";
    for (const auto& c : v)
        out << detail::fmt_full(c.real()) << ',' << detail::fmt_full(c.imag()) << '\n';
}

inline void write_signal_csv(const RealVec& v, std::ostream& out) {
    out << "value\n";
    for (double x : v) out << detail::fmt_full(x) << '\n';
}

/// Edge-list CSV: "i,j,w" per line, 0-based node indices, each undirected edge
/// listed once; node count is one past the largest index.
inline Graph load_edges_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open");
    struct Edge {
        std::size_t i, j;
        double w;
    };
    std::vector<Edge> edges;
    std::size_t nmax = 0;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (lineno == 1 && (t[0] == 'i' || t[0] == 'I')) continue;  // header "i,j,w"
        const auto fields = detail::split_csv(t);
        if (fields.size() < 3) throw parse_error(path, lineno, "expected 'i,j,w'");
        const double di = detail::parse_double(fields[0], path, lineno);
        const double dj = detail::parse_double(fields[1], path, lineno);
        const double w = detail::parse_double(fields[2], path, lineno);
        if (di < 0 || dj < 0 || di != std::floor(di) || dj != std::floor(dj))
            throw parse_error(path, lineno, "node indices must be nonnegative integers");
        const auto i = static_cast<std::size_t>(di), j = static_cast<std::size_t>(dj);
        if (i == j) throw parse_error(path, lineno, "self-loops are not allowed");
        if (w < 0.0) throw parse_error(path, lineno, "negative edge weight");
        edges.push_back({i, j, w});
        nmax = std::max({nmax, i + 1, j + 1});
    }
    if (edges.empty()) throw parse_error(path + ": no edges found");
    Graph g;
    g.n = nmax;
    g.weights = RealMatrix(nmax, nmax);
    for (const auto& e : edges) {
        g.weights(e.i, e.j) = e.w;
        g.weights(e.j, e.i) = e.w;
    }
    return g;
}

namespace detail {

// next whitespace-delimited PGM token, skipping '#' comments
inline std::string pgm_token(std::istream& in, const std::string& path) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw parse_error(path + ": truncated PGM header");
    return tok;
}

}  // namespace detail

/// PGM loader (P2 ASCII and P5 binary, maxval <= 255 for P5); intensities are
/// normalized to [0, 1] by maxval.
inline Image load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error(path + ": cannot open");
    const std::string magic = detail::pgm_token(in, path);
    if (magic != "P2" && magic != "P5") throw parse_error(path + ": not a P2/P5 PGM file");
    const auto w = static_cast<std::size_t>(std::stoul(detail::pgm_token(in, path)));
    const auto h = static_cast<std::size_t>(std::stoul(detail::pgm_token(in, path)));
    const auto maxval = std::stoul(detail::pgm_token(in, path));
    if (w == 0 || h == 0) throw parse_error(path + ": empty image");
    if (maxval == 0 || maxval > 65535) throw parse_error(path + ": bad maxval");
    Image img(h, w);
    if (magic == "P2") {
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < w; ++j) {
                const auto v = std::stoul(detail::pgm_token(in, path));
                if (v > maxval) throw parse_error(path + ": pixel exceeds maxval");
                img(i, j) = static_cast<double>(v) / static_cast<double>(maxval);
            }
    } else {
        if (maxval > 255) throw parse_error(path + ": P5 with maxval > 255 unsupported");
        std::vector<unsigned char> buf(w * h);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (static_cast<std::size_t>(in.gcount()) != buf.size())
            throw parse_error(path + ": truncated P5 pixel data");
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < w; ++j)
                img(i, j) = static_cast<double>(buf[i * w + j]) / static_cast<double>(maxval);
    }
    return img;
}

inline void write_pgm(const Image& img, const std::string& path, unsigned maxval = 255) {
    std::ofstream out(path);
    if (!out) throw parse_error(path + ": cannot open for writing");
    out << "P2\n" << img.cols() << ' ' << img.rows() << '\n' << maxval << '\n';
    for (std::size_t i = 0; i < img.rows(); ++i) {
        for (std::size_t j = 0; j < img.cols(); ++j) {
            const double clamped = std::min(1.0, std::max(0.0, img(i, j)));
            out << std::lround(clamped * maxval) << (j + 1 == img.cols() ? '\n' : ' ');
        }
    }
}

/// ASCII PLY loader: picks x/y/z floats out of the vertex element, ignoring
/// any other vertex properties and any non-vertex elements that follow.
inline std::vector<RealVec> load_ply_ascii(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open");
    std::string line;
    long lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            line = detail::trim(line);
            if (!line.empty()) return true;
        }
        return false;
    };
    if (!next_line() || line != "ply") throw parse_error(path, lineno, "missing 'ply' magic");
    std::size_t vertex_count = 0;
    int xcol = -1, ycol = -1, zcol = -1;
    int prop_index = 0;
    bool in_vertex = false, saw_format = false;
    while (next_line()) {
        std::stringstream ss(line);
        std::string word;
        ss >> word;
        if (word == "format") {
            std::string kind;
            ss >> kind;
            if (kind != "ascii") throw parse_error(path, lineno, "only ascii PLY is supported");
            saw_format = true;
        } else if (word == "element") {
            std::string name;
            std::size_t count;
            ss >> name >> count;
            in_vertex = name == "vertex";
            if (in_vertex) {
                vertex_count = count;
                prop_index = 0;
            }
        } else if (word == "property" && in_vertex) {
            std::string type, name;
            ss >> type >> name;
            if (type == "list") throw parse_error(path, lineno, "list property inside vertex element");
            if (name == "x") xcol = prop_index;
            if (name == "y") ycol = prop_index;
            if (name == "z") zcol = prop_index;
            ++prop_index;
        } else if (word == "end_header") {
            break;
        }
    }
    if (!saw_format) throw parse_error(path + ": missing format line");
    if (vertex_count == 0) throw parse_error(path + ": no vertex element");
    if (xcol < 0 || ycol < 0 || zcol < 0)
        throw parse_error(path + ": vertex element lacks x/y/z properties");
    std::vector<RealVec> pts;
    pts.reserve(vertex_count);
    for (std::size_t v = 0; v < vertex_count; ++v) {
        if (!next_line()) throw parse_error(path, lineno, "truncated vertex data");
        std::stringstream ss(line);
        std::vector<double> vals;
        double d;
        while (ss >> d) vals.push_back(d);
        const int need = std::max({xcol, ycol, zcol});
        if (static_cast<int>(vals.size()) <= need)
            throw parse_error(path, lineno, "vertex line has too few columns");
        pts.push_back({vals[xcol], vals[ycol], vals[zcol]});
    }
    return pts;
}

inline void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << "method,axis,family,sigma,segment,alpha,theta,kappa,mse,psnr,ssim\n";
    for (const auto& r : rows) {
        out << r.method << ',' << r.axis << ',' << r.family << ',' << detail::fmt6(r.sigma) << ','
            << r.segment << ',' << detail::fmt6(r.alpha) << ',' << detail::fmt6(r.theta) << ','
            << detail::fmt6(r.kappa) << ',' << detail::fmt6(r.mse) << ',' << detail::fmt6(r.psnr)
            << ',' << (r.ssim ? detail::fmt6(*r.ssim) : std::string()) << '\n';
    }
}

inline void write_results_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error(path + ": cannot open for writing");
    write_results_csv(rows, out);
}

}  // namespace agsp
