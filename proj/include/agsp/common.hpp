#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace agsp {

/// Shape or size mismatch between arguments.
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Input violates a numeric precondition (asymmetry, non-unitarity, ...).
struct numeric_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Bad algorithm parameter (empty grid, non-positive rate, k out of range, ...).
struct param_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed input file; message carries file and line context.
struct parse_error : std::runtime_error {
    parse_error(const std::string& file, long line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what) {}
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Default tolerances. Every check that uses one accepts an override argument.
namespace tol {
inline constexpr double symmetry = 1e-12;       // relative, sym_eig input gate
inline constexpr double skewness = 1e-12;       // absolute, expm_skew input gate
inline constexpr double unitarity_in = 1e-8;    // absolute, unitary_eig input gate
inline constexpr double eig_residual = 1e-9;    // unitary_eig reconstruction
inline constexpr double branch_snap = 1e-12;    // |lambda + 1| below this -> psi = +pi
inline constexpr double wiener_floor = 1e-14;   // |y_hat_k|^2 below this -> h_k = 0
inline constexpr double fd_step = 1e-5;         // central-difference step for parameter gradients
}  // namespace tol

inline double sq(double x) { return x * x; }

// splitmix64; used to derive independent sub-seeds from one experiment seed.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return mix_seed(mix_seed(a) ^ (b + 0x517cc1b727220a95ull));
}

}  // namespace agsp
