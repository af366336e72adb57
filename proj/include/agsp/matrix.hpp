#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "agsp/common.hpp"

namespace agsp {

using cplx = std::complex<double>;
using RealVec = std::vector<double>;
using ComplexVec = std::vector<cplx>;

/// Dense row-major matrix over double or std::complex<double>.
template <class T>
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Mat(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw dimension_error("Mat: ragged initializer list");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = Mat<double>;
using ComplexMatrix = Mat<cplx>;

template <class T>
Mat<T> transpose(const Mat<T>& a) {
    Mat<T> r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
    return r;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

inline ComplexMatrix to_complex(const RealMatrix& a) {
    ComplexMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    return r;
}

inline RealMatrix real_part(const ComplexMatrix& a) {
    RealMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).real();
    return r;
}

template <class T>
Mat<T> operator*(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.rows()) throw dimension_error("matmul: inner dimensions differ");
    Mat<T> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const RealMatrix& b) { return a * to_complex(b); }
inline ComplexMatrix operator*(const RealMatrix& a, const ComplexMatrix& b) { return to_complex(a) * b; }

template <class T>
Mat<T> operator-(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("mat sub: shape mismatch");
    Mat<T> r = a;
    for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] -= b.data()[i];
    return r;
}

template <class T>
Mat<T> operator+(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("mat add: shape mismatch");
    Mat<T> r = a;
    for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] += b.data()[i];
    return r;
}

template <class T>
Mat<T> operator*(T s, const Mat<T>& a) {
    Mat<T> r = a;
    for (auto& v : r.data()) v *= s;
    return r;
}

template <class T>
std::vector<T> matvec(const Mat<T>& a, const std::vector<T>& x) {
    if (a.cols() != x.size()) throw dimension_error("matvec: length mismatch");
    std::vector<T> y(a.rows(), T{});
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T acc{};
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

inline ComplexVec matvec(const ComplexMatrix& a, const RealVec& x) {
    ComplexVec xc(x.begin(), x.end());
    return matvec(a, xc);
}

template <class T>
double frobenius_norm(const Mat<T>& a) {
    double s = 0;
    for (const auto& v : a.data()) s += std::norm(cplx(v));
    return std::sqrt(s);
}

template <class T>
double max_abs(const Mat<T>& a) {
    double m = 0;
    for (const auto& v : a.data()) m = std::max(m, std::abs(cplx(v)));
    return m;
}

/// Frobenius distance to the identity.
template <class T>
double identity_residual(const Mat<T>& a) {
    if (!a.square()) throw dimension_error("identity_residual: non-square");
    double s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            cplx d = cplx(a(i, j)) - (i == j ? cplx(1) : cplx(0));
            s += std::norm(d);
        }
    return std::sqrt(s);
}

inline double orthogonality_residual(const RealMatrix& q) { return identity_residual(transpose(q) * q); }
inline double unitarity_residual(const ComplexMatrix& q) { return identity_residual(adjoint(q) * q); }

template <class T>
double symmetry_residual(const Mat<T>& a) {
    double s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(cplx(a(i, j)) - cplx(a(j, i)));
    return std::sqrt(s);
}

template <class T>
bool all_finite(const Mat<T>& a) {
    for (const auto& v : a.data()) {
        cplx c(v);
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
    return true;
}

/// Block-diagonal assembly.
template <class T>
Mat<T> blkdiag(const std::vector<Mat<T>>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) {
        if (!b.square()) throw dimension_error("blkdiag: blocks must be square");
        n += b.rows();
    }
    Mat<T> r(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) r(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return r;
}

namespace detail {
template <class T>
double pivot_mag(const T& v) {
    return std::abs(cplx(v));
}
}  // namespace detail

/// In-place LU with partial pivoting. Returns permutation sign, fills perm.
/// Throws numeric_error on exactly singular input.
template <class T>
int lu_decompose(Mat<T>& a, std::vector<std::size_t>& perm) {
    if (!a.square()) throw dimension_error("lu_decompose: non-square");
    const std::size_t n = a.rows();
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = detail::pivot_mag(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            double m = detail::pivot_mag(a(i, k));
            if (m > best) { best = m; p = i; }
        }
        if (best == 0.0) throw numeric_error("lu_decompose: singular matrix");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(perm[k], perm[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            a(i, k) /= a(k, k);
            const T lik = a(i, k);
            if (lik == T{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
        }
    }
    return sign;
}

/// Solve A X = B for X given an LU factorization.
template <class T>
Mat<T> lu_solve(const Mat<T>& lu, const std::vector<std::size_t>& perm, const Mat<T>& b) {
    const std::size_t n = lu.rows();
    if (b.rows() != n) throw dimension_error("lu_solve: rhs rows mismatch");
    Mat<T> x(n, b.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = b(perm[i], j);
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t i = 1; i < n; ++i) {
            T acc = x(i, c);
            for (std::size_t k = 0; k < i; ++k) acc -= lu(i, k) * x(k, c);
            x(i, c) = acc;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            T acc = x(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k) acc -= lu(ii, k) * x(k, c);
            x(ii, c) = acc / lu(ii, ii);
        }
    }
    return x;
}

template <class T>
T determinant(Mat<T> a) {
    std::vector<std::size_t> perm;
    T det;
    try {
        int sign = lu_decompose(a, perm);
        det = T(double(sign));
    } catch (const numeric_error&) {
        return T{};
    }
    for (std::size_t i = 0; i < a.rows(); ++i) det *= a(i, i);
    return det;
}

/// FNV-1a over dimensions and raw entry bytes; used as the GSO cache key.
inline std::uint64_t matrix_hash(const RealMatrix& a) {
    std::uint64_t h = 1469598103934665603ull;
    auto feed = [&h](const void* p, std::size_t len) {
        const unsigned char* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    };
    std::uint64_t r = a.rows(), c = a.cols();
    feed(&r, sizeof r);
    feed(&c, sizeof c);
    feed(a.data().data(), a.data().size() * sizeof(double));
    return h;
}

// Vector helpers shared across modules.
inline double norm2(const RealVec& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

inline double norm2(const ComplexVec& x) {
    double s = 0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

inline RealVec real_part(const ComplexVec& x) {
    RealVec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i].real();
    return r;
}

inline double imag_norm(const ComplexVec& x) {
    double s = 0;
    for (const auto& v : x) s += sq(v.imag());
    return std::sqrt(s);
}

}  // namespace agsp
