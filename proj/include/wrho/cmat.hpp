#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "wrho/config.hpp"
#include "wrho/errors.hpp"

namespace wrho {

using cdouble = std::complex<double>;

/**
 * Dense complex matrix, row-major, double precision. Value type: copies are
 * deep, all operations build new matrices, nothing is shared. Dimensions are
 * fixed at construction.
 */
class CMat {
public:
    CMat() = default;

    CMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cdouble{0.0, 0.0}) {
        if (rows == 0 || cols == 0)
            throw DimensionMismatchError("CMat: dimensions must be positive");
    }

    /// Row-by-row construction: CMat{{1.0, 2.0}, {3.0, 4.0}}.
    CMat(std::initializer_list<std::initializer_list<cdouble>> init) {
        rows_ = init.size();
        if (rows_ == 0) throw DimensionMismatchError("CMat: empty initializer");
        cols_ = init.begin()->size();
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw DimensionMismatchError("CMat: ragged initializer");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMat diag(const std::vector<cdouble>& d) {
        CMat m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cdouble& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cdouble& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<cdouble>& data() const { return a_; }
    std::vector<cdouble>& data() { return a_; }

    CMat adjoint() const {
        CMat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    CMat transpose() const {
        CMat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    cdouble trace() const {
        require_square("trace");
        cdouble t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    bool all_finite() const {
        for (const auto& z : a_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    CMat& operator+=(const CMat& o) {
        require_same_shape(o, "+=");
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }

    CMat& operator-=(const CMat& o) {
        require_same_shape(o, "-=");
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }

    CMat& operator*=(cdouble s) {
        for (auto& z : a_) z *= s;
        return *this;
    }

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(CMat a, cdouble s) { return a *= s; }
    friend CMat operator*(cdouble s, CMat a) { return a *= s; }

    friend CMat operator*(const CMat& a, const CMat& b) {
        if (a.cols_ != b.rows_)
            throw DimensionMismatchError("CMat: product shape mismatch");
        CMat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cdouble aik = a(i, k);
                if (aik == cdouble{0.0, 0.0}) continue;
                const cdouble* brow = &b.a_[k * b.cols_];
                cdouble* rrow = &r.a_[i * r.cols_];
                for (std::size_t j = 0; j < b.cols_; ++j) rrow[j] += aik * brow[j];
            }
        }
        return r;
    }

    /// y = M x
    std::vector<cdouble> apply(const std::vector<cdouble>& x) const {
        if (x.size() != cols_) throw DimensionMismatchError("CMat: matvec shape mismatch");
        std::vector<cdouble> y(rows_, cdouble{0.0, 0.0});
        for (std::size_t i = 0; i < rows_; ++i) {
            const cdouble* row = &a_[i * cols_];
            cdouble s = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
            y[i] = s;
        }
        return y;
    }

    void require_square(const char* what) const {
        if (!is_square())
            throw DimensionMismatchError(std::string("CMat: square matrix required for ") + what);
    }

private:
    void require_same_shape(const CMat& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionMismatchError(std::string("CMat: shape mismatch in ") + what);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> a_;
};

/// Hermitian part (A + A*)/2, symmetrized entry by entry so the result is
/// Hermitian in exact floating point: the (j,i) entry is stored as the exact
/// conjugate of the (i,j) entry and the diagonal has zero imaginary part.
inline CMat real_part(const CMat& a) {
    a.require_square("real_part");
    const std::size_t n = a.rows();
    CMat h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = cdouble{a(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const cdouble v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

/// Kronecker product. Dimensions multiply; guarded by the config cap.
inline CMat kron(const CMat& a, const CMat& b,
                 const NumericsConfig& cfg = default_config()) {
    const std::size_t r = a.rows() * b.rows();
    const std::size_t c = a.cols() * b.cols();
    if (r > cfg.dim_cap || c > cfg.dim_cap)
        throw DimensionOverflowError("kron: result exceeds dimension cap");
    CMat out(r, c);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cdouble aij = a(i, j);
            if (aij == cdouble{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

/// Horner evaluation of sum c_k T^k. Empty coefficient list gives the zero
/// matrix; a single coefficient gives c0 * I.
inline CMat poly_eval(const std::vector<cdouble>& coeffs, const CMat& t) {
    t.require_square("poly_eval");
    const std::size_t n = t.rows();
    if (coeffs.empty()) return CMat(n, n);
    CMat acc = coeffs.back() * CMat::identity(n);
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
        acc = acc * t;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += coeffs[k];
    }
    return acc;
}

} // namespace wrho
