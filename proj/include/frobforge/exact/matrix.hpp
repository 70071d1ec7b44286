#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "frobforge/error.hpp"
#include "frobforge/exact/rational.hpp"

namespace frobforge {

/// Small dense row-major matrix over an arbitrary ring. Used for exact Rational and polynomial
/// matrices and for multiprecision complex ones; double-precision work goes through Eigen instead.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n, const T& one = T(1), const T& zero = T(0)) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_, zero_value());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw ValidationError("Matrix: shape mismatch in product");
        Matrix r(a.rows_, b.cols_, a.zero_value());
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }
    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& x : a.data_) x = s * x;
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    const std::vector<T>& data() const { return data_; }

private:
    T zero_value() const { return data_.empty() ? T{} : data_[0] - data_[0]; }

    void check_same(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw ValidationError("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

/// Exact inverse by Gauss-Jordan elimination; throws on singular input.
inline RationalMatrix inverse(const RationalMatrix& m) {
    if (!m.square()) throw ValidationError("inverse: matrix is not square");
    const std::size_t n = m.rows();
    RationalMatrix a = m;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a(piv, col)) == 0) ++piv;
        if (piv == n) throw AlgebraError("inverse: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const Rational p = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || sgn(a(i, col)) == 0) continue;
            const Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

inline Rational determinant(const RationalMatrix& m) {
    if (!m.square()) throw ValidationError("determinant: matrix is not square");
    const std::size_t n = m.rows();
    RationalMatrix a = m;
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a(piv, col)) == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (sgn(a(i, col)) == 0) continue;
            const Rational f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

/// Determinant over a commutative ring by Laplace expansion along the first row; fine for n <= 7.
template <class T>
T determinant_expansion(const Matrix<T>& m, const T& one) {
    if (!m.square()) throw ValidationError("determinant: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return one;
    if (n == 1) return m(0, 0);
    T acc = m(0, 0) - m(0, 0);
    for (std::size_t c = 0; c < n; ++c) {
        Matrix<T> minor(n - 1, n - 1, acc);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t jj = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == c) continue;
                minor(i - 1, jj++) = m(i, j);
            }
        }
        T term = m(0, c) * determinant_expansion(minor, one);
        if (c % 2 == 0) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    return acc;
}

/// Coefficients of det(x I - M), lowest degree first (Faddeev-LeVerrier, exact).
inline std::vector<Rational> characteristic_polynomial(const RationalMatrix& m) {
    if (!m.square()) throw ValidationError("characteristic_polynomial: matrix is not square");
    const std::size_t n = m.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    RationalMatrix mk(n, n, Rational(0));  // M_0 = 0
    const RationalMatrix id = RationalMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk + c[n - k + 1] * id;
        RationalMatrix amk = m * mk;
        Rational tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
        c[n - k] = -tr / static_cast<long>(k);
    }
    return c;
}

}  // namespace frobforge
