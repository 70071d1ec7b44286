#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frobforge/error.hpp"
#include "frobforge/exact/exp_series.hpp"
#include "frobforge/exact/matrix.hpp"

namespace frobforge {

/// Linear vector field E = (L t + c)^a d_a in flat coordinates.
struct EulerField {
    RationalMatrix linear;          // L(a, b): coefficient of t^b in E^a
    std::vector<Rational> constant; // c_a

    static EulerField diagonal(const std::vector<Rational>& weights, std::vector<Rational> constant = {}) {
        const std::size_t n = weights.size();
        EulerField e{RationalMatrix(n, n, Rational(0)), std::move(constant)};
        if (e.constant.empty()) e.constant.assign(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) e.linear(i, i) = weights[i];
        return e;
    }

    /// Components E^a(t) as polynomials of the given arity.
    std::vector<MultiPoly> components() const {
        const std::size_t n = linear.rows();
        std::vector<MultiPoly> out;
        out.reserve(n);
        for (std::size_t a = 0; a < n; ++a) {
            MultiPoly p = MultiPoly::constant(n, constant[a]);
            for (std::size_t b = 0; b < n; ++b) {
                if (sgn(linear(a, b)) != 0) p += MultiPoly::variable(n, b) * linear(a, b);
            }
            out.push_back(std::move(p));
        }
        return out;
    }
};

/// A Frobenius manifold in flat coordinates t^1..t^n: constant metric eta, potential F, Euler field E
/// and charge d. Flatness of eta holds by representation. Construction validates shapes, symmetry
/// and invertibility of eta; the axioms themselves are checked by check_axioms / check_wdvv.
class FMChart {
public:
    FMChart(RationalMatrix eta, ExpSeries potential, EulerField euler, Rational charge, std::size_t unity_index = 0)
        : eta_(std::move(eta)), potential_(std::move(potential)), euler_(std::move(euler)), charge_(std::move(charge)),
          unity_(unity_index) {
        validate();
        eta_inv_ = inverse(eta_);
    }

    std::size_t dim() const { return eta_.rows(); }
    const RationalMatrix& eta() const { return eta_; }
    const RationalMatrix& eta_inverse() const { return eta_inv_; }
    const ExpSeries& potential() const { return potential_; }
    const EulerField& euler() const { return euler_; }
    const Rational& charge() const { return charge_; }
    /// 0-based index of the unity direction e.
    std::size_t unity_index() const { return unity_; }

    /// Zero series with the potential's marker layout.
    ExpSeries zero() const { return ExpSeries::zero_like(potential_); }
    ExpSeries constant(const Rational& c) const {
        ExpSeries s = zero();
        s.add(0, MultiPoly::constant(dim(), c));
        return s;
    }

private:
    void validate() const {
        const std::size_t n = eta_.rows();
        if (n == 0) throw SchemaError("chart: dimension must be positive");
        if (!eta_.square()) throw SchemaError("chart: eta is not square");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (eta_(i, j) != eta_(j, i)) throw SchemaError("chart: eta is not symmetric");
        if (sgn(determinant(eta_)) == 0) throw SchemaError("chart: eta is degenerate");
        if (potential_.arity() != n) throw SchemaError("chart: potential arity differs from dimension");
        if (euler_.linear.rows() != n || euler_.linear.cols() != n || euler_.constant.size() != n) {
            throw SchemaError("chart: Euler field has wrong shape");
        }
        if (unity_ >= n) throw SchemaError("chart: unity index out of range");
    }

    RationalMatrix eta_;
    RationalMatrix eta_inv_;
    ExpSeries potential_;
    EulerField euler_;
    Rational charge_;
    std::size_t unity_;
};

/// Rank-3 array of series, index order (a, b, c).
class SeriesTensor3 {
public:
    SeriesTensor3(std::size_t n, const ExpSeries& zero) : n_(n), data_(n * n * n, zero) {}
    std::size_t dim() const { return n_; }
    ExpSeries& operator()(std::size_t a, std::size_t b, std::size_t c) { return data_[(a * n_ + b) * n_ + c]; }
    const ExpSeries& operator()(std::size_t a, std::size_t b, std::size_t c) const { return data_[(a * n_ + b) * n_ + c]; }

private:
    std::size_t n_;
    std::vector<ExpSeries> data_;
};

using SeriesMatrix = Matrix<ExpSeries>;

inline SeriesMatrix series_matrix(std::size_t rows, std::size_t cols, const ExpSeries& zero) {
    return SeriesMatrix(rows, cols, zero);
}

/// Embeds a Rational matrix as constant series.
inline SeriesMatrix constant_series_matrix(const RationalMatrix& m, const ExpSeries& zero) {
    SeriesMatrix out(m.rows(), m.cols(), zero);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            ExpSeries s = zero;
            s.add(0, MultiPoly::constant(zero.arity(), m(i, j)));
            out(i, j) = s;
        }
    return out;
}

}  // namespace frobforge
