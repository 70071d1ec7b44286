#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <span>
#include <vector>

#include "frobforge/core/chart.hpp"
#include "frobforge/core/frobenius.hpp"
#include "frobforge/error.hpp"

namespace frobforge {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline CMatrix to_complex(const RationalMatrix& m) {
    CMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
    return out;
}

/// Structure constants and Euler field of a chart, prepared for repeated numeric evaluation.
class NumericChart {
public:
    explicit NumericChart(const FMChart& chart)
        : n_(chart.dim()), c_(structure_constants(chart)), euler_(chart.euler().components()),
          eta_(to_complex(chart.eta())), mu_(to_complex(mu_matrix(chart))) {}

    std::size_t dim() const { return n_; }
    const CMatrix& eta() const { return eta_; }
    const CMatrix& mu() const { return mu_; }

    /// c_{ab}^g(t), index (a, b, g) -> (a*n + b)*n + g.
    std::vector<cplx> structure(std::span<const cplx> t) const {
        check(t);
        std::vector<cplx> out(n_ * n_ * n_);
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = a; b < n_; ++b)
                for (std::size_t g = 0; g < n_; ++g) {
                    const cplx v = c_(a, b, g).evaluate_numeric<cplx>(t);
                    out[(a * n_ + b) * n_ + g] = v;
                    out[(b * n_ + a) * n_ + g] = v;
                }
        return out;
    }

    CVector euler(std::span<const cplx> t) const {
        check(t);
        CVector e(static_cast<Eigen::Index>(n_));
        for (std::size_t a = 0; a < n_; ++a) e(static_cast<Eigen::Index>(a)) = euler_[a].evaluate_numeric<cplx>(t);
        return e;
    }

    /// Matrix of multiplication by the vector x (column convention): (x.)^g_b = x^a c_{ab}^g.
    CMatrix multiplication(const std::vector<cplx>& c, const CVector& x) const {
        CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                for (std::size_t g = 0; g < n_; ++g)
                    m(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(b)) += x(static_cast<Eigen::Index>(a)) * c[(a * n_ + b) * n_ + g];
        return m;
    }

    CVector product(const std::vector<cplx>& c, const CVector& x, const CVector& y) const {
        return multiplication(c, x) * y;
    }

private:
    void check(std::span<const cplx> t) const {
        if (t.size() != n_) throw ValidationError("point has dimension " + std::to_string(t.size()) + ", chart has " + std::to_string(n_));
    }

    std::size_t n_;
    SeriesTensor3 c_;
    std::vector<MultiPoly> euler_;
    CMatrix eta_;
    CMatrix mu_;
};

inline bool canonical_less(cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); }

/// Relative separation required between canonical coordinates.
inline constexpr double kSemisimpleMargin = 1e-6;

struct CanonicalFrame {
    std::vector<cplx> t;
    CVector u;
    CMatrix dt_du;                    // column i: d t / d u_i  (the idempotent f_i in flat components)
    CVector psi1;                     // psi_{i1} = sqrt(<f_i, f_i>), principal branch
    CMatrix Psi;                      // Psi(i, a) = psi_{ia}
    CMatrix mu;
    CMatrix V;                        // Psi mu Psi^{-1}
    std::vector<std::size_t> order;   // eigen-solver index of the i-th sorted u
    double separation = 0;            // min |u_i - u_j| / max |u|

    std::size_t dim() const { return static_cast<std::size_t>(u.size()); }
    cplx J() const { return dt_du.determinant(); }
    cplx psi_product() const {
        cplx p = 1;
        for (Eigen::Index i = 0; i < psi1.size(); ++i) p *= psi1(i);
        return p;
    }
    CMatrix U() const { return u.asDiagonal(); }
};

namespace detail {

inline double separation_of(const CVector& u) {
    double maxabs = 0;
    for (Eigen::Index i = 0; i < u.size(); ++i) maxabs = std::max(maxabs, std::abs(u(i)));
    if (u.size() < 2) return std::numeric_limits<double>::infinity();
    double mind = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < u.size(); ++i)
        for (Eigen::Index j = i + 1; j < u.size(); ++j) mind = std::min(mind, std::abs(u(i) - u(j)));
    return maxabs == 0 ? 0 : mind / maxabs;
}

struct Eigensystem {
    CVector u;
    CMatrix vectors;
    std::vector<std::size_t> order;
};

inline Eigensystem sorted_eigensystem(const CMatrix& M, bool with_vectors) {
    Eigen::ComplexEigenSolver<CMatrix> es(M, with_vectors);
    if (es.info() != Eigen::Success) throw NumericError("eigenvalues of Euler multiplication did not converge");
    const auto n = static_cast<std::size_t>(M.rows());
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return canonical_less(es.eigenvalues()(static_cast<Eigen::Index>(a)), es.eigenvalues()(static_cast<Eigen::Index>(b)));
    });
    Eigensystem out;
    out.u.resize(M.rows());
    if (with_vectors) out.vectors.resize(M.rows(), M.cols());
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = static_cast<Eigen::Index>(idx[i]);
        out.u(static_cast<Eigen::Index>(i)) = es.eigenvalues()(k);
        if (with_vectors) out.vectors.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(k);
    }
    out.order = std::move(idx);
    return out;
}

}  // namespace detail

/// Eigenvalues of E. at t, sorted by (Re, Im); throws CausticError outside the semisimple margin.
inline CVector canonical_coordinates(const NumericChart& nc, std::span<const cplx> t) {
    const auto c = nc.structure(t);
    const auto es = detail::sorted_eigensystem(nc.multiplication(c, nc.euler(t)), false);
    if (detail::separation_of(es.u) <= kSemisimpleMargin) {
        throw CausticError("canonical coordinates coincide within the semisimplicity margin");
    }
    return es.u;
}

inline CVector canonical_coordinates(const FMChart& chart, std::span<const cplx> t) {
    return canonical_coordinates(NumericChart(chart), t);
}

/// Frame of normalized idempotents at a semisimple point.
///
/// An eigenvector v of E. spans the line of an idempotent; v.v = lambda v and f = v/lambda is the
/// idempotent itself. Since du_i(f_j) = delta_ij, f_i = d/du_i and its flat components are dt^a/du_i.
inline CanonicalFrame canonical_frame(const NumericChart& nc, std::span<const cplx> t) {
    const std::size_t n = nc.dim();
    const auto N = static_cast<Eigen::Index>(n);
    const auto c = nc.structure(t);
    const auto es = detail::sorted_eigensystem(nc.multiplication(c, nc.euler(t)), true);

    CanonicalFrame fr;
    fr.t.assign(t.begin(), t.end());
    fr.u = es.u;
    fr.order = es.order;
    fr.separation = detail::separation_of(es.u);
    if (fr.separation <= kSemisimpleMargin) throw CausticError("point is not semisimple (canonical coordinates coincide)");

    fr.dt_du.resize(N, N);
    fr.psi1.resize(N);
    fr.Psi.resize(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
        const CVector v = es.vectors.col(i);
        const CVector vv = nc.product(c, v, v);
        Eigen::Index k = 0;
        v.cwiseAbs().maxCoeff(&k);
        const cplx lambda = vv(k) / v(k);
        if (std::abs(lambda) < 1e-14 * v.squaredNorm()) throw NumericError("nilpotent eigenvector: frame breakdown");
        const CVector f = v / lambda;
        fr.dt_du.col(i) = f;
        const CVector etaf = nc.eta() * f;
        const cplx norm2 = f.cwiseProduct(etaf).sum();  // bilinear, no conjugation
        if (std::abs(norm2) < 1e-14 * std::max(1.0, f.squaredNorm())) throw NumericError("<f_i, f_i> vanishes: frame breakdown");
        fr.psi1(i) = std::sqrt(norm2);
        fr.Psi.row(i) = etaf.transpose() / fr.psi1(i);
    }
    fr.mu = nc.mu();
    fr.V = fr.Psi * fr.mu * fr.Psi.inverse();
    return fr;
}

inline CanonicalFrame canonical_frame(const FMChart& chart, std::span<const cplx> t) {
    return canonical_frame(NumericChart(chart), t);
}

/// (V_i)_{jk} = (delta_ij V_ik - delta_ik V_ji) / (u_j - u_k), diagonal zero.
inline std::vector<CMatrix> vi_matrices(const CVector& u, const CMatrix& V) {
    const Eigen::Index n = u.size();
    std::vector<CMatrix> out;
    for (Eigen::Index i = 0; i < n; ++i) {
        CMatrix Vi = CMatrix::Zero(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k) {
                if (j == k) continue;
                const cplx num = (i == j ? V(i, k) : cplx(0)) - (i == k ? V(j, i) : cplx(0));
                if (num == cplx(0)) continue;
                const cplx den = u(j) - u(k);
                if (den == cplx(0)) throw CausticError("V_i undefined: coincident canonical coordinates");
                Vi(j, k) = num / den;
            }
        out.push_back(std::move(Vi));
    }
    return out;
}

inline std::vector<CMatrix> vi_matrices(const CanonicalFrame& fr) { return vi_matrices(fr.u, fr.V); }

/// Largest distance under the best matching of two equally sized multisets (brute force over permutations).
inline double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    std::vector<std::size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0;
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline CMatrix elementary(Eigen::Index n, Eigen::Index i) {
    CMatrix E = CMatrix::Zero(n, n);
    E(i, i) = 1;
    return E;
}

}  // namespace frobforge
