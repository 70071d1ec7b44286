#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "frobforge/error.hpp"
#include "frobforge/singularity/an.hpp"

namespace frobforge::an {

using cplx = std::complex<double>;

namespace detail {

inline cplx horner(const std::vector<cplx>& c, cplx x) {
    cplx acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// |p(x)| / sum |c_i| |x|^i: the relative backward error of x as a root.
inline double backward_error(const std::vector<cplx>& c, cplx x) {
    double scale = 0;
    double ax = 1;
    for (const auto& ci : c) {
        scale += std::abs(ci) * ax;
        ax *= std::abs(x);
    }
    return scale == 0 ? 0 : std::abs(horner(c, x)) / scale;
}

}  // namespace detail

/// Roots of sum c_i x^i (c lowest first, leading coefficient nonzero) via the companion matrix,
/// each root polished by Newton steps while they improve the residual.
inline std::vector<cplx> polynomial_roots(const std::vector<cplx>& c, double tol = 1e-12) {
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg < 1) return {};
    if (c.back() == cplx(0)) throw ValidationError("polynomial_roots: leading coefficient is zero");
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw NumericError("polynomial_roots: eigenvalue iteration did not converge");

    std::vector<cplx> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);

    std::vector<cplx> roots;
    for (int i = 0; i < deg; ++i) {
        cplx x = es.eigenvalues()(i);
        double err = detail::backward_error(c, x);
        for (int it = 0; it < 50 && err > 0; ++it) {
            const cplx dp = detail::horner(d, x);
            if (dp == cplx(0)) break;
            const cplx y = x - detail::horner(c, x) / dp;
            const double e2 = detail::backward_error(c, y);
            if (!(e2 < err)) break;
            x = y;
            err = e2;
        }
        if (!(err <= std::max(tol, 64 * std::numeric_limits<double>::epsilon()))) {
            throw NumericError("critical_values: root did not converge to the requested precision");
        }
        roots.push_back(x);
    }
    return roots;
}

/// Values of f_s at the roots of f'_s (with multiplicity) for a numeric parameter point.
inline std::vector<cplx> critical_values(const Unfolding& u, std::span<const Rational> s, double tol = 1e-12) {
    if (s.size() != static_cast<std::size_t>(u.n)) throw ValidationError("critical_values: expected " + std::to_string(u.n) + " parameters");
    std::vector<cplx> fc;
    std::vector<cplx> dc;
    std::vector<double> sd;
    for (const auto& v : s) sd.push_back(v.get_d());
    for (int i = 0; i <= u.f.degree(); ++i) fc.emplace_back(u.f.coeff(i).evaluate_numeric<double>(sd), 0.0);
    for (int i = 0; i <= u.fprime.degree(); ++i) dc.emplace_back(u.fprime.coeff(i).evaluate_numeric<double>(sd), 0.0);
    std::vector<cplx> out;
    for (const cplx& x : polynomial_roots(dc, tol)) out.push_back(detail::horner(fc, x));
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    return out;
}

}  // namespace frobforge::an
