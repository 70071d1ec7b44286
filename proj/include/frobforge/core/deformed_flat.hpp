#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frobforge/core/chart.hpp"
#include "frobforge/core/frobenius.hpp"
#include "frobforge/core/integrate.hpp"

namespace frobforge {

/// Coefficients of the deformed flat coordinates  t~_l(t; z) = sum_p theta_{l,p}(t) z^p.
///
/// theta_{l,0} = eta_{lg} t^g and  d_a d_b theta_{l,p+1} = c_{ab}^g d_g theta_{l,p},  each theta_{l,p}
/// (p >= 1) with zero constant and linear part. Theta_p(n, l) = eta^{nm} d_m theta_{l,p} are the
/// coefficients of Phi_0(z) = sum_p Theta_p z^p, Theta_0 = 1.
struct DeformedFlatSeries {
    int order = 0;
    std::vector<std::vector<ExpSeries>> theta;  // theta[p][l]
    std::vector<SeriesMatrix> Theta;            // Theta[p]

    const ExpSeries& coordinate(std::size_t l, int p) const { return theta.at(static_cast<std::size_t>(p)).at(l); }
};

inline DeformedFlatSeries deformed_flat_coordinates(const FMChart& chart, int order) {
    if (order < 0) throw ValidationError("deformed_flat_coordinates: negative order");
    const std::size_t n = chart.dim();
    const SeriesTensor3 c = structure_constants(chart);
    const RationalMatrix& eta = chart.eta();
    const RationalMatrix& eta_inv = chart.eta_inverse();

    DeformedFlatSeries out;
    out.order = order;
    std::vector<ExpSeries> level;
    for (std::size_t l = 0; l < n; ++l) {
        MultiPoly lin(n);
        for (std::size_t g = 0; g < n; ++g) lin += MultiPoly::variable(n, g) * eta(l, g);
        ExpSeries s = chart.zero();
        s.add(0, lin);
        level.push_back(std::move(s));
    }
    out.theta.push_back(level);

    for (int p = 0; p < order; ++p) {
        std::vector<ExpSeries> next;
        next.reserve(n);
        for (std::size_t l = 0; l < n; ++l) {
            std::vector<ExpSeries> grad;
            grad.reserve(n);
            for (std::size_t g = 0; g < n; ++g) grad.push_back(level[l].derivative(g));
            SeriesMatrix hess(n, n, chart.zero());
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a; b < n; ++b) {
                    ExpSeries acc = chart.zero();
                    for (std::size_t g = 0; g < n; ++g) {
                        if (!c(a, b, g).is_zero() && !grad[g].is_zero()) acc += c(a, b, g) * grad[g];
                    }
                    hess(a, b) = acc;
                    hess(b, a) = std::move(acc);
                }
            next.push_back(integrate_hessian(hess, "deformed flat recursion at order " + std::to_string(p + 1)));
        }
        level = std::move(next);
        out.theta.push_back(level);
    }

    for (int p = 0; p <= order; ++p) {
        SeriesMatrix T(n, n, chart.zero());
        const auto& th = out.theta[static_cast<std::size_t>(p)];
        for (std::size_t l = 0; l < n; ++l) {
            std::vector<ExpSeries> grad;
            for (std::size_t m = 0; m < n; ++m) grad.push_back(th[l].derivative(m));
            for (std::size_t nu = 0; nu < n; ++nu) {
                ExpSeries acc = chart.zero();
                for (std::size_t m = 0; m < n; ++m) {
                    if (sgn(eta_inv(nu, m)) != 0) acc += grad[m] * eta_inv(nu, m);
                }
                T(nu, l) = std::move(acc);
            }
        }
        out.Theta.push_back(std::move(T));
    }
    return out;
}

/// Coefficient form of Phi_0^T(-z) eta Phi_0(z) = eta:  residual_p = sum_{a+b=p} (-1)^a Theta_a^T eta Theta_b - eta [p=0].
inline std::vector<SeriesMatrix> orthogonality_residuals(const DeformedFlatSeries& dfs, const FMChart& chart) {
    const SeriesMatrix eta = constant_series_matrix(chart.eta(), chart.zero());
    std::vector<SeriesMatrix> out;
    for (int p = 0; p <= dfs.order; ++p) {
        SeriesMatrix acc(chart.dim(), chart.dim(), chart.zero());
        for (int a = 0; a <= p; ++a) {
            SeriesMatrix term = dfs.Theta[static_cast<std::size_t>(a)].transpose() * eta * dfs.Theta[static_cast<std::size_t>(p - a)];
            if (a % 2 == 0) {
                acc = acc + term;
            } else {
                acc = acc - term;
            }
        }
        if (p == 0) acc = acc - eta;
        out.push_back(std::move(acc));
    }
    return out;
}

inline bool is_zero_matrix(const SeriesMatrix& m) {
    for (const auto& s : m.data())
        if (!s.is_zero()) return false;
    return true;
}

}  // namespace frobforge
