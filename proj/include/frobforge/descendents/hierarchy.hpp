#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "frobforge/core/chart.hpp"
#include "frobforge/core/deformed_flat.hpp"
#include "frobforge/error.hpp"

namespace frobforge::desc {

/// Flow d_T t = A(t) t_X of the first Hamiltonian structure, labels 0-based (alpha, p).
/// The Hamiltonian density of (alpha, p) is theta_{alpha,p+1} (= Omega_{alpha,p+1;1,0} up to affine
/// terms), so that (unity, 0) is X-translation and (alpha, 0) is multiplication by e_alpha.
struct HierarchyFlow {
    std::size_t alpha = 0;
    int p = 0;
    SeriesMatrix A;  // A(g, e) = eta^{gb} d_b d_e theta_{alpha,p+1}
};

inline HierarchyFlow hierarchy_flow(const FMChart& chart, const DeformedFlatSeries& dfs, std::size_t alpha, int p) {
    const std::size_t n = chart.dim();
    if (alpha >= n) throw ValidationError("hierarchy_flow: alpha out of range");
    if (p < 0) throw ValidationError("hierarchy_flow: negative p");
    if (dfs.order < p + 1) throw ValidationError("hierarchy_flow: deformed flat coordinates needed to order " + std::to_string(p + 1));
    const SeriesMatrix& Th = dfs.Theta[static_cast<std::size_t>(p + 1)];
    HierarchyFlow f{alpha, p, SeriesMatrix(n, n, chart.zero())};
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t e = 0; e < n; ++e) f.A(g, e) = Th(g, alpha).derivative(e);
    return f;
}

inline HierarchyFlow hierarchy_flow(const FMChart& chart, std::size_t alpha, int p) {
    return hierarchy_flow(chart, deformed_flat_coordinates(chart, p + 1), alpha, p);
}

/// Commutator of the evolutionary fields X_i = A_i(t) t_X on jets (t, t_X, t_XX):
///   [X_1, X_2]^g = T^g_{de} t_X^d t_X^e + ([A_2, A_1] t_XX)^g,
///   T^g_{de} = d_k A_2^g_e A_1^k_d + A_2^g_k d_d A_1^k_e - (1 <-> 2).
/// quadratic(g, d, e) is T symmetrized in (d, e); linear is [A_2, A_1].
struct FlowCommutator {
    std::size_t n = 0;
    std::vector<ExpSeries> quadratic;  // (g * n + d) * n + e
    SeriesMatrix linear;

    bool vanishes() const {
        for (const auto& s : quadratic)
            if (!s.is_zero()) return false;
        return is_zero_matrix(linear);
    }

    /// Value of the commutator at a numeric jet.
    std::vector<std::complex<double>> evaluate(std::span<const std::complex<double>> t, std::span<const std::complex<double>> tx,
                                               std::span<const std::complex<double>> txx) const {
        using C = std::complex<double>;
        std::vector<C> out(n, C(0));
        for (std::size_t g = 0; g < n; ++g) {
            for (std::size_t d = 0; d < n; ++d)
                for (std::size_t e = 0; e < n; ++e) {
                    const auto& s = quadratic[(g * n + d) * n + e];
                    if (!s.is_zero()) out[g] += s.evaluate_numeric<C>(t) * tx[d] * tx[e];
                }
            for (std::size_t k = 0; k < n; ++k)
                if (!linear(g, k).is_zero()) out[g] += linear(g, k).evaluate_numeric<C>(t) * txx[k];
        }
        return out;
    }
};

inline FlowCommutator flow_commutator(const FMChart& chart, const SeriesMatrix& A1, const SeriesMatrix& A2) {
    const std::size_t n = chart.dim();
    FlowCommutator out;
    out.n = n;
    out.quadratic.assign(n * n * n, chart.zero());
    std::vector<SeriesMatrix> dA1, dA2;
    for (std::size_t k = 0; k < n; ++k) {
        SeriesMatrix m1(n, n, chart.zero()), m2(n, n, chart.zero());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                m1(i, j) = A1(i, j).derivative(k);
                m2(i, j) = A2(i, j).derivative(k);
            }
        dA1.push_back(std::move(m1));
        dA2.push_back(std::move(m2));
    }
    auto half = [&](const SeriesMatrix& Ai, const std::vector<SeriesMatrix>& dAi, const SeriesMatrix& Aj, const std::vector<SeriesMatrix>& dAj,
                    std::size_t g, std::size_t d, std::size_t e) {
        ExpSeries acc = chart.zero();
        for (std::size_t k = 0; k < n; ++k) {
            if (!dAj[k](g, e).is_zero() && !Ai(k, d).is_zero()) acc += dAj[k](g, e) * Ai(k, d);
            if (!Aj(g, k).is_zero() && !dAi[d](k, e).is_zero()) acc += Aj(g, k) * dAi[d](k, e);
        }
        return acc;
    };
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t d = 0; d < n; ++d)
            for (std::size_t e = 0; e < n; ++e) {
                const ExpSeries T = half(A1, dA1, A2, dA2, g, d, e) - half(A2, dA2, A1, dA1, g, d, e);
                out.quadratic[(g * n + d) * n + e] += T * make_rational(1, 2);
                out.quadratic[(g * n + e) * n + d] += T * make_rational(1, 2);
            }
    out.linear = A2 * A1 - A1 * A2;
    return out;
}

}  // namespace frobforge::desc
