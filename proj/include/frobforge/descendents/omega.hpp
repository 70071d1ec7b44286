#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frobforge/core/chart.hpp"
#include "frobforge/core/deformed_flat.hpp"
#include "frobforge/error.hpp"

namespace frobforge::desc {

/// Omega_{a,p;b,q}(t) for p + q <= order, from
///   (z + w) Omega(z, w) = Phi_0^T(w) eta Phi_0(z) - eta.
/// block(p, q)(a, b) = Omega_{a,p;b,q}: the first index pairs with w^p, the second with z^q.
struct DescendentTable {
    int order = 0;
    std::size_t n = 0;
    std::vector<std::vector<SeriesMatrix>> blocks;  // blocks[p][q], p + q <= order

    const SeriesMatrix& block(int p, int q) const {
        if (p < 0 || q < 0 || p + q > order) throw ValidationError("omega: (p, q) = (" + std::to_string(p) + ", " + std::to_string(q) + ") outside the table");
        return blocks[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
    }
    const ExpSeries& operator()(std::size_t a, int p, std::size_t b, int q) const { return block(p, q)(a, b); }
};

inline DescendentTable omega_table(const FMChart& chart, const DeformedFlatSeries& dfs, int order) {
    if (order < 0) throw ValidationError("omega_table: negative order");
    if (dfs.order < order + 1) throw ValidationError("omega_table: deformed flat coordinates needed to order " + std::to_string(order + 1));
    const std::size_t n = chart.dim();
    const SeriesMatrix eta = constant_series_matrix(chart.eta(), chart.zero());
    auto N = [&](int a, int b) {
        SeriesMatrix m = dfs.Theta[static_cast<std::size_t>(a)].transpose() * eta * dfs.Theta[static_cast<std::size_t>(b)];
        if (a == 0 && b == 0) m = m - eta;
        return m;
    };
    if (!is_zero_matrix(N(0, 0))) throw AlgebraError("omega_table: Theta_0 is not the identity");

    DescendentTable out;
    out.order = order;
    out.n = n;
    out.blocks.assign(static_cast<std::size_t>(order) + 1, {});
    for (int p = 0; p <= order; ++p) out.blocks[static_cast<std::size_t>(p)].assign(static_cast<std::size_t>(order - p) + 1, SeriesMatrix(n, n, chart.zero()));

    // coefficient of w^a z^b:  N_{a,b} = Om_{a-1,b} + Om_{a,b-1}; solved along each diagonal a + b = k
    for (int k = 1; k <= order + 1; ++k) {
        auto& om = out.blocks;
        om[0][static_cast<std::size_t>(k - 1)] = N(0, k);
        for (int a = 1; a <= k - 1; ++a) {
            om[static_cast<std::size_t>(a)][static_cast<std::size_t>(k - 1 - a)] =
                N(a, k - a) - om[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(k - a)];
        }
        const SeriesMatrix rem = N(k, 0) - om[static_cast<std::size_t>(k - 1)][0];
        if (!is_zero_matrix(rem)) {
            throw AlgebraError("omega_table: numerator not divisible by (z + w) at total degree " + std::to_string(k) + " (orthogonality broken upstream)");
        }
    }
    return out;
}

inline DescendentTable omega_table(const FMChart& chart, int order) {
    return omega_table(chart, deformed_flat_coordinates(chart, order + 1), order);
}

/// Omega_{a,p;b,q} == Omega_{b,q;a,p} over the whole table.
inline bool omega_symmetric(const DescendentTable& t) {
    for (int p = 0; p <= t.order; ++p)
        for (int q = 0; p + q <= t.order; ++q)
            for (std::size_t a = 0; a < t.n; ++a)
                for (std::size_t b = 0; b < t.n; ++b)
                    if (!(t(a, p, b, q) == t(b, q, a, p))) return false;
    return true;
}

}  // namespace frobforge::desc
