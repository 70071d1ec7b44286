#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "frobforge/core/chart.hpp"
#include "frobforge/core/frobenius.hpp"
#include "frobforge/error.hpp"

namespace frobforge::qh {

/// Marker variable of the P^2 chart: t_2 (0-based 1). H^0, H^2, H^4 carry t_1, t_2, t_3.
inline constexpr std::size_t kP2Marker = 1;

inline Rational factorial(int k) {
    mpz_class f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return Rational(f);
}

/// F = t1^2 t3/2 + t1 t2^2/2 + sum_{d=1}^{D} N_d t3^{3d-1} e^{d t2} / (3d-1)!, truncated at marker D.
inline ExpSeries p2_potential(const std::vector<Rational>& N, int D) {
    const std::size_t n = 3;
    const MultiPoly t1 = MultiPoly::variable(n, 0);
    const MultiPoly t2 = MultiPoly::variable(n, 1);
    const MultiPoly t3 = MultiPoly::variable(n, 2);
    ExpSeries F(n, kP2Marker, D);
    F.add(0, t1 * t1 * t3 * Rational(1, 2) + t1 * t2 * t2 * Rational(1, 2));
    for (int d = 1; d <= D && d <= static_cast<int>(N.size()); ++d) {
        const auto e = static_cast<unsigned>(3 * d - 1);
        F.add(d, t3.pow(e) * (N[static_cast<std::size_t>(d - 1)] / factorial(3 * d - 1)));
    }
    return F;
}

inline FMChart p2_chart_from(const std::vector<Rational>& N, int D) {
    RationalMatrix eta(3, 3, Rational(0));
    eta(0, 2) = eta(2, 0) = eta(1, 1) = 1;
    EulerField E = EulerField::diagonal({Rational(1), Rational(0), Rational(-1)}, {Rational(0), Rational(3), Rational(0)});
    return FMChart(eta, p2_potential(N, D), std::move(E), Rational(2), 0);
}

namespace detail {
// WDVV residuals of the ansatz, restricted to marker degree d.
inline std::vector<MultiPoly> residuals_at(const std::vector<Rational>& N, int d) {
    const WdvvReport rep = check_wdvv(p2_chart_from(N, d));
    std::vector<MultiPoly> out;
    out.reserve(rep.residuals.size());
    for (const auto& r : rep.residuals) out.push_back(r.part(d));
    return out;
}
}  // namespace detail

/// N_1..N_D from associativity, degree by degree with N_1 = 1. At marker degree d the residual is
/// affine in N_d (N_d enters only multiplied by marker-0 terms), so two evaluations fix it.
inline std::vector<Rational> instanton_numbers(int D) {
    if (D < 1) throw ValidationError("instanton_numbers: D must be >= 1");
    std::vector<Rational> N{Rational(1)};
    for (int d = 2; d <= D; ++d) {
        N.push_back(Rational(0));
        const auto r0 = detail::residuals_at(N, d);
        N.back() = 1;
        const auto r1 = detail::residuals_at(N, d);
        std::optional<Rational> sol;
        for (std::size_t i = 0; i < r0.size() && !sol; ++i) {
            const MultiPoly slope = r1[i] - r0[i];
            for (const auto& [e, c] : slope.terms()) {
                sol = -r0[i].coefficient(e) / c;
                break;
            }
        }
        if (!sol) throw AlgebraError("instanton_numbers: N_" + std::to_string(d) + " does not enter the degree-" + std::to_string(d) + " residual");
        for (std::size_t i = 0; i < r0.size(); ++i) {
            if (!(r0[i] + (r1[i] - r0[i]) * *sol).is_zero()) {
                throw AlgebraError("instanton_numbers: degree-" + std::to_string(d) + " residual is not solvable");
            }
        }
        N.back() = *sol;
    }
    return N;
}

struct QHChart {
    int degree = 0;
    std::vector<Rational> N;
    FMChart chart;
};

/// The truncated P^2 chart; D = 0 is classical cohomology.
inline QHChart build_p2_chart(int D) {
    if (D < 0) throw ValidationError("build_p2_chart: D must be >= 0");
    std::vector<Rational> N = D >= 1 ? instanton_numbers(D) : std::vector<Rational>{};
    FMChart chart = p2_chart_from(N, D);
    return QHChart{D, std::move(N), std::move(chart)};
}

/// Classical data of P^d: basis e_a of H^{2(a-1)}, a = 1..d+1.
struct PdClassicalData {
    int d = 0;
    RationalMatrix eta;  // delta_{a+b, d+2}
    RationalMatrix mu;   // diag(a - 1 - d/2)
    RationalMatrix R;    // columns indexed by source: R e_a = (d+1) e_{a+1}
};

inline PdClassicalData pd_classical_data(int d) {
    if (d < 1) throw ValidationError("pd_classical_data: d must be >= 1");
    const auto n = static_cast<std::size_t>(d + 1);
    PdClassicalData out{d, RationalMatrix(n, n, Rational(0)), RationalMatrix(n, n, Rational(0)), RationalMatrix(n, n, Rational(0))};
    for (std::size_t a = 0; a < n; ++a) {
        out.eta(a, n - 1 - a) = 1;
        out.mu(a, a) = Rational(static_cast<long>(a)) - Rational(d, 2);
        out.mu(a, a).canonicalize();
        if (a + 1 < n) out.R(a + 1, a) = d + 1;
    }
    return out;
}

}  // namespace frobforge::qh
