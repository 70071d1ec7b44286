#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frobforge/core/chart.hpp"
#include "frobforge/error.hpp"

namespace frobforge {

/// c_{abc} = d_a d_b d_c F, all indices lower.
inline SeriesTensor3 third_derivatives(const FMChart& chart) {
    const std::size_t n = chart.dim();
    SeriesTensor3 out(n, chart.zero());
    for (std::size_t a = 0; a < n; ++a) {
        const ExpSeries fa = chart.potential().derivative(a);
        for (std::size_t b = a; b < n; ++b) {
            const ExpSeries fab = fa.derivative(b);
            for (std::size_t c = b; c < n; ++c) {
                const ExpSeries fabc = fab.derivative(c);
                out(a, b, c) = out(a, c, b) = out(b, a, c) = out(b, c, a) = out(c, a, b) = out(c, b, a) = fabc;
            }
        }
    }
    return out;
}

/// c_{ab}^g = eta^{ge} d_e d_a d_b F, stored as (a, b, g).
inline SeriesTensor3 raise_last_index(const SeriesTensor3& lower, const RationalMatrix& eta_inv) {
    const std::size_t n = lower.dim();
    SeriesTensor3 out(n, ExpSeries::zero_like(lower(0, 0, 0)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t g = 0; g < n; ++g) {
                ExpSeries acc = ExpSeries::zero_like(lower(0, 0, 0));
                for (std::size_t e = 0; e < n; ++e) {
                    if (sgn(eta_inv(g, e)) != 0) acc += lower(e, a, b) * eta_inv(g, e);
                }
                out(a, b, g) = std::move(acc);
            }
    return out;
}

inline SeriesTensor3 structure_constants(const FMChart& chart) {
    return raise_last_index(third_derivatives(chart), chart.eta_inverse());
}

/// Associativity residuals  c_{ab}^e c_{eg}^d - c_{bg}^e c_{ea}^d  for all (a, b, g, d).
struct WdvvReport {
    std::size_t dim = 0;
    std::vector<ExpSeries> residuals;  // index ((a*n + b)*n + g)*n + d
    std::size_t nonzero = 0;
    bool truncated = false;            // residuals are exact through the marker truncation degree
    int truncation = 0;

    bool passed() const { return nonzero == 0; }
    const ExpSeries& residual(std::size_t a, std::size_t b, std::size_t g, std::size_t d) const {
        return residuals[((a * dim + b) * dim + g) * dim + d];
    }
};

inline WdvvReport wdvv_residuals(const SeriesTensor3& c) {
    const std::size_t n = c.dim();
    WdvvReport rep;
    rep.dim = n;
    rep.residuals.reserve(n * n * n * n);
    const ExpSeries zero = ExpSeries::zero_like(c(0, 0, 0));
    rep.truncation = zero.truncation();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t g = 0; g < n; ++g)
                for (std::size_t d = 0; d < n; ++d) {
                    ExpSeries r = zero;
                    for (std::size_t e = 0; e < n; ++e) {
                        r += c(a, b, e) * c(e, g, d);
                        r -= c(b, g, e) * c(e, a, d);
                    }
                    rep.truncated = rep.truncated || r.truncated();
                    if (!r.is_zero()) ++rep.nonzero;
                    rep.residuals.push_back(std::move(r));
                }
    return rep;
}

inline WdvvReport check_wdvv(const FMChart& chart) { return wdvv_residuals(structure_constants(chart)); }

/// Lie derivative of a function along the chart's Euler field.
inline ExpSeries lie_euler(const FMChart& chart, const ExpSeries& f) {
    const auto comps = chart.euler().components();
    ExpSeries acc = ExpSeries::zero_like(f);
    for (std::size_t a = 0; a < chart.dim(); ++a) {
        if (comps[a].is_zero()) continue;
        acc += ExpSeries::polynomial(comps[a]) * f.derivative(a);
    }
    return acc;
}

struct AxiomReport {
    bool unity_ok = true;
    std::vector<std::string> unity_failures;
    bool quasihomogeneous = true;
    ExpSeries remainder;         // Lie_E F - (3 - d) F
    bool fm2_from_potential = true;
    std::string note;

    bool passed() const { return unity_ok && quasihomogeneous; }
};

/// Unity  d_e d_a d_b F = eta_ab  and quasihomogeneity  Lie_E F - (3-d) F  of degree <= 2 (marker 0 only).
/// FM2 is not tested: symmetry of the covariant derivative of c is automatic for c = d^3 F.
inline AxiomReport check_axioms(const FMChart& chart) {
    AxiomReport rep;
    const std::size_t n = chart.dim();
    const std::size_t e = chart.unity_index();
    const ExpSeries fe = chart.potential().derivative(e);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            if (!(fe.derivative(a).derivative(b) == chart.constant(chart.eta()(a, b)))) {
                rep.unity_ok = false;
                rep.unity_failures.push_back("d_e d_" + std::to_string(a + 1) + " d_" + std::to_string(b + 1) +
                                             " F != eta_" + std::to_string(a + 1) + std::to_string(b + 1));
            }
        }
    rep.remainder = lie_euler(chart, chart.potential()) - chart.potential() * (Rational(3) - chart.charge());
    for (const auto& [k, p] : rep.remainder.parts()) {
        if (k != 0 || p.total_degree() > 2) rep.quasihomogeneous = false;
    }
    rep.note = "FM2 holds automatically: the structure constants are third derivatives of a potential";
    return rep;
}

/// Intersection form g^{ab} = E^e c_e^{ab} and its determinant (the discriminant polynomial).
struct IntersectionFormMatrix {
    SeriesMatrix g;
    ExpSeries discriminant;
};

inline IntersectionFormMatrix intersection_form(const FMChart& chart) {
    const std::size_t n = chart.dim();
    const SeriesTensor3 c = structure_constants(chart);  // (e, m, b) -> c_{em}^b
    const auto comps = chart.euler().components();
    const RationalMatrix& eta_inv = chart.eta_inverse();
    SeriesMatrix g(n, n, chart.zero());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            ExpSeries acc = chart.zero();
            for (std::size_t m = 0; m < n; ++m) {
                if (sgn(eta_inv(a, m)) == 0) continue;
                ExpSeries inner = chart.zero();
                for (std::size_t e = 0; e < n; ++e) {
                    if (!comps[e].is_zero()) inner += ExpSeries::polynomial(comps[e]) * c(e, m, b);
                }
                acc += inner * eta_inv(a, m);
            }
            g(a, b) = std::move(acc);
        }
    ExpSeries det = determinant_expansion(g, chart.constant(Rational(1)));
    return {std::move(g), std::move(det)};
}

/// mu = (2 - d)/2 * 1 - grad E.
inline RationalMatrix mu_matrix(const FMChart& chart) {
    const std::size_t n = chart.dim();
    RationalMatrix mu(n, n, Rational(0));
    const Rational half = (Rational(2) - chart.charge()) / 2;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) mu(a, b) = (a == b ? half : Rational(0)) - chart.euler().linear(a, b);
    return mu;
}

/// c = 6 (1-d)^{-2} [n - 4 tr mu^2], the coefficient of eps^2.
inline Rational virasoro_central_charge(const FMChart& chart) {
    const Rational one_minus_d = Rational(1) - chart.charge();
    if (sgn(one_minus_d) == 0) throw AlgebraError("virasoro_central_charge: pole at d = 1");
    const RationalMatrix mu = mu_matrix(chart);
    const RationalMatrix mu2 = mu * mu;
    Rational tr(0);
    for (std::size_t i = 0; i < chart.dim(); ++i) tr += mu2(i, i);
    return Rational(6) / (one_minus_d * one_minus_d) * (Rational(static_cast<long>(chart.dim())) - 4 * tr);
}

}  // namespace frobforge
