#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "frobforge/core/chart.hpp"
#include "frobforge/error.hpp"
#include "frobforge/exact/exp_series.hpp"

namespace frobforge {

/// Potential phi of a closed 1-form  sum_a omega_a dt^a  (exact, in the ExpSeries ring).
///
/// Integrates variable by variable: after handling t^0..t^{a-1} the remainder omega_a - d_a phi
/// no longer depends on those variables, so its antiderivative in t^a does not disturb them.
/// Throws IntegrabilityError when d_a phi != omega_a at the end (the form was not closed).
inline ExpSeries integrate_closed_form(std::span<const ExpSeries> omega, const std::string& what = "1-form") {
    if (omega.empty()) throw ValidationError("integrate_closed_form: empty form");
    const std::size_t n = omega.size();
    ExpSeries phi = ExpSeries::zero_like(omega[0]);
    for (std::size_t a = 0; a < n; ++a) {
        ExpSeries rest = omega[a] - phi.derivative(a);
        phi += rest.antiderivative(a);
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (!(phi.derivative(a) == omega[a])) {
            throw IntegrabilityError(what + " is not closed (component " + std::to_string(a + 1) + ")");
        }
    }
    return phi;
}

/// theta with  d_a d_b theta = hessian(a, b), normalized to zero constant and linear part.
inline ExpSeries integrate_hessian(const SeriesMatrix& hessian, const std::string& what = "Hessian") {
    const std::size_t n = hessian.rows();
    std::vector<ExpSeries> gradient;
    gradient.reserve(n);
    std::vector<ExpSeries> column(n);
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t a = 0; a < n; ++a) column[a] = hessian(a, b);
        gradient.push_back(integrate_closed_form(column, what));
    }
    ExpSeries theta = integrate_closed_form(gradient, what).without_low_degree(1);
    for (std::size_t a = 0; a < n; ++a) {
        const ExpSeries da = theta.derivative(a);
        for (std::size_t b = 0; b < n; ++b) {
            if (!(da.derivative(b) == hessian(a, b))) throw IntegrabilityError(what + " is not a Hessian");
        }
    }
    return theta;
}

/// F with  d_a d_b d_c F = third(a, b, c), all marker-0 terms of degree <= 2 dropped.
inline ExpSeries potential_from_third_derivatives(const SeriesTensor3& third) {
    const std::size_t n = third.dim();
    SeriesMatrix second(n, n, ExpSeries::zero_like(third(0, 0, 0)));
    std::vector<ExpSeries> form(n);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t a = 0; a < n; ++a) form[a] = third(a, b, c);
            second(b, c) = integrate_closed_form(form, "third-derivative tensor");
        }
    std::vector<ExpSeries> gradient;
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t b = 0; b < n; ++b) form[b] = second(b, c);
        gradient.push_back(integrate_closed_form(form, "third-derivative tensor"));
    }
    ExpSeries F = integrate_closed_form(gradient, "third-derivative tensor").without_low_degree(2);
    for (std::size_t a = 0; a < n; ++a) {
        const ExpSeries fa = F.derivative(a);
        for (std::size_t b = a; b < n; ++b) {
            const ExpSeries fab = fa.derivative(b);
            for (std::size_t c = b; c < n; ++c) {
                if (!(fab.derivative(c) == third(a, b, c))) {
                    throw IntegrabilityError("third-derivative tensor is not the third derivative of a potential");
                }
            }
        }
    }
    return F;
}

}  // namespace frobforge
