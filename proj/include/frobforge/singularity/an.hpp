#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "frobforge/core/chart.hpp"
#include "frobforge/core/integrate.hpp"
#include "frobforge/error.hpp"
#include "frobforge/exact/laurent.hpp"

namespace frobforge::an {

/// f_s(x) = x^{n+1} + s_1 x^{n-1} + ... + s_n; parameter s_k is variable k-1.
struct Unfolding {
    int n = 0;
    UniPoly f;
    UniPoly fprime;

    /// d f / d s_i = x^{n-i}  (i is 1-based).
    UniPoly parameter_derivative(int i) const { return f.parameter_derivative(static_cast<std::size_t>(i - 1)); }
};

inline Unfolding make_unfolding(int n) {
    if (n < 1) throw ValidationError("A_n unfolding: n must be >= 1");
    const auto pa = static_cast<std::size_t>(n);
    std::vector<MultiPoly> coeffs(static_cast<std::size_t>(n) + 2, MultiPoly(pa));
    coeffs[static_cast<std::size_t>(n) + 1] = MultiPoly::constant(pa, Rational(1));
    for (int k = 1; k <= n; ++k) coeffs[static_cast<std::size_t>(n - k)] += MultiPoly::variable(pa, static_cast<std::size_t>(k - 1));
    Unfolding u;
    u.n = n;
    u.f = UniPoly(pa, std::move(coeffs));
    u.fprime = u.f.derivative();
    return u;
}

/// Symmetric rank-3 polynomial tensor, index order (i, j, k), 0-based.
class PolyTensor3 {
public:
    PolyTensor3(std::size_t n, std::size_t arity) : n_(n), data_(n * n * n, MultiPoly(arity)) {}
    std::size_t dim() const { return n_; }
    MultiPoly& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
    const MultiPoly& operator()(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * n_ + j) * n_ + k]; }

private:
    std::size_t n_;
    std::vector<MultiPoly> data_;
};

namespace detail {
inline MultiPoly scaled_residue(const Unfolding& u, const UniPoly& num) {
    const MultiPoly r = residue_at_infinity(num, u.fprime, residue_order_needed(num, u.fprime));
    return r * Rational(-(u.n + 1));
}
}  // namespace detail

/// <d_{s_i}, d_{s_j}> = -(n+1) res_{x=inf} f_{s_i} f_{s_j} / f'_s.
inline Matrix<MultiPoly> residue_pairing(const Unfolding& u) {
    const auto n = static_cast<std::size_t>(u.n);
    Matrix<MultiPoly> g(n, n, MultiPoly(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const UniPoly num = u.parameter_derivative(static_cast<int>(i) + 1) * u.parameter_derivative(static_cast<int>(j) + 1);
            g(i, j) = g(j, i) = detail::scaled_residue(u, num);
        }
    return g;
}

/// <d_{s_i} . d_{s_j}, d_{s_k}> = -(n+1) res_{x=inf} f_{s_i} f_{s_j} f_{s_k} / f'_s.
inline PolyTensor3 residue_triple(const Unfolding& u) {
    const auto n = static_cast<std::size_t>(u.n);
    PolyTensor3 c(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) {
                const UniPoly num = u.parameter_derivative(static_cast<int>(i) + 1) *
                                    u.parameter_derivative(static_cast<int>(j) + 1) *
                                    u.parameter_derivative(static_cast<int>(k) + 1);
                const MultiPoly v = detail::scaled_residue(u, num);
                c(i, j, k) = c(i, k, j) = c(j, i, k) = c(j, k, i) = c(k, i, j) = c(k, j, i) = v;
            }
    return c;
}

/// Flat coordinates t^a(s) and the inverse s_k(t), both polynomial.
///
/// Ordering: t^1 is the unity coordinate (paired with s_n), t^a corresponds to s_{n+1-a}.
struct FlatCoordinateMap {
    int n = 0;
    std::vector<MultiPoly> t_of_s;  // t_of_s[a] = t^{a+1}(s), arity n in s
    std::vector<MultiPoly> s_of_t;  // s_of_t[k] = s_{k+1}(t), arity n in t

    /// J(k, a) = d s_{k+1} / d t^{a+1}.
    Matrix<MultiPoly> jacobian_s_by_t() const {
        const auto m = static_cast<std::size_t>(n);
        Matrix<MultiPoly> J(m, m, MultiPoly(m));
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t a = 0; a < m; ++a) J(k, a) = s_of_t[k].derivative(a);
        return J;
    }

    std::vector<Rational> s_at(std::span<const Rational> t) const {
        std::vector<Rational> s;
        for (const auto& p : s_of_t) s.push_back(p.evaluate(t));
        return s;
    }
    std::vector<Rational> t_at(std::span<const Rational> s) const {
        std::vector<Rational> t;
        for (const auto& p : t_of_s) t.push_back(p.evaluate(s));
        return t;
    }
};

/// Expands the branch x(k) of k^{n+1} = f_s(x) at infinity, x = k - a_1/k - ... - a_n/k^n, and takes
/// tau_j = (n+1) a_j(s) = s_j + (terms in s_1..s_{j-1}) as the flat coordinate of weight j+1.
inline FlatCoordinateMap flat_coordinates(const Unfolding& u) {
    const int n = u.n;
    const auto m = static_cast<std::size_t>(n);
    const PuiseuxExpansion x = puiseux_root_expansion(u.f, n + 1);
    std::vector<MultiPoly> tau;  // tau[j-1]
    for (int j = 1; j <= n; ++j) tau.push_back(x.a(j) * Rational(n + 1));

    FlatCoordinateMap map;
    map.n = n;
    for (std::size_t a = 0; a < m; ++a) map.t_of_s.push_back(tau[m - 1 - a]);

    // tau_j - s_j depends on s_1..s_{j-1} only; invert by forward substitution.
    std::vector<MultiPoly> images(m, MultiPoly(m));
    for (std::size_t j = 0; j < m; ++j) {
        MultiPoly rest = tau[j] - MultiPoly::variable(m, j);
        for (const auto& [e, c] : rest.terms()) {
            for (std::size_t i = j; i < m; ++i) {
                if (e[i] != 0) throw AlgebraError("flat_coordinates: expansion coefficient is not triangular in s");
            }
        }
        const MultiPoly t_var = MultiPoly::variable(m, m - 1 - j);
        images[j] = t_var - rest.substitute(images);
        map.s_of_t.push_back(images[j]);
    }
    for (std::size_t a = 0; a < m; ++a) {
        if (!(map.t_of_s[a].substitute(map.s_of_t) == MultiPoly::variable(m, a))) {
            throw AlgebraError("flat_coordinates: inverse map check failed");
        }
    }
    return map;
}

/// Metric and triple tensor rewritten in flat coordinates (entries are polynomials in t).
struct FlatFrameTensors {
    Matrix<MultiPoly> metric;
    PolyTensor3 triple;
};

inline FlatFrameTensors push_to_flat(const Unfolding& u, const FlatCoordinateMap& map) {
    const auto m = static_cast<std::size_t>(u.n);
    const Matrix<MultiPoly> gs = residue_pairing(u);
    const PolyTensor3 cs = residue_triple(u);
    const Matrix<MultiPoly> J = map.jacobian_s_by_t();

    Matrix<MultiPoly> gs_t(m, m, MultiPoly(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) gs_t(i, j) = gs_t(j, i) = gs(i, j).substitute(map.s_of_t);
    PolyTensor3 cs_t(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
            for (std::size_t k = j; k < m; ++k) {
                const MultiPoly v = cs(i, j, k).substitute(map.s_of_t);
                cs_t(i, j, k) = cs_t(i, k, j) = cs_t(j, i, k) = cs_t(j, k, i) = cs_t(k, i, j) = cs_t(k, j, i) = v;
            }

    FlatFrameTensors out{Matrix<MultiPoly>(m, m, MultiPoly(m)), PolyTensor3(m, m)};
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) {
            MultiPoly acc(m);
            for (std::size_t i = 0; i < m; ++i) {
                if (J(i, a).is_zero()) continue;
                for (std::size_t j = 0; j < m; ++j) {
                    if (J(j, b).is_zero() || gs_t(i, j).is_zero()) continue;
                    acc += J(i, a) * J(j, b) * gs_t(i, j);
                }
            }
            out.metric(a, b) = out.metric(b, a) = acc;
        }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b)
            for (std::size_t c = b; c < m; ++c) {
                MultiPoly acc(m);
                for (std::size_t i = 0; i < m; ++i) {
                    if (J(i, a).is_zero()) continue;
                    for (std::size_t j = 0; j < m; ++j) {
                        if (J(j, b).is_zero()) continue;
                        const MultiPoly jij = J(i, a) * J(j, b);
                        for (std::size_t k = 0; k < m; ++k) {
                            if (J(k, c).is_zero() || cs_t(i, j, k).is_zero()) continue;
                            acc += jij * J(k, c) * cs_t(i, j, k);
                        }
                    }
                }
                auto& t = out.triple;
                t(a, b, c) = t(a, c, b) = t(b, a, c) = t(b, c, a) = t(c, a, b) = t(c, b, a) = acc;
            }
    return out;
}

/// Everything produced on the way to the A_n chart.
struct AnBuild {
    Unfolding unfolding;
    FlatCoordinateMap flat;
    FMChart chart;
};

inline AnBuild build_an(int n) {
    if (n < 1) throw ValidationError("build_an_chart: n must be >= 1");
    Unfolding u = make_unfolding(n);
    FlatCoordinateMap map = flat_coordinates(u);
    const FlatFrameTensors flat = push_to_flat(u, map);
    const auto m = static_cast<std::size_t>(n);

    RationalMatrix eta(m, m, Rational(0));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            const MultiPoly& g = flat.metric(a, b);
            if (!g.is_constant()) throw AlgebraError("build_an_chart: metric is not constant in flat coordinates");
            eta(a, b) = g.constant_term();
        }

    SeriesTensor3 third(m, ExpSeries(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < m; ++c) third(a, b, c) = ExpSeries::polynomial(flat.triple(a, b, c));
    ExpSeries F = potential_from_third_derivatives(third);

    std::vector<Rational> weights;
    for (int a = 1; a <= n; ++a) weights.push_back(Rational(n + 2 - a, n + 1));
    Rational d(n - 1, n + 1);
    d.canonicalize();
    for (auto& w : weights) w.canonicalize();
    FMChart chart(std::move(eta), std::move(F), EulerField::diagonal(weights), d, 0);
    return AnBuild{std::move(u), std::move(map), std::move(chart)};
}

inline FMChart build_an_chart(int n) { return build_an(n).chart; }

}  // namespace frobforge::an
