#include <catch2/catch_amalgamated.hpp>

#include "frobforge/core/frobenius.hpp"
#include "frobforge/singularity/an.hpp"
#include "frobforge/singularity/critical.hpp"

using namespace frobforge;
using namespace frobforge::an;

namespace {

std::vector<Rational> zeros(int n) { return std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)); }

// Sylvester matrix of f and f' (coefficients in s), the classical resultant oracle.
MultiPoly resultant(const UniPoly& f, const UniPoly& g) {
    const int m = f.degree(), k = g.degree();
    const auto N = static_cast<std::size_t>(m + k);
    const std::size_t pa = f.param_arity();
    Matrix<MultiPoly> S(N, N, MultiPoly(pa));
    for (int r = 0; r < k; ++r)
        for (int i = 0; i <= m; ++i) S(static_cast<std::size_t>(r), static_cast<std::size_t>(r + i)) = f.coeff(m - i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= k; ++i) S(static_cast<std::size_t>(k + r), static_cast<std::size_t>(r + i)) = g.coeff(k - i);
    return determinant_expansion(S, MultiPoly::constant(pa, Rational(1)));
}

bool proportional(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    const auto& [e, c] = *a.terms().begin();
    const Rational ratio = b.coefficient(e) / c;
    return sgn(ratio) != 0 && a * ratio == b;
}

}  // namespace

TEST_CASE("unfolding shape") {
    const Unfolding u = make_unfolding(4);
    CHECK(u.f.degree() == 5);
    CHECK(u.f.coeff(4).is_zero());
    CHECK(u.f.leading() == MultiPoly::constant(4, Rational(1)));
    CHECK_THROWS_AS(make_unfolding(0), ValidationError);
}

TEST_CASE("residue pairing examples") {
    const Unfolding u2 = make_unfolding(2);
    const auto g = residue_pairing(u2);
    const auto s0 = zeros(2);
    CHECK(g(0, 1).evaluate(s0) == Rational(1));
    CHECK(g(0, 0).evaluate(s0) == Rational(0));
    CHECK(g(1, 1).is_zero());
    const auto g1 = residue_pairing(make_unfolding(1));
    CHECK(g1(0, 0) == MultiPoly::constant(1, Rational(1)));
}

TEST_CASE("residue triple examples and symmetry") {
    const Unfolding u2 = make_unfolding(2);
    const auto c = residue_triple(u2);
    CHECK(c(1, 1, 1).is_zero());
    CHECK(c(0, 1, 1).evaluate(zeros(2)) == Rational(1));
    for (int n : {2, 3, 4}) {
        const Unfolding u = make_unfolding(n);
        const auto t = residue_triple(u);
        const auto g = residue_pairing(u);
        const auto m = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                CHECK(t(i, j, m - 1) == g(i, j));
                for (std::size_t k = 0; k < m; ++k) CHECK(t(i, j, k) == t(k, i, j));
            }
    }
}

TEST_CASE("flat coordinates for small n") {
    const auto f1 = flat_coordinates(make_unfolding(1));
    CHECK(f1.t_of_s[0] == MultiPoly::variable(1, 0));
    const auto f2 = flat_coordinates(make_unfolding(2));
    CHECK(f2.t_of_s[0] == MultiPoly::variable(2, 1));
    CHECK(f2.t_of_s[1] == MultiPoly::variable(2, 0));
}

TEST_CASE("flat coordinates: constant Jacobian, triangular, graded") {
    for (int n = 2; n <= 5; ++n) {
        const Unfolding u = make_unfolding(n);
        const auto map = flat_coordinates(u);
        const auto m = static_cast<std::size_t>(n);
        Matrix<MultiPoly> jac(m, m, MultiPoly(m));
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t k = 0; k < m; ++k) jac(a, k) = map.t_of_s[a].derivative(k);
        const MultiPoly det = determinant_expansion(jac, MultiPoly::constant(m, Rational(1)));
        CHECK(det.is_constant());
        CHECK_FALSE(det.is_zero());
        // t^a has weight (n+2-a)/(n+1): s_k has weight (k+1)/(n+1), so every monomial has weighted degree n+2-a
        for (std::size_t a = 0; a < m; ++a) {
            for (const auto& [e, c] : map.t_of_s[a].terms()) {
                int w = 0;
                for (std::size_t k = 0; k < m; ++k) w += e[k] * static_cast<int>(k + 2);
                CHECK(w == n + 1 - static_cast<int>(a));
            }
        }
        const auto flat = push_to_flat(u, map);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                CHECK(flat.metric(a, b) == MultiPoly::constant(m, Rational(a + b + 1 == m ? 1 : 0)));
    }
}

TEST_CASE("A_n charts: potentials, WDVV, homogeneity") {
    {
        const FMChart c1 = build_an_chart(1);
        CHECK(c1.potential() == ExpSeries::polynomial(MultiPoly::variable(1, 0).pow(3) * make_rational(1, 6)));
    }
    {
        const FMChart c2 = build_an_chart(2);
        const MultiPoly t1 = MultiPoly::variable(2, 0), t2 = MultiPoly::variable(2, 1);
        // by hand: d^3F/dt2^3 = -3 res x^3/(3x^2 + s1) = -s1/3 with s1 = t2, so the quartic term is -t2^4/72
        CHECK(c2.potential() == ExpSeries::polynomial(t1 * t1 * t2 * make_rational(1, 2) + t2.pow(4) * make_rational(-1, 72)));
    }
    for (int n = 1; n <= 5; ++n) {
        const FMChart c = build_an_chart(n);
        CHECK(check_wdvv(c).passed());
        const auto ax = check_axioms(c);
        CHECK(ax.unity_ok);
        CHECK(ax.remainder.is_zero());
        CHECK(c.charge() == make_rational(n - 1, n + 1));
    }
    const FMChart c3 = build_an_chart(3);
    CHECK(c3.euler().linear(0, 0) == Rational(1));
    CHECK(c3.euler().linear(1, 1) == make_rational(3, 4));
    CHECK(c3.euler().linear(2, 2) == make_rational(1, 2));
}

TEST_CASE("A3 structure constants match the residue formula in flat coordinates") {
    const AnBuild b = build_an(3);
    const auto flat = push_to_flat(b.unfolding, b.flat);
    const SeriesTensor3 c = third_derivatives(b.chart);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) CHECK(c(i, j, k) == ExpSeries::polynomial(flat.triple(i, j, k)));
}

TEST_CASE("discriminant of A2 and A3 matches the resultant") {
    for (int n : {2, 3}) {
        const AnBuild b = build_an(n);
        const MultiPoly res = resultant(b.unfolding.f, b.unfolding.fprime).substitute(b.flat.s_of_t);
        const MultiPoly det = intersection_form(b.chart).discriminant.polynomial_part();
        CHECK(proportional(res, det));
    }
    const AnBuild b2 = build_an(2);
    const MultiPoly t1 = MultiPoly::variable(2, 0), t2 = MultiPoly::variable(2, 1);
    const MultiPoly disc = t2.pow(3) * Rational(-4) - t1 * t1 * Rational(27);
    CHECK(proportional(disc, intersection_form(b2.chart).discriminant.polynomial_part()));
}

TEST_CASE("critical values") {
    {
        const auto v = critical_values(make_unfolding(2), std::vector<Rational>{Rational(-3), Rational(0)});
        REQUIRE(v.size() == 2);
        CHECK(std::abs(v[0] - an::cplx(-2, 0)) < 1e-12);
        CHECK(std::abs(v[1] - an::cplx(2, 0)) < 1e-12);
    }
    {
        const auto v = critical_values(make_unfolding(2), std::vector<Rational>{Rational(0), make_rational(5, 3)});
        REQUIRE(v.size() == 2);
        CHECK(std::abs(v[0] - an::cplx(5.0 / 3, 0)) < 1e-12);
        CHECK(std::abs(v[1] - an::cplx(5.0 / 3, 0)) < 1e-12);
    }
    {
        const auto v = critical_values(make_unfolding(1), std::vector<Rational>{make_rational(7, 2)});
        REQUIRE(v.size() == 1);
        CHECK(std::abs(v[0] - an::cplx(3.5, 0)) < 1e-12);
    }
    CHECK_THROWS_AS(critical_values(make_unfolding(2), std::vector<Rational>{Rational(1)}), ValidationError);
}

TEST_CASE("critical values: distinct at generic points, a zero value on the discriminant") {
    const AnBuild b = build_an(3);
    const std::vector<Rational> s{make_rational(-2), make_rational(1, 3), make_rational(3, 5)};
    const auto v = critical_values(b.unfolding, s);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) CHECK(std::abs(v[i] - v[j]) > 1e-6);
    const MultiPoly det = intersection_form(b.chart).discriminant.polynomial_part();
    CHECK(sgn(det.evaluate(b.flat.t_at(s))) != 0);
    // f' = 4(x-1)^2(x+2) for s1 = -6, s2 = 8: a double critical point at x = 1 (a caustic point, det g != 0)
    const std::vector<Rational> caustic{Rational(-6), Rational(8), Rational(1)};
    CHECK(sgn(det.evaluate(b.flat.t_at(caustic))) != 0);
    const auto w = critical_values(b.unfolding, caustic);
    double mind = 1e9;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) mind = std::min(mind, std::abs(w[i] - w[j]));
    CHECK(mind < 1e-6);
    // det g is the product of the critical values up to a constant: it vanishes when one of them is 0
    const std::vector<Rational> on_disc{Rational(-6), Rational(8), Rational(-3)};
    CHECK(sgn(det.evaluate(b.flat.t_at(on_disc))) == 0);
    const auto z = critical_values(b.unfolding, on_disc);
    double minabs = 1e9;
    for (const auto& x : z) minabs = std::min(minabs, std::abs(x));
    CHECK(minabs < 1e-6);
}
