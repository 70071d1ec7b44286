#include <catch2/catch_amalgamated.hpp>

#include "frobforge/core/deformed_flat.hpp"
#include "frobforge/core/frobenius.hpp"
#include "frobforge/singularity/an.hpp"

using namespace frobforge;

namespace {

MultiPoly var(std::size_t n, std::size_t i) { return MultiPoly::variable(n, i); }

RationalMatrix antidiagonal(std::size_t n) {
    RationalMatrix eta(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) eta(i, n - 1 - i) = 1;
    return eta;
}

FMChart poly_chart(RationalMatrix eta, const MultiPoly& F, std::vector<Rational> weights, Rational d) {
    return FMChart(std::move(eta), ExpSeries::polynomial(F), EulerField::diagonal(weights), std::move(d));
}

// e2^2 = a e1 + b e2, eps(e1) = 0, eps(e2) = 1
FMChart cubic_chart(long a, long b) {
    const MultiPoly t1 = var(2, 0);
    const MultiPoly t2 = var(2, 1);
    const MultiPoly F = t1 * t1 * t2 * make_rational(1, 2) + t1 * t2 * t2 * make_rational(b, 2) +
                        t2.pow(3) * make_rational(a + b * b, 6);
    RationalMatrix eta(2, 2, Rational(0));
    eta(0, 1) = eta(1, 0) = 1;
    eta(1, 1) = b;
    return poly_chart(eta, F, {Rational(1), Rational(1)}, Rational(0));
}

FMChart one_dim_chart() {
    RationalMatrix eta(1, 1, Rational(1));
    return poly_chart(eta, var(1, 0).pow(3) * make_rational(1, 6), {Rational(1)}, Rational(0));
}

}  // namespace

TEST_CASE("structure constants of the nilpotent rank-2 cubic") {
    const FMChart chart = poly_chart(antidiagonal(2), var(2, 0) * var(2, 0) * var(2, 1) * make_rational(1, 2),
                                     {Rational(1), Rational(0)}, Rational(1));
    const SeriesTensor3 c = structure_constants(chart);
    CHECK(c(0, 0, 0) == chart.constant(Rational(1)));
    CHECK(c(0, 1, 1) == chart.constant(Rational(1)));
    CHECK(c(1, 1, 0).is_zero());
    CHECK(c(1, 1, 1).is_zero());
    CHECK(c(0, 0, 1).is_zero());
}

TEST_CASE("one-dimensional potential t^3/6 has constant structure constant 1") {
    // third derivative of t^3/6 is the constant 1
    const FMChart chart = one_dim_chart();
    CHECK(structure_constants(chart)(0, 0, 0) == chart.constant(Rational(1)));
}

TEST_CASE("wdvv holds for cubics and in dimension two") {
    CHECK(check_wdvv(cubic_chart(1, 0)).passed());
    CHECK(check_wdvv(cubic_chart(-3, 2)).passed());
    const MultiPoly F = var(2, 0) * var(2, 0) * var(2, 1) * make_rational(1, 2) + var(2, 1).pow(5);
    const auto rep = check_wdvv(poly_chart(antidiagonal(2), F, {Rational(1), Rational(1, 3)}, Rational(1, 3)));
    CHECK(rep.passed());
    CHECK_FALSE(rep.truncated);
}

TEST_CASE("wdvv detects a non-associative potential") {
    const std::size_t n = 3;
    const MultiPoly t1 = var(n, 0), t2 = var(n, 1), t3 = var(n, 2);
    const MultiPoly F = t1 * t1 * t3 * make_rational(1, 2) + t1 * t2 * t2 * make_rational(1, 2) + t2 * t2 * t3 * t3;
    const auto rep = check_wdvv(poly_chart(antidiagonal(3), F, {Rational(1), Rational(1, 2), Rational(0)}, Rational(1)));
    CHECK_FALSE(rep.passed());
    CHECK(rep.nonzero > 0);
}

TEST_CASE("axioms: trivial cubic and A3") {
    const auto rep = check_axioms(cubic_chart(1, 0));
    CHECK(rep.unity_ok);
    CHECK(rep.quasihomogeneous);
    CHECK_FALSE(rep.note.empty());

    const FMChart a3 = an::build_an_chart(3);
    CHECK(a3.charge() == make_rational(1, 2));
    const auto rep3 = check_axioms(a3);
    CHECK(rep3.passed());
    CHECK(rep3.remainder.is_zero());
}

TEST_CASE("axioms: wrong unity is reported") {
    const MultiPoly F = var(2, 0) * var(2, 0) * var(2, 1) * make_rational(1, 2);
    const FMChart chart(antidiagonal(2), ExpSeries::polynomial(F), EulerField::diagonal({Rational(1), Rational(0)}),
                        Rational(1), 1);
    const auto rep = check_axioms(chart);
    CHECK_FALSE(rep.unity_ok);
    CHECK_FALSE(rep.unity_failures.empty());
}

TEST_CASE("chart validation") {
    RationalMatrix bad(2, 2, Rational(0));
    bad(0, 1) = 1;
    CHECK_THROWS_AS(FMChart(bad, ExpSeries(2), EulerField::diagonal({Rational(1), Rational(1)}), Rational(0)), SchemaError);
    CHECK_THROWS_AS(FMChart(RationalMatrix(2, 2, Rational(0)), ExpSeries(2), EulerField::diagonal({Rational(1), Rational(1)}), Rational(0)),
                    SchemaError);
    CHECK_THROWS_AS(FMChart(antidiagonal(2), ExpSeries(3), EulerField::diagonal({Rational(1), Rational(1)}), Rational(0)), SchemaError);
}

TEST_CASE("deformed flat coordinates: order 0 and 1") {
    const FMChart chart = an::build_an_chart(3);
    const auto dfs = deformed_flat_coordinates(chart, 2);
    const SeriesMatrix id = constant_series_matrix(RationalMatrix::identity(3), chart.zero());
    CHECK(dfs.Theta[0] == id);
    for (std::size_t l = 0; l < 3; ++l) {
        CHECK(dfs.coordinate(l, 1) == chart.potential().derivative(l).without_low_degree(1));
    }
}

TEST_CASE("deformed flat coordinates of a constant algebra") {
    // theta_{l,p} = eta(e_l, t^{p+1}) / (p+1)!  with powers in the constant algebra e2^2 = a e1 + b e2
    const long a = 2, b = 1;
    const FMChart chart = cubic_chart(a, b);
    const int P = 5;
    const auto dfs = deformed_flat_coordinates(chart, P);
    const MultiPoly t1 = var(2, 0), t2 = var(2, 1);
    // element x = x1 e1 + x2 e2; product with t = t1 e1 + t2 e2
    MultiPoly x1 = t1, x2 = t2;
    Rational fact(1);
    for (int p = 0; p <= P; ++p) {
        fact *= p + 1;
        // eta(e1, x) = x2, eta(e2, x) = x1 + b x2
        const MultiPoly th1 = x2 * (Rational(1) / fact);
        const MultiPoly th2 = (x1 + x2 * Rational(b)) * (Rational(1) / fact);
        const int deg = p + 1;
        CHECK(dfs.coordinate(0, p) == ExpSeries::polynomial(th1));
        CHECK(dfs.coordinate(1, p) == ExpSeries::polynomial(th2));
        CHECK(th2.total_degree() == deg);
        const MultiPoly y1 = x1 * t1 + x2 * t2 * Rational(a);
        const MultiPoly y2 = x1 * t2 + x2 * t1 + x2 * t2 * Rational(b);
        x1 = y1;
        x2 = y2;
    }
}

TEST_CASE("deformed flat coordinates satisfy the orthogonality relation") {
    for (int n : {2, 3, 4}) {
        const FMChart chart = an::build_an_chart(n);
        const auto dfs = deformed_flat_coordinates(chart, 4);
        for (const auto& r : orthogonality_residuals(dfs, chart)) CHECK(is_zero_matrix(r));
    }
    const auto dfs = deformed_flat_coordinates(cubic_chart(1, 3), 6);
    for (const auto& r : orthogonality_residuals(dfs, cubic_chart(1, 3))) CHECK(is_zero_matrix(r));
}

TEST_CASE("intersection form in one dimension") {
    const auto g = intersection_form(one_dim_chart());
    CHECK(g.g(0, 0) == ExpSeries::polynomial(var(1, 0)));
    CHECK(g.discriminant == ExpSeries::polynomial(var(1, 0)));
}

TEST_CASE("intersection form of a semisimple cubic is linear and symmetric") {
    const FMChart chart = cubic_chart(1, 0);
    const auto g = intersection_form(chart);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(g.g(i, j).polynomial_part().total_degree() <= 1);
            CHECK(g.g(i, j) == g.g(j, i));
        }
}

TEST_CASE("intersection form reduces to the inverse metric where E = e") {
    for (int n : {2, 3, 4}) {
        const FMChart chart = an::build_an_chart(n);
        const auto g = intersection_form(chart);
        // E = sum w_a t^a d_a with w_1 = 1: E = e at t = (1, 0, ..., 0)
        std::vector<Rational> pt(static_cast<std::size_t>(n), Rational(0));
        pt[0] = 1;
        for (std::size_t a = 0; a < chart.dim(); ++a)
            for (std::size_t b = 0; b < chart.dim(); ++b)
                CHECK(g.g(a, b).polynomial_part().evaluate(pt) == chart.eta_inverse()(a, b));
    }
}

TEST_CASE("central charge") {
    CHECK(virasoro_central_charge(an::build_an_chart(2)) == Rational(24));
    CHECK(virasoro_central_charge(an::build_an_chart(3)) == Rational(60));
    CHECK(virasoro_central_charge(one_dim_chart()) == Rational(6));
    for (long n = 2; n <= 5; ++n) {
        const Rational rho2 = make_rational(n * (n + 1) * (n + 2), 12);
        CHECK(virasoro_central_charge(an::build_an_chart(static_cast<int>(n))) == 12 * rho2);
    }
    const FMChart d1 = poly_chart(antidiagonal(2), var(2, 0) * var(2, 0) * var(2, 1) * make_rational(1, 2),
                                  {Rational(1), Rational(0)}, Rational(1));
    CHECK_THROWS_AS(virasoro_central_charge(d1), AlgebraError);
}
