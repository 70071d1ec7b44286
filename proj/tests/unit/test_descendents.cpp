#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "frobforge/core/frobenius.hpp"
#include "frobforge/descendents/genus1.hpp"
#include "frobforge/descendents/hierarchy.hpp"
#include "frobforge/descendents/omega.hpp"
#include "frobforge/quantum/p2.hpp"
#include "frobforge/singularity/an.hpp"

using namespace frobforge;
using namespace frobforge::desc;

namespace {

FMChart cubic_1d() {
    return FMChart(RationalMatrix(1, 1, Rational(1)), ExpSeries::polynomial(MultiPoly::variable(1, 0).pow(3) * make_rational(1, 6)),
                   EulerField::diagonal({Rational(1)}), Rational(0));
}

Rational factorial(int k) {
    Rational r(1);
    for (int i = 2; i <= k; ++i) r *= i;
    return r;
}

std::vector<FMChart> criterion_charts() { return {an::build_an_chart(2), an::build_an_chart(3), qh::build_p2_chart(3).chart}; }

}  // namespace

TEST_CASE("Omega for the one-dimensional cubic: (e^{(z+w)t} - 1)/(z+w)") {
    const FMChart chart = cubic_1d();
    const auto tab = omega_table(chart, 4);
    const MultiPoly t = MultiPoly::variable(1, 0);
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q <= 4; ++q) {
            const MultiPoly expect = t.pow(static_cast<unsigned>(p + q + 1)) * (Rational(1) / (factorial(p) * factorial(q) * (p + q + 1)));
            CHECK(tab(0, p, 0, q) == ExpSeries::polynomial(expect));
        }
    CHECK(tab(0, 1, 0, 0) == ExpSeries::polynomial(t * t * make_rational(1, 2)));
}

TEST_CASE("Omega at lowest order is the Hessian of F") {
    for (const auto& chart : criterion_charts()) {
        const auto tab = omega_table(chart, 2);
        for (std::size_t a = 0; a < chart.dim(); ++a)
            for (std::size_t b = 0; b < chart.dim(); ++b) CHECK(tab(a, 0, b, 0) == chart.potential().derivative(a).derivative(b));
        CHECK(omega_symmetric(tab));
    }
}

TEST_CASE("Omega_{a,p;b,0} = d_b theta_{a,p+1}") {
    const FMChart chart = an::build_an_chart(3);
    const auto dfs = deformed_flat_coordinates(chart, 4);
    const auto tab = omega_table(chart, dfs, 3);
    for (int p = 0; p <= 3; ++p)
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) CHECK(tab(a, p, b, 0) == dfs.coordinate(a, p + 1).derivative(b));
}

TEST_CASE("orthogonality through order 6 and exact (z+w)-division") {
    for (const auto& chart : criterion_charts()) {
        const auto dfs = deformed_flat_coordinates(chart, 6);
        for (const auto& r : orthogonality_residuals(dfs, chart)) CHECK(is_zero_matrix(r));
        const auto tab = omega_table(chart, dfs, 5);
        CHECK(omega_symmetric(tab));
    }
}

TEST_CASE("broken orthogonality is reported by the division") {
    const FMChart chart = an::build_an_chart(2);
    auto dfs = deformed_flat_coordinates(chart, 3);
    dfs.Theta[2](0, 1) += ExpSeries::polynomial(MultiPoly::variable(2, 0));
    CHECK_THROWS_AS(omega_table(chart, dfs, 2), AlgebraError);
    CHECK_THROWS_AS(omega_table(chart, dfs, 3), ValidationError);
}

TEST_CASE("hierarchy flows at p = 0 are multiplications") {
    for (int n : {2, 3}) {
        const FMChart chart = an::build_an_chart(n);
        const auto c = structure_constants(chart);
        const auto dfs = deformed_flat_coordinates(chart, 1);
        const auto id = hierarchy_flow(chart, dfs, chart.unity_index(), 0);
        CHECK(id.A == constant_series_matrix(RationalMatrix::identity(chart.dim()), chart.zero()));
        for (std::size_t a = 0; a < chart.dim(); ++a) {
            const auto f = hierarchy_flow(chart, dfs, a, 0);
            for (std::size_t g = 0; g < chart.dim(); ++g)
                for (std::size_t e = 0; e < chart.dim(); ++e) CHECK(f.A(g, e) == c(a, e, g));
        }
    }
    // n = 1, F = t^3/6: the (1,1) flow is t_T = t t_X
    const auto f = hierarchy_flow(cubic_1d(), 0, 1);
    CHECK(f.A(0, 0) == ExpSeries::polynomial(MultiPoly::variable(1, 0)));
}

TEST_CASE("flow matrix equals eta^{-1} Hess Omega_{a,p+1;1,0}") {
    const FMChart chart = an::build_an_chart(3);
    const auto dfs = deformed_flat_coordinates(chart, 4);
    const auto tab = omega_table(chart, dfs, 3);
    const RationalMatrix& ei = chart.eta_inverse();
    const std::size_t one = chart.unity_index();
    for (int p = 0; p <= 2; ++p)
        for (std::size_t a = 0; a < 3; ++a) {
            const auto f = hierarchy_flow(chart, dfs, a, p);
            for (std::size_t g = 0; g < 3; ++g)
                for (std::size_t e = 0; e < 3; ++e) {
                    ExpSeries acc = chart.zero();
                    for (std::size_t b = 0; b < 3; ++b)
                        if (sgn(ei(g, b)) != 0) acc += tab(a, p + 1, one, 0).derivative(b).derivative(e) * ei(g, b);
                    CHECK(f.A(g, e) == acc);
                }
        }
}

TEST_CASE("A2 flows with p <= 2 commute") {
    const FMChart chart = an::build_an_chart(2);
    const auto dfs = deformed_flat_coordinates(chart, 3);
    std::vector<HierarchyFlow> flows;
    for (std::size_t a = 0; a < 2; ++a)
        for (int p = 0; p <= 2; ++p) flows.push_back(hierarchy_flow(chart, dfs, a, p));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(-2, 2);
    for (std::size_t i = 0; i < flows.size(); ++i)
        for (std::size_t j = i + 1; j < flows.size(); ++j) {
            const auto com = flow_commutator(chart, flows[i].A, flows[j].A);
            CHECK(com.vanishes());
            for (int k = 0; k < 20; ++k) {
                std::vector<cplx> t{{d(rng), d(rng)}, {d(rng), d(rng)}}, tx{{d(rng), d(rng)}, {d(rng), d(rng)}}, txx{{d(rng), d(rng)}, {d(rng), d(rng)}};
                for (auto v : com.evaluate(t, tx, txx)) CHECK(std::abs(v) < 1e-9);
            }
        }
    // a non-hierarchy field does not commute with the (2,1) flow
    SeriesMatrix B(2, 2, chart.zero());
    B(0, 0) = ExpSeries::polynomial(MultiPoly::variable(2, 0));
    B(1, 1) = ExpSeries::polynomial(MultiPoly::variable(2, 1) * MultiPoly::variable(2, 1));
    CHECK_FALSE(flow_commutator(chart, flows[4].A, B).vanishes());
}

TEST_CASE("restricted genus-1 expression") {
    {
        const FMChart chart = cubic_1d();
        const std::vector<cplx> t0{cplx(1.0)}, t{cplx(2.0)}, v{cplx(3.0)};
        const auto g = genus1_restricted(chart, t0, t, v);
        CHECK(std::abs(g.M(0, 0) - cplx(3.0)) < 1e-15);
        CHECK(std::abs(g.value - std::log(3.0) / 24.0) < 1e-12);
    }
    const FMChart chart = an::build_an_chart(3);
    const NumericChart nc(chart);
    const std::vector<cplx> base{cplx(0.3, 0.1), cplx(-1.2, 0.4), cplx(0.8, -0.5)};
    const std::vector<cplx> t{cplx(0.1, 0.3), cplx(-0.8, 0.9), cplx(1.1, -0.2)};
    std::vector<cplx> e(3, cplx(0));
    e[chart.unity_index()] = 1;
    const auto ge = genus1_restricted(nc, base, t, e);
    CHECK((ge.M - nc.eta()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(ge.log_det_M - std::log(nc.eta().determinant())) < 1e-14);
    CHECK(std::abs(ge.value - ge.g.delta_G - ge.log_det_M / 24.0) < 1e-15);

    const std::vector<cplx> tdot{cplx(0.4, -0.1), cplx(1.3, 0.2), cplx(-0.7, 0.5)};
    const auto g1 = genus1_restricted(nc, base, t, tdot);
    std::vector<cplx> scaled = tdot;
    const double lambda = 2.5;
    for (auto& x : scaled) x *= lambda;
    const auto g2 = genus1_restricted(nc, base, t, scaled);
    CHECK(std::abs(g2.value - g1.value - 3.0 / 24.0 * std::log(lambda)) < 1e-12);
    CHECK(std::isfinite(g1.value.real()));
    CHECK_THROWS_AS(genus1_restricted(nc, base, t, std::vector<cplx>(3, cplx(0))), NumericError);
}
