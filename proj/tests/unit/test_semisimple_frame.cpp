#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "frobforge/frame/canonical.hpp"
#include "frobforge/singularity/an.hpp"
#include "frobforge/singularity/critical.hpp"

using namespace frobforge;

namespace {

std::vector<cplx> to_cplx(const std::vector<Rational>& v) {
    std::vector<cplx> out;
    for (const auto& x : v) out.emplace_back(x.get_d(), 0.0);
    return out;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<cplx> sorted_eigenvalues(const CMatrix& m) {
    Eigen::ComplexEigenSolver<CMatrix> es(m, false);
    std::vector<cplx> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.begin(), v.end(), canonical_less);
    return v;
}

FMChart cubic_chart(long a, long b) {
    const MultiPoly t1 = MultiPoly::variable(2, 0), t2 = MultiPoly::variable(2, 1);
    const MultiPoly F = t1 * t1 * t2 * make_rational(1, 2) + t1 * t2 * t2 * make_rational(b, 2) + t2.pow(3) * make_rational(a + b * b, 6);
    RationalMatrix eta(2, 2, Rational(0));
    eta(0, 1) = eta(1, 0) = 1;
    eta(1, 1) = b;
    return FMChart(eta, ExpSeries::polynomial(F), EulerField::diagonal({Rational(1), Rational(1)}), Rational(0));
}

std::vector<Rational> random_rational_point(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
    std::vector<Rational> p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(make_rational(num(rng), den(rng)));
    return p;
}

}  // namespace

TEST_CASE("canonical coordinates in dimension one") {
    const FMChart chart(RationalMatrix(1, 1, Rational(1)), ExpSeries::polynomial(MultiPoly::variable(1, 0).pow(3) * make_rational(1, 6)),
                        EulerField::diagonal({Rational(1)}), Rational(0));
    const std::vector<cplx> t{cplx(2.5, 0)};
    const auto u = canonical_coordinates(chart, t);
    CHECK(std::abs(u(0) - cplx(2.5, 0)) < 1e-14);
    const auto fr = canonical_frame(chart, t);
    CHECK(std::abs(fr.Psi(0, 0) - cplx(1, 0)) < 1e-14);
    CHECK(std::abs(fr.V(0, 0)) < 1e-14);
}

TEST_CASE("A2 canonical coordinates at the image of s = (-3, 0)") {
    const auto b = an::build_an(2);
    const auto t = to_cplx(b.flat.t_at(std::vector<Rational>{Rational(-3), Rational(0)}));
    const auto u = canonical_coordinates(b.chart, t);
    CHECK(std::abs(u(0) - cplx(-2, 0)) < 1e-12);
    CHECK(std::abs(u(1) - cplx(2, 0)) < 1e-12);
}

TEST_CASE("constant semisimple algebra: u linear in t") {
    // e2^2 = e1: idempotents (e1 +- e2)/2, so u = t1 -+ t2
    const FMChart chart = cubic_chart(1, 0);
    const std::vector<cplx> t{cplx(0.7, 0), cplx(1.9, 0)};
    const auto u = canonical_coordinates(chart, t);
    CHECK(std::abs(u(0) - cplx(0.7 - 1.9, 0)) < 1e-13);
    CHECK(std::abs(u(1) - cplx(0.7 + 1.9, 0)) < 1e-13);
}

TEST_CASE("two orthogonal idempotents: Psi orthogonal, V constant skew") {
    // F = (x^3 + y^3)/6, eta = 1, E = t: mu = 0
    const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
    const FMChart chart(RationalMatrix::identity(2), ExpSeries::polynomial((x.pow(3) + y.pow(3)) * make_rational(1, 6)),
                        EulerField::diagonal({Rational(1), Rational(1)}), Rational(0));
    for (const auto& t : {std::vector<cplx>{1.0, 3.0}, std::vector<cplx>{-2.0, 0.5}}) {
        const auto fr = canonical_frame(chart, t);
        CHECK(max_abs(fr.Psi.transpose() * fr.Psi - CMatrix::Identity(2, 2)) < 1e-13);
        CHECK(max_abs(fr.V) < 1e-14);
    }
}

TEST_CASE("A3 frame at random rational points") {
    const auto b = an::build_an(3);
    const NumericChart nc(b.chart);
    std::mt19937 rng(2024);
    const std::vector<cplx> mu_spec{cplx(-0.25, 0), cplx(0, 0), cplx(0.25, 0)};
    for (int k = 0; k < 20; ++k) {
        const auto s = random_rational_point(rng, 3);
        const auto t = to_cplx(b.flat.t_at(s));
        const auto fr = canonical_frame(nc, t);
        CHECK(max_abs(fr.Psi.transpose() * fr.Psi - nc.eta()) < 1e-10);
        CHECK(max_abs(fr.V + fr.V.transpose()) < 1e-8);
        const auto spec = sorted_eigenvalues(fr.V);
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(spec[i] - mu_spec[i]) < 1e-8);
        // J^2 det(eta) = (prod psi)^2 from Psi^T Psi = eta
        const cplx J = fr.J();
        const cplx P = fr.psi_product();
        CHECK(std::abs(J * J * nc.eta().determinant() - P * P) < 1e-8 * std::max(1.0, std::abs(P * P)));
        const auto crit = an::critical_values(b.unfolding, s);
        const std::vector<cplx> u(fr.u.data(), fr.u.data() + 3);
        CHECK(multiset_distance(u, crit) < 1e-8);
    }
}

TEST_CASE("dt/du agrees with finite differences of u(t)") {
    const FMChart chart = an::build_an_chart(3);
    const NumericChart nc(chart);
    const std::vector<cplx> t{cplx(0.3, 0.1), cplx(-1.2, 0.4), cplx(0.8, -0.5)};
    const auto fr = canonical_frame(nc, t);
    const double h = 1e-6;
    CMatrix du_dt(3, 3);
    for (std::size_t a = 0; a < 3; ++a) {
        auto tp = t, tm = t;
        tp[a] += h;
        tm[a] -= h;
        const CVector up = canonical_coordinates(nc, tp);
        const CVector um = canonical_coordinates(nc, tm);
        du_dt.col(static_cast<Eigen::Index>(a)) = (up - um) / (2 * h);
    }
    CHECK(max_abs(du_dt * fr.dt_du - CMatrix::Identity(3, 3)) < 1e-6);
}

TEST_CASE("V_i matrices") {
    {
        CVector u(2);
        u << cplx(1, 0), cplx(-2, 1);
        CMatrix V(2, 2);
        const cplx v(0.3, -0.7);
        V << 0, v, -v, 0;
        const auto Vi = vi_matrices(u, V);
        CHECK(std::abs(Vi[0](0, 1) - v / (u(0) - u(1))) < 1e-15);
        CHECK(max_abs(Vi[0] + Vi[1]) < 1e-15);
    }
    {
        CVector u(3);
        u << cplx(0, 0), cplx(1, 0.5), cplx(2, -1);
        const auto Vi = vi_matrices(u, CMatrix::Zero(3, 3));
        for (const auto& m : Vi) CHECK(max_abs(m) < 1e-300);
    }
    const FMChart chart = an::build_an_chart(4);
    const std::vector<cplx> t{cplx(0.2, 0), cplx(1.1, 0.3), cplx(-0.4, 0), cplx(0.9, -0.2)};
    const auto fr = canonical_frame(chart, t);
    const auto Vi = vi_matrices(fr);
    const CMatrix U = fr.U();
    for (Eigen::Index i = 0; i < 4; ++i) {
        const CMatrix Ei = elementary(4, i);
        CHECK(max_abs((U * Vi[static_cast<std::size_t>(i)] - Vi[static_cast<std::size_t>(i)] * U) - (Ei * fr.V - fr.V * Ei)) < 1e-10);
        CHECK(max_abs(Vi[static_cast<std::size_t>(i)] + Vi[static_cast<std::size_t>(i)].transpose()) < 1e-10);
    }
}

TEST_CASE("caustic points are rejected") {
    const auto b = an::build_an(3);
    // double critical point: s = (-6, 8, 1)
    const auto t = to_cplx(b.flat.t_at(std::vector<Rational>{Rational(-6), Rational(8), Rational(1)}));
    CHECK_THROWS_AS(canonical_frame(b.chart, t), CausticError);
    CHECK_THROWS_AS(canonical_coordinates(b.chart, std::vector<cplx>{1.0, 2.0}), ValidationError);
}
