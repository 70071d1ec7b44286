#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "frobforge/error.hpp"
#include "frobforge/frame/canonical.hpp"
#include "frobforge/isomonodromy/flows.hpp"

namespace frobforge::iso {

/// G(t1) - G(t0) with G = log tau - (1/24) log J.
struct GValue {
    std::vector<cplx> t0;
    std::vector<cplx> t1;
    cplx delta_log_tau;
    cplx delta_log_J;
    cplx delta_G;
    double quadrature_error = 0;
    std::size_t samples = 0;
};

/// A path sigma in [0, 1] -> t(sigma) with velocity.
struct TPath {
    std::function<std::vector<cplx>(double)> point;
    std::function<std::vector<cplx>(double)> velocity;
};

inline TPath straight_path(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw ValidationError("path endpoints have different dimensions");
    return TPath{[a, b](double s) {
                     std::vector<cplx> p(a.size());
                     for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] + s * (b[i] - a[i]);
                     return p;
                 },
                 [a, b](double) {
                     std::vector<cplx> v(a.size());
                     for (std::size_t i = 0; i < a.size(); ++i) v[i] = b[i] - a[i];
                     return v;
                 }};
}

/// Orbit of the Euler field, t(sigma) = exp(sigma s L) t0 + (affine part), for diagonal L and
/// constant part r:  t^a(sigma) = e^{w_a s sigma} t0^a + r_a (e^{w_a s sigma} - 1)/w_a  (r_a s sigma if w_a = 0).
inline TPath euler_path(const FMChart& chart, const std::vector<cplx>& t0, double s) {
    const std::size_t n = chart.dim();
    std::vector<double> w(n), r(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && sgn(chart.euler().linear(a, b)) != 0) throw ValidationError("euler_path: linear part of E must be diagonal");
        w[a] = chart.euler().linear(a, a).get_d();
        r[a] = chart.euler().constant[a].get_d();
    }
    return TPath{[=](double sig) {
                     std::vector<cplx> p(n);
                     for (std::size_t a = 0; a < n; ++a) {
                         const double x = sig * s;
                         p[a] = w[a] == 0 ? t0[a] + r[a] * x : std::exp(w[a] * x) * t0[a] + r[a] * std::expm1(w[a] * x) / w[a];
                     }
                     return p;
                 },
                 [=](double sig) {
                     std::vector<cplx> v(n);
                     for (std::size_t a = 0; a < n; ++a) {
                         const double x = sig * s;
                         v[a] = s * (w[a] == 0 ? cplx(r[a]) : std::exp(w[a] * x) * (w[a] * t0[a] + r[a]));
                     }
                     return v;
                 }};
}

namespace detail {

// sum_i H_i du_i / dsigma at one point of the path, V read off the chart's frame.
inline cplx tau_density(const NumericChart& nc, const TPath& path, double sig) {
    const auto t = path.point(sig);
    const auto tv = path.velocity(sig);
    const CanonicalFrame fr = canonical_frame(nc, t);
    CVector dt(static_cast<Eigen::Index>(tv.size()));
    for (std::size_t a = 0; a < tv.size(); ++a) dt(static_cast<Eigen::Index>(a)) = tv[a];
    const CVector du = fr.dt_du.partialPivLu().solve(dt);
    const auto H = hamiltonians(fr.u, fr.V);
    cplx acc = 0;
    for (std::size_t i = 0; i < H.size(); ++i) acc += H[i] * du(static_cast<Eigen::Index>(i));
    return acc;
}

// Bisection on 31-point Gauss-Kronrod panels, stopping on err <= tol * max(1, |I|). Boost's own
// adaptive driver uses a purely relative test and recurses to full depth on an identically zero
// integrand (which is the generic case along the unity direction).
template <class F>
cplx adaptive_gk(F& f, double a, double b, double tol, int depth, double& err) {
    namespace quad = boost::math::quadrature;
    double e = 0;
    const cplx v = quad::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &e);
    if (depth == 0 || e <= tol * std::max(1.0, std::abs(v))) {
        err += e;
        return v;
    }
    const double m = 0.5 * (a + b);
    return adaptive_gk(f, a, m, 0.5 * tol, depth - 1, err) + adaptive_gk(f, m, b, 0.5 * tol, depth - 1, err);
}

inline cplx j_squared(const NumericChart& nc, const std::vector<cplx>& t) {
    const cplx J = canonical_frame(nc, t).J();
    return J * J;
}

}  // namespace detail

/// Chart-driven G difference along a path. V is recomputed from frames (not integrated); log tau is
/// the integral of the closed 1-form, log J is continued by small steps of J^2, which is independent
/// of the ordering and sign conventions of the frame.
inline GValue g_function(const NumericChart& nc, const TPath& path, double tol = 1e-10, std::size_t j_steps = 256) {
    GValue out;
    out.t0 = path.point(0.0);
    out.t1 = path.point(1.0);
    auto f = [&](double s) { return detail::tau_density(nc, path, s); };
    double err = 0;
    out.delta_log_tau = detail::adaptive_gk(f, 0.0, 1.0, tol, 15, err);
    out.quadrature_error = err;

    cplx acc = 0;
    cplx prev = detail::j_squared(nc, out.t0);
    for (std::size_t k = 1; k <= j_steps; ++k) {
        const cplx cur = detail::j_squared(nc, path.point(static_cast<double>(k) / static_cast<double>(j_steps)));
        const cplx ratio = cur / prev;
        if (std::abs(std::arg(ratio)) > 0.5) throw NumericError("g_function: J^2 varies too fast to track its branch");
        acc += std::log(ratio);
        prev = cur;
    }
    out.samples = j_steps + 1;
    out.delta_log_J = 0.5 * acc;
    out.delta_G = out.delta_log_tau - out.delta_log_J / 24.0;
    return out;
}

inline GValue g_function(const FMChart& chart, const std::vector<cplx>& t0, const std::vector<cplx>& t1, double tol = 1e-10) {
    return g_function(NumericChart(chart), straight_path(t0, t1), tol);
}

/// Sum of G differences along a polyline t_0 -> t_1 -> ... -> t_k.
inline GValue g_function_polyline(const NumericChart& nc, const std::vector<std::vector<cplx>>& pts, double tol = 1e-10) {
    if (pts.size() < 2) throw ValidationError("g_function: polyline needs at least two points");
    GValue total;
    total.t0 = pts.front();
    total.t1 = pts.back();
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const GValue g = g_function(nc, straight_path(pts[k], pts[k + 1]), tol);
        total.delta_log_tau += g.delta_log_tau;
        total.delta_log_J += g.delta_log_J;
        total.delta_G += g.delta_G;
        total.quadrature_error += g.quadrature_error;
        total.samples += g.samples;
    }
    return total;
}

/// Lie_E G at t0, measured as (G(exp(sE) t0) - G(t0)) / s along the Euler orbit.
inline cplx lie_euler_g(const FMChart& chart, const NumericChart& nc, const std::vector<cplx>& t0, double s = 0.5, double tol = 1e-10) {
    return g_function(nc, euler_path(chart, t0, s), tol).delta_G / s;
}

/// -1/4 tr mu^2 - (tr L - n)/24: what Lie_E G should come to for a diagonal Euler field.
inline double lie_euler_g_prediction(const FMChart& chart) {
    const RationalMatrix mu = mu_matrix(chart);
    Rational trmu2(0), trL(0);
    const RationalMatrix mu2 = mu * mu;
    for (std::size_t i = 0; i < chart.dim(); ++i) {
        trmu2 += mu2(i, i);
        trL += chart.euler().linear(i, i);
    }
    const Rational v = -trmu2 / 4 - (trL - Rational(static_cast<long>(chart.dim()))) / 24;
    return v.get_d();
}

}  // namespace frobforge::iso
