#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "frobforge/frame/canonical.hpp"
#include "frobforge/isomonodromy/gfunction.hpp"

namespace frobforge::desc {

/// F_1 restricted to (t, tdot):  G(t) - G(t_base) + (1/24) log det M,  M_ab = d_a d_b d_g F(t) tdot^g.
struct Genus1Value {
    std::vector<cplx> t;
    std::vector<cplx> tdot;
    CMatrix M;
    cplx log_det_M;
    iso::GValue g;  // from t_base to t
    cplx value;
};

inline Genus1Value genus1_restricted(const NumericChart& nc, const std::vector<cplx>& t_base, const std::vector<cplx>& t,
                                     const std::vector<cplx>& tdot, double tol = 1e-10) {
    const std::size_t n = nc.dim();
    if (t.size() != n || tdot.size() != n || t_base.size() != n) throw ValidationError("genus1: point and velocity must have the chart dimension");
    Genus1Value out;
    out.t = t;
    out.tdot = tdot;
    const auto c = nc.structure(t);
    CVector v(static_cast<Eigen::Index>(n));
    for (std::size_t a = 0; a < n; ++a) v(static_cast<Eigen::Index>(a)) = tdot[a];
    out.M = nc.eta() * nc.multiplication(c, v);
    const cplx det = out.M.determinant();
    double scale = 1;
    for (Eigen::Index j = 0; j < out.M.cols(); ++j) scale *= std::max(1e-300, out.M.col(j).norm());
    if (std::abs(det) <= 1e-13 * scale) throw NumericError("genus1: M(t, tdot) is singular");
    out.log_det_M = std::log(det);
    out.g = iso::g_function(nc, iso::straight_path(t_base, t), tol);
    out.value = out.g.delta_G + out.log_det_M / 24.0;
    return out;
}

inline Genus1Value genus1_restricted(const FMChart& chart, const std::vector<cplx>& t_base, const std::vector<cplx>& t,
                                     const std::vector<cplx>& tdot, double tol = 1e-10) {
    return genus1_restricted(NumericChart(chart), t_base, t, tdot, tol);
}

}  // namespace frobforge::desc
