#pragma once

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "frobforge/error.hpp"
#include "frobforge/frame/canonical.hpp"

namespace frobforge::iso {

/// (u, V) with V skew, stored as its strict upper triangle (row-major pairs j < k).
struct State {
    CVector u;
    std::vector<cplx> upper;

    std::size_t dim() const { return static_cast<std::size_t>(u.size()); }

    CMatrix V() const {
        const auto n = u.size();
        CMatrix m = CMatrix::Zero(n, n);
        std::size_t p = 0;
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = j + 1; k < n; ++k) {
                m(j, k) = upper[p];
                m(k, j) = -upper[p];
                ++p;
            }
        return m;
    }

    /// Takes the upper triangle; V must be skew within skew_tol (relative to its size).
    static State from(const CVector& u, const CMatrix& V, double skew_tol = 1e-9) {
        const auto n = u.size();
        if (V.rows() != n || V.cols() != n) throw ValidationError("isomonodromy state: V must be n x n");
        const double scale = std::max(1.0, V.cwiseAbs().maxCoeff());
        if ((V + V.transpose()).cwiseAbs().maxCoeff() > skew_tol * scale) throw ValidationError("isomonodromy state: V is not skew");
        State s{u, {}};
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = j + 1; k < n; ++k) s.upper.push_back(V(j, k));
        return s;
    }
};

namespace detail {
inline void check_distinct(const CVector& u) {
    for (Eigen::Index i = 0; i < u.size(); ++i)
        for (Eigen::Index j = i + 1; j < u.size(); ++j)
            if (u(i) == u(j)) throw CausticError("coincident canonical coordinates u_" + std::to_string(i + 1) + " = u_" + std::to_string(j + 1));
}
}  // namespace detail

/// H_i = 1/2 sum_{j != i} V_ij^2 / (u_i - u_j).
inline std::vector<cplx> hamiltonians(const CVector& u, const CMatrix& V) {
    detail::check_distinct(u);
    const auto n = u.size();
    std::vector<cplx> H(static_cast<std::size_t>(n), cplx(0));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) H[static_cast<std::size_t>(i)] += 0.5 * V(i, j) * V(i, j) / (u(i) - u(j));
    return H;
}

inline std::vector<cplx> hamiltonians(const State& s) { return hamiltonians(s.u, s.V()); }

/// d_i V = [V_i, V].
inline CMatrix flow_rhs(std::size_t i, const CVector& u, const CMatrix& V) {
    if (i >= static_cast<std::size_t>(u.size())) throw ValidationError("flow_rhs: index out of range");
    detail::check_distinct(u);
    const CMatrix Vi = vi_matrices(u, V)[i];
    return Vi * V - V * Vi;
}

/// {V, H} for the Lie-Poisson structure of so(n), entrywise {V_jk, H} = <V, [X_jk, grad H]> with
/// X_jk = E_jk - E_kj and <A, B> = sum_{a<b} A_ab B_ab. For quadratic H the central difference with
/// unit step is the exact partial derivative, so grad H needs no truncation.
template <class Hamiltonian>
CMatrix lie_poisson_flow(const CMatrix& V, Hamiltonian&& H) {
    const auto n = V.rows();
    CMatrix G = CMatrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = a + 1; b < n; ++b) {
            CMatrix X = CMatrix::Zero(n, n);
            X(a, b) = 1;
            X(b, a) = -1;
            const cplx g = (H(V + X) - H(V - X)) / 2.0;
            G(a, b) = g;
            G(b, a) = -g;
        }
    auto pairing = [n](const CMatrix& A, const CMatrix& B) {
        cplx acc = 0;
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = a + 1; b < n; ++b) acc += A(a, b) * B(a, b);
        return acc;
    };
    CMatrix out = CMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = j + 1; k < n; ++k) {
            CMatrix X = CMatrix::Zero(n, n);
            X(j, k) = 1;
            X(k, j) = -1;
            const cplx v = pairing(V, X * G - G * X);
            out(j, k) = v;
            out(k, j) = -v;
        }
    return out;
}

inline CMatrix hamiltonian_flow(std::size_t i, const CVector& u, const CMatrix& V) {
    detail::check_distinct(u);
    return lie_poisson_flow(V, [&](const CMatrix& W) { return hamiltonians(u, W)[i]; });
}

struct Sample {
    double s = 0;  // path parameter: segment index + local parameter in [0, 1]
    CVector u;
    std::vector<cplx> upper;
    std::vector<cplx> H;
    cplx log_tau;
};

struct Trajectory {
    std::vector<Sample> samples;
    std::size_t steps = 0;
    std::size_t rejected = 0;
    double tol = 0;

    const Sample& back() const { return samples.back(); }
    CMatrix final_V() const { return State{samples.back().u, samples.back().upper}.V(); }
};

/// Adaptive Dormand-Prince integration of dV = sum_i [V_i, V] du_i and d log tau = sum_i H_i du_i
/// along the polyline through `path` (path[0] must equal state0.u).
inline Trajectory integrate(const State& state0, const std::vector<CVector>& path, double tol, double min_step = 1e-12) {
    namespace odeint = boost::numeric::odeint;
    using vec = std::vector<cplx>;
    if (path.empty()) throw ValidationError("isomonodromy: empty path");
    if (!(tol > 0)) throw ValidationError("isomonodromy: tolerance must be positive");
    const std::size_t n = state0.dim();
    for (const auto& w : path)
        if (static_cast<std::size_t>(w.size()) != n) throw ValidationError("isomonodromy: waypoint has wrong dimension");
    if ((path[0] - state0.u).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, state0.u.cwiseAbs().maxCoeff())) {
        throw ValidationError("isomonodromy: path must start at the initial u");
    }
    const std::size_t m = state0.upper.size();

    Trajectory traj;
    traj.tol = tol;
    vec y(state0.upper);
    y.push_back(cplx(0));

    auto record = [&](double s, const CVector& u, const vec& yy) {
        State st{u, vec(yy.begin(), yy.begin() + static_cast<std::ptrdiff_t>(m))};
        traj.samples.push_back(Sample{s, u, st.upper, hamiltonians(st), yy[m]});
    };
    record(0.0, path[0], y);

    // local error target kept two orders below tol so the accumulated error along a path stays near tol
    const double local = tol * 1e-2;
    auto stepper = odeint::make_controlled(local, local, odeint::runge_kutta_dopri5<vec>());
    for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
        const CVector ua = path[seg];
        const CVector du = path[seg + 1] - path[seg];
        auto rhs = [&](const vec& x, vec& dx, double s) {
            const CVector u = ua + s * du;
            State st{u, vec(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m))};
            const CMatrix V = st.V();
            const auto Vi = vi_matrices(u, V);
            CMatrix dV = CMatrix::Zero(V.rows(), V.cols());
            for (std::size_t i = 0; i < n; ++i) {
                const cplx w = du(static_cast<Eigen::Index>(i));
                if (w != cplx(0)) dV += w * (Vi[i] * V - V * Vi[i]);
            }
            const auto H = hamiltonians(u, V);
            dx.assign(x.size(), cplx(0));
            std::size_t p = 0;
            for (Eigen::Index j = 0; j < V.rows(); ++j)
                for (Eigen::Index k = j + 1; k < V.rows(); ++k) dx[p++] = dV(j, k);
            cplx dl = 0;
            for (std::size_t i = 0; i < n; ++i) dl += H[i] * du(static_cast<Eigen::Index>(i));
            dx[m] = dl;
        };
        double s = 0;
        double dt = 1e-3;
        while (s < 1.0) {
            if (s + dt > 1.0) dt = 1.0 - s;
            odeint::controlled_step_result res;
            try {
                res = stepper.try_step(rhs, y, s, dt);
            } catch (const CausticError&) {
                dt *= 0.5;
                res = odeint::fail;
            }
            if (res == odeint::success) {
                ++traj.steps;
                record(static_cast<double>(seg) + s, ua + s * du, y);
            } else {
                ++traj.rejected;
                if (dt < min_step) throw NumericError("isomonodromy: step size underflow near a caustic");
            }
        }
        traj.samples.back().s = static_cast<double>(seg + 1);
    }
    return traj;
}

}  // namespace frobforge::iso
