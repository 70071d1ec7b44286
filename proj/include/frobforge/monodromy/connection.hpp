#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frobforge/error.hpp"
#include "frobforge/exact/matrix.hpp"
#include "frobforge/monodromy/hp.hpp"
#include "frobforge/monodromy/stokes.hpp"
#include "frobforge/quantum/p2.hpp"

namespace frobforge::mono {

using hp::CMatrixHP;

/// (V, <,>, mu, e_1, R, S, C). mu must be diagonal here; eta, mu, R, S are exact.
struct MonodromyData {
    RationalMatrix eta;
    RationalMatrix mu;
    RationalMatrix R;
    std::size_t e1 = 0;
    RationalMatrix S;
    CMatrixHP C;

    std::size_t dim() const { return eta.rows(); }

    void validate() const {
        const std::size_t n = dim();
        auto shape = [n](const auto& m, const char* name) {
            if (m.rows() != n || m.cols() != n) throw SchemaError(std::string("monodromy data: ") + name + " must be " + std::to_string(n) + "x" + std::to_string(n));
        };
        shape(eta, "eta");
        shape(mu, "mu");
        shape(R, "R");
        shape(S, "S");
        shape(C, "C");
        if (!(eta == eta.transpose()) || sgn(determinant(eta)) == 0) throw ValidationError("monodromy data: <,> must be symmetric nondegenerate");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && sgn(mu(i, j)) != 0) throw ValidationError("monodromy data: only diagonal mu is supported");
        if (!(mu.transpose() * eta + eta * mu == RationalMatrix(n, n, Rational(0)))) throw ValidationError("monodromy data: mu is not skew for <,>");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (sgn(R(i, j)) == 0) continue;
                const Rational k = mu(i, i) - mu(j, j);
                if (k.get_den() != 1 || sgn(k) <= 0) throw ValidationError("monodromy data: R must raise mu-eigenvalues by positive integers");
            }
        if (e1 >= n) throw ValidationError("monodromy data: e_1 index out of range");
        if (!is_unit_upper_triangular(S)) throw ValidationError("monodromy data: S must be unit upper triangular");
    }
};

/// exp(pi i mu) exp(pi i R) for diagonal mu and nilpotent R.
inline CMatrixHP monodromy_at_origin(const RationalMatrix& mu, const RationalMatrix& R) {
    const std::size_t n = mu.rows();
    const hp::Complex zero(hp::Real(0), hp::Real(0));
    const hp::Real pi = hp::pi();
    CMatrixHP E(n, n, zero);
    for (std::size_t k = 0; k < n; ++k) {
        const hp::Real x = pi * hp::from_rational(mu(k, k));
        E(k, k) = hp::Complex(boost::multiprecision::cos(x), boost::multiprecision::sin(x));
    }
    const CMatrixHP Rh = hp::from_rational(R);
    CMatrixHP term = CMatrixHP::identity(n, hp::Complex(hp::Real(1), hp::Real(0)), zero);
    CMatrixHP sum = term;
    const hp::Complex ipi(hp::Real(0), pi);
    for (std::size_t k = 1; k <= n; ++k) {
        term = term * Rh;
        term = (ipi / hp::Complex(hp::Real(static_cast<long>(k)), hp::Real(0))) * term;
        sum = sum + term;
    }
    return E * sum;
}

struct CompatibilityReport {
    hp::Real residual;
    double tol = 0;
    bool passed = false;
    CMatrixHP lhs;  // C^T eta e^{pi i mu} e^{pi i R} C
};

/// max |(C^T eta e^{pi i mu} e^{pi i R} C - S)_{ab}|.
inline CompatibilityReport check_compatibility(const MonodromyData& m, double tol) {
    m.validate();
    hp::PrecisionGuard guard(m.C(0, 0).real().precision());
    CompatibilityReport rep;
    rep.tol = tol;
    const CMatrixHP X = monodromy_at_origin(m.mu, m.R);
    rep.lhs = m.C.transpose() * hp::from_rational(m.eta) * X * m.C;
    rep.residual = hp::max_abs(rep.lhs - hp::from_rational(m.S));
    rep.passed = rep.residual < hp::Real(tol);
    return rep;
}

enum class ConnectionNormalization {
    Compatible,  // prefactor (-1)^{d+1} i^{1-dbar} / (2 pi)^{d/2}
    Raw,         // prefactor (-1)^{d+1} / ((2 pi)^{(d+1)/2} i^{dbar}); gives C^T eta X C = -S / (2 pi)
};

struct PdConnectionData {
    int d = 0;
    unsigned digits = 0;
    ConnectionNormalization normalization = ConnectionNormalization::Compatible;
    std::vector<hp::Complex> A;  // A_0 .. A_d
    CMatrixHP Cprime;
    CMatrixHP Cdoubleprime;
    CMatrixHP C;
};

/// Laurent coefficients of (-1)^{d+1} Gamma(-x)^{d+1} e^{-pi i dbar x} x^{d+1} = Gamma(1-x)^{d+1} e^{-pi i dbar x}
///   = exp( ((d+1) gamma - pi i dbar) x + (d+1) sum_{m>=2} zeta(m) x^m / m ),
/// exponentiated by k B_k = sum_{j=1}^k j L_j B_{k-j}. Uses the current default precision.
inline std::vector<hp::Complex> pd_laurent_coefficients(int d) {
    if (d < 1) throw ValidationError("pd_connection: d must be >= 1");
    const int dbar = d % 2 == 0 ? 1 : 0;
    const std::size_t K = static_cast<std::size_t>(d);
    const hp::Real zero(0);
    std::vector<hp::Complex> L(K + 1, hp::Complex(zero, zero));
    if (K >= 1) L[1] = hp::Complex(hp::Real(d + 1) * hp::euler_gamma(), -hp::pi() * hp::Real(dbar));
    for (std::size_t m = 2; m <= K; ++m) L[m] = hp::Complex(hp::Real(d + 1) * hp::zeta(m) / hp::Real(static_cast<long>(m)), zero);
    std::vector<hp::Complex> B(K + 1, hp::Complex(zero, zero));
    B[0] = hp::Complex(hp::Real(1), zero);
    for (std::size_t k = 1; k <= K; ++k) {
        hp::Complex acc(zero, zero);
        for (std::size_t j = 1; j <= k; ++j) acc += hp::Complex(hp::Real(static_cast<long>(j)), zero) * L[j] * B[k - j];
        B[k] = acc / hp::Complex(hp::Real(static_cast<long>(k)), zero);
    }
    return B;
}

/// C = C' C'' for P^d. C''(b, j) = [2 pi i j]^b / b! (0-based), C'(a, b) = prefactor * A_{a-b} for a >= b.
inline PdConnectionData pd_connection(int d, unsigned digits, ConnectionNormalization norm = ConnectionNormalization::Compatible) {
    if (d < 1) throw ValidationError("pd_connection: d must be >= 1");
    if (digits < 10) throw ValidationError("pd_connection: precision below 10 digits is not enough for the compatibility test");
    hp::PrecisionGuard guard(digits);
    PdConnectionData out;
    out.d = d;
    out.digits = digits;
    out.normalization = norm;
    out.A = pd_laurent_coefficients(d);
    const std::size_t n = static_cast<std::size_t>(d) + 1;
    const hp::Real zero(0), one(1);
    const hp::Complex czero(zero, zero), i(zero, one);
    const hp::Real two_pi = 2 * hp::pi();
    const int dbar = d % 2 == 0 ? 1 : 0;

    out.Cdoubleprime = CMatrixHP(n, n, czero);
    for (std::size_t j = 0; j < n; ++j) {
        const hp::Complex base(zero, two_pi * hp::Real(static_cast<long>(j)));
        hp::Complex pw(one, zero);
        hp::Real fact(1);
        for (std::size_t b = 0; b < n; ++b) {
            if (b > 0) {
                pw *= base;
                fact *= hp::Real(static_cast<long>(b));
            }
            out.Cdoubleprime(b, j) = pw / hp::Complex(fact, zero);
        }
    }

    hp::Complex pref;
    const hp::Real sign((d + 1) % 2 == 0 ? 1 : -1);
    if (norm == ConnectionNormalization::Raw) {
        const hp::Complex idbar = dbar ? i : hp::Complex(one, zero);
        pref = hp::Complex(sign / boost::multiprecision::pow(two_pi, hp::Real(d + 1) / 2), zero) / idbar;
    } else {
        const hp::Complex ipow = dbar ? hp::Complex(one, zero) : i;  // i^{1 - dbar}
        pref = hp::Complex(sign / boost::multiprecision::pow(two_pi, hp::Real(d) / 2), zero) * ipow;
    }
    out.Cprime = CMatrixHP(n, n, czero);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b <= a; ++b) out.Cprime(a, b) = pref * out.A[a - b];
    out.C = out.Cprime * out.Cdoubleprime;
    return out;
}

/// The full P^d tuple (eta, mu, R, e_1, S, C).
inline MonodromyData pd_monodromy_data(int d, unsigned digits, ConnectionNormalization norm = ConnectionNormalization::Compatible) {
    const auto cl = qh::pd_classical_data(d);
    return MonodromyData{cl.eta, cl.mu, cl.R, 0, pd_stokes(d), pd_connection(d, digits, norm).C};
}

}  // namespace frobforge::mono
