#pragma once

#include <gmpxx.h>

#include "frobforge/error.hpp"
#include "frobforge/exact/matrix.hpp"

namespace frobforge::mono {

inline Rational binomial(long n, long k) {
    if (k < 0 || k > n) return Rational(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

/// Stokes matrix of P^d: s_ij = binom(d+1, j-i) for i <= j.
inline RationalMatrix pd_stokes(int d) {
    if (d < 1) throw ValidationError("pd_stokes: d must be >= 1");
    const std::size_t n = static_cast<std::size_t>(d) + 1;
    RationalMatrix S(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) S(i, j) = binomial(d + 1, static_cast<long>(j - i));
    return S;
}

inline bool is_unit_upper_triangular(const RationalMatrix& S) {
    if (!S.square()) return false;
    for (std::size_t i = 0; i < S.rows(); ++i) {
        if (S(i, i) != 1) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (sgn(S(i, j)) != 0) return false;
    }
    return true;
}

}  // namespace frobforge::mono
