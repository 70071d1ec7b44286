#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <complex>
#include <cstdlib>
#include <string>

#include "frobforge/error.hpp"
#include "frobforge/exact/matrix.hpp"
#include "frobforge/exact/rational.hpp"

namespace frobforge::hp {

using Real = boost::multiprecision::mpfr_float;
using Complex = std::complex<Real>;
using CMatrixHP = Matrix<Complex>;

inline constexpr unsigned kDefaultDigits = 30;

/// Digits from FROBFORGE_PRECISION, else 30.
inline unsigned default_digits() {
    const char* env = std::getenv("FROBFORGE_PRECISION");
    if (!env || !*env) return kDefaultDigits;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 10 || v > 10000) throw ValidationError("FROBFORGE_PRECISION must be an integer in [10, 10000]");
    return static_cast<unsigned>(v);
}

/// Sets the working precision of newly created Real values for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) { Real::default_precision(digits); }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

inline Real pi() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

inline Real euler_gamma() {
    Real r;
    mpfr_const_euler(r.backend().data(), MPFR_RNDN);
    return r;
}

inline Real zeta(unsigned long m) {
    Real r;
    mpfr_zeta_ui(r.backend().data(), m, MPFR_RNDN);
    return r;
}

inline Real from_rational(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

inline Complex cplx(const Rational& q) { return Complex(from_rational(q), Real(0)); }

inline CMatrixHP from_rational(const RationalMatrix& m) {
    CMatrixHP out(m.rows(), m.cols(), Complex(Real(0), Real(0)));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = cplx(m(i, j));
    return out;
}

inline Real abs(const Complex& z) { return boost::multiprecision::sqrt(z.real() * z.real() + z.imag() * z.imag()); }

inline Real max_abs(const CMatrixHP& m) {
    Real best(0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) best = boost::multiprecision::max(best, abs(m(i, j)));
    return best;
}

inline std::string to_string(const Real& x, unsigned digits) { return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific); }

}  // namespace frobforge::hp
