#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "frobforge/error.hpp"
#include "frobforge/exact/multipoly.hpp"

namespace frobforge {

/// Polynomial in one variable x whose coefficients are MultiPoly in parameters (all of one arity).
/// coeffs[i] multiplies x^i; trailing zero coefficients are trimmed.
class UniPoly {
public:
    explicit UniPoly(std::size_t param_arity = 0) : param_arity_(param_arity) {}
    UniPoly(std::size_t param_arity, std::vector<MultiPoly> coeffs) : param_arity_(param_arity), coeffs_(std::move(coeffs)) {
        for (const auto& c : coeffs_) {
            if (c.arity() != param_arity_) throw ValidationError("UniPoly: coefficient arity mismatch");
        }
        trim();
    }

    /// Splits a MultiPoly along one variable; remaining variables keep their order.
    static UniPoly from_multipoly(const MultiPoly& p, std::size_t var) {
        if (var >= p.arity()) throw ValidationError("UniPoly::from_multipoly: variable out of range");
        const std::size_t pa = p.arity() - 1;
        std::vector<MultiPoly> coeffs;
        for (const auto& [e, c] : p.terms()) {
            const auto deg = static_cast<std::size_t>(e[var]);
            while (coeffs.size() <= deg) coeffs.emplace_back(pa);
            Exponents rest;
            rest.reserve(pa);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (i != var) rest.push_back(e[i]);
            }
            coeffs[deg].add_term(rest, c);
        }
        return UniPoly(pa, std::move(coeffs));
    }

    /// x^k with coefficient c.
    static UniPoly monomial(std::size_t param_arity, int k, const MultiPoly& c) {
        std::vector<MultiPoly> coeffs(static_cast<std::size_t>(k) + 1, MultiPoly(param_arity));
        coeffs.back() = c;
        return UniPoly(param_arity, std::move(coeffs));
    }

    std::size_t param_arity() const { return param_arity_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<MultiPoly>& coeffs() const { return coeffs_; }

    MultiPoly coeff(int i) const {
        if (i < 0 || i > degree()) return MultiPoly(param_arity_);
        return coeffs_[static_cast<std::size_t>(i)];
    }
    MultiPoly leading() const { return is_zero() ? MultiPoly(param_arity_) : coeffs_.back(); }

    UniPoly derivative() const {
        std::vector<MultiPoly> d;
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * Rational(static_cast<long>(i)));
        return UniPoly(param_arity_, std::move(d));
    }

    /// Derivative of every coefficient in a parameter.
    UniPoly parameter_derivative(std::size_t var) const {
        std::vector<MultiPoly> d;
        for (const auto& c : coeffs_) d.push_back(c.derivative(var));
        return UniPoly(param_arity_, std::move(d));
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.param_arity_ != b.param_arity_) throw ValidationError("UniPoly: arity mismatch");
        if (a.is_zero() || b.is_zero()) return UniPoly(a.param_arity_);
        std::vector<MultiPoly> r(a.coeffs_.size() + b.coeffs_.size() - 1, MultiPoly(a.param_arity_));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return UniPoly(a.param_arity_, std::move(r));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        if (a.param_arity_ != b.param_arity_) throw ValidationError("UniPoly: arity mismatch");
        std::vector<MultiPoly> r(std::max(a.coeffs_.size(), b.coeffs_.size()), MultiPoly(a.param_arity_));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
        return UniPoly(a.param_arity_, std::move(r));
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        return a.param_arity_ == b.param_arity_ && a.coeffs_ == b.coeffs_;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::size_t param_arity_;
    std::vector<MultiPoly> coeffs_;
};

/// Expansion at x = infinity:  sum_{e <= top} c_e x^e, known exactly for every exponent >= lowest.
struct LaurentTail {
    std::map<int, MultiPoly> terms;  // only nonzero coefficients
    int top = 0;
    int lowest = 0;                  // truncation order: exponents below this were not computed

    MultiPoly coefficient(int e, std::size_t param_arity) const {
        if (e < lowest) throw AlgebraError("LaurentTail: exponent " + std::to_string(e) + " below truncation order");
        auto it = terms.find(e);
        return it == terms.end() ? MultiPoly(param_arity) : it->second;
    }
};

/// Number of terms of the 1/x expansion needed to reach the x^{-1} coefficient of num/den.
inline int residue_order_needed(const UniPoly& num, const UniPoly& den) {
    if (num.is_zero()) return 0;
    return std::max(0, num.degree() - den.degree() + 2);
}

/// Laurent expansion of num/den at infinity with `terms` coefficients starting from x^{deg num - deg den}.
/// The leading coefficient of den must be a nonzero constant.
inline LaurentTail laurent_at_infinity(const UniPoly& num, const UniPoly& den, int terms) {
    if (den.is_zero()) throw AlgebraError("laurent_at_infinity: division by zero polynomial");
    const MultiPoly lead = den.leading();
    if (!lead.is_constant()) throw AlgebraError("laurent_at_infinity: leading coefficient of denominator is not a constant");
    const Rational inv_lead = Rational(1) / lead.constant_term();
    const std::size_t pa = den.param_arity();
    LaurentTail out;
    const int a = num.is_zero() ? 0 : num.degree();
    const int b = den.degree();
    out.top = a - b;
    out.lowest = a - b - terms + 1;
    if (num.is_zero()) return out;
    // y = 1/x: num = x^a N(y), den = x^b D(y), D(0) = lead.
    std::vector<MultiPoly> q;
    q.reserve(static_cast<std::size_t>(std::max(terms, 0)));
    for (int i = 0; i < terms; ++i) {
        MultiPoly acc = num.coeff(a - i);
        for (int j = 1; j <= i && j <= b; ++j) acc -= den.coeff(b - j) * q[static_cast<std::size_t>(i - j)];
        acc *= inv_lead;
        if (!acc.is_zero()) out.terms.emplace(a - b - i, acc);
        q.push_back(std::move(acc));
    }
    (void)pa;
    return out;
}

/// res_{x=inf} num/den := -(coefficient of x^{-1}); order_hint is the number of expansion terms to compute.
inline MultiPoly residue_at_infinity(const UniPoly& num, const UniPoly& den, int order_hint) {
    if (den.is_zero()) throw AlgebraError("residue_at_infinity: division by zero polynomial");
    const std::size_t pa = den.param_arity();
    if (num.is_zero() || num.degree() - den.degree() + 1 < 0) return MultiPoly(pa);
    const int needed = residue_order_needed(num, den);
    if (order_hint < needed) {
        throw AlgebraError("residue_at_infinity: order_hint " + std::to_string(order_hint) +
                           " does not reach the x^-1 term (need " + std::to_string(needed) + ")");
    }
    return -laurent_at_infinity(num, den, order_hint).coefficient(-1, pa);
}

/// Rational form for univariate (arity-1) polynomials.
inline Rational residue_at_infinity(const MultiPoly& num, const MultiPoly& den, int order_hint) {
    if (num.arity() != 1 || den.arity() != 1) throw ValidationError("residue_at_infinity: expected univariate polynomials");
    const MultiPoly r = residue_at_infinity(UniPoly::from_multipoly(num, 0), UniPoly::from_multipoly(den, 0), order_hint);
    return r.constant_term();
}

/// x(k) = k + c_1 + c_2/k + ... + c_order/k^{order-1}, the branch of the inverse of k^m = f(x) at infinity.
/// coeffs[j] multiplies k^{1-j}; coeffs[0] = 1.
struct PuiseuxExpansion {
    int degree = 0;                // m
    int order = 0;
    std::vector<MultiPoly> coeffs; // size order + 1

    /// Coefficient a_j in the reading x = k - a_1/k - a_2/k^2 - ...
    MultiPoly a(int j) const { return -coeffs.at(static_cast<std::size_t>(j + 1)); }
};

inline constexpr int kMaxPuiseuxOrder = 64;

inline PuiseuxExpansion puiseux_root_expansion(const UniPoly& f, int order) {
    if (order < 1) throw ValidationError("puiseux_root_expansion: order must be >= 1");
    if (order > kMaxPuiseuxOrder) {
        throw AlgebraError("puiseux_root_expansion: order " + std::to_string(order) + " exceeds the supported maximum " +
                           std::to_string(kMaxPuiseuxOrder));
    }
    const int m = f.degree();
    if (m < 2) throw AlgebraError("puiseux_root_expansion: degree must be >= 2");
    const std::size_t pa = f.param_arity();
    if (!(f.leading() == MultiPoly::constant(pa, Rational(1)))) throw AlgebraError("puiseux_root_expansion: polynomial is not monic");

    // x = k (1 + B(w)), w = 1/k, B = sum_{j>=1} b_j w^j. The w^j coefficient of f(x)/k^m is m b_j plus
    // terms in b_1..b_{j-1}, so each b_j is fixed by one linear equation.
    const auto J = static_cast<std::size_t>(order);
    std::vector<MultiPoly> b(J + 1, MultiPoly(pa));
    b[0] = MultiPoly::constant(pa, Rational(1));

    auto series_mul = [&](const std::vector<MultiPoly>& x, const std::vector<MultiPoly>& y) {
        std::vector<MultiPoly> r(J + 1, MultiPoly(pa));
        for (std::size_t i = 0; i <= J; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t k = 0; i + k <= J; ++k) {
                if (!y[k].is_zero()) r[i + k] += x[i] * y[k];
            }
        }
        return r;
    };

    for (std::size_t j = 1; j <= J; ++j) {
        b[j] = MultiPoly(pa);
        // sum_i f_i w^{m-i} (1+B)^i, coefficient of w^j
        MultiPoly coef(pa);
        std::vector<MultiPoly> pw(J + 1, MultiPoly(pa));
        pw[0] = MultiPoly::constant(pa, Rational(1));
        for (int i = 0; i <= m; ++i) {
            if (i > 0) pw = series_mul(pw, b);
            const int shift = m - i;
            if (shift > static_cast<int>(j)) continue;
            const MultiPoly fi = f.coeff(i);
            if (fi.is_zero()) continue;
            coef += fi * pw[j - static_cast<std::size_t>(shift)];
        }
        b[j] = coef * (Rational(-1) / m);
    }

    PuiseuxExpansion out;
    out.degree = m;
    out.order = order;
    out.coeffs = std::move(b);
    return out;
}

}  // namespace frobforge
