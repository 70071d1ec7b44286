#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "frobforge/error.hpp"
#include "frobforge/exact/rational.hpp"

namespace frobforge {

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial with Rational coefficients.
///
/// Terms are keyed by exponent vectors of length arity(); zero coefficients are never stored,
/// so structural equality is mathematical equality.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, Rational>;

    MultiPoly() = default;
    explicit MultiPoly(std::size_t arity) : arity_(arity) {}

    static MultiPoly constant(std::size_t arity, const Rational& c) {
        MultiPoly p(arity);
        p.add_term(Exponents(arity, 0), c);
        return p;
    }

    static MultiPoly variable(std::size_t arity, std::size_t var) {
        if (var >= arity) throw ValidationError("MultiPoly::variable: index " + std::to_string(var) + " out of range");
        Exponents e(arity, 0);
        e[var] = 1;
        MultiPoly p(arity);
        p.add_term(e, Rational(1));
        return p;
    }

    static MultiPoly monomial(const Exponents& exps, const Rational& c) {
        MultiPoly p(exps.size());
        p.add_term(exps, c);
        return p;
    }

    std::size_t arity() const { return arity_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
    }

    Rational constant_term() const { return coefficient(Exponents(arity_, 0)); }

    Rational coefficient(const Exponents& exps) const {
        auto it = terms_.find(exps);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// -1 for the zero polynomial.
    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, total(e));
        return d;
    }

    int degree_in(std::size_t var) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    void add_term(const Exponents& exps, const Rational& c) {
        if (exps.size() != arity_) {
            throw ValidationError("MultiPoly: exponent vector of length " + std::to_string(exps.size()) +
                                  " in arity " + std::to_string(arity_));
        }
        for (int k : exps) {
            if (k < 0) throw ValidationError("MultiPoly: negative exponent");
        }
        if (is_zero_q(c)) return;
        auto [it, inserted] = terms_.try_emplace(exps, c);
        if (!inserted) {
            it->second += c;
            if (is_zero_q(it->second)) terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    MultiPoly& operator*=(const Rational& s) {
        if (is_zero_q(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
    friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }
    friend MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_arity(b);
        MultiPoly r(a.arity_);
        Exponents e(a.arity_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

    MultiPoly pow(unsigned k) const {
        MultiPoly r = constant(arity_, Rational(1));
        MultiPoly base = *this;
        while (k) {
            if (k & 1U) r *= base;
            k >>= 1U;
            if (k) base *= base;
        }
        return r;
    }

    MultiPoly derivative(std::size_t var) const {
        check_var(var);
        MultiPoly r(arity_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents f = e;
            f[var] -= 1;
            r.add_term(f, c * e[var]);
        }
        return r;
    }

    /// Antiderivative in one variable with no added constant.
    MultiPoly antiderivative(std::size_t var) const {
        check_var(var);
        MultiPoly r(arity_);
        for (const auto& [e, c] : terms_) {
            Exponents f = e;
            f[var] += 1;
            r.add_term(f, c / f[var]);
        }
        return r;
    }

    /// Replaces variable i by images[i]; all images share one arity, which becomes the result's.
    MultiPoly substitute(std::span<const MultiPoly> images) const {
        if (images.size() != arity_) throw ValidationError("MultiPoly::substitute: wrong number of images");
        const std::size_t out_arity = images.empty() ? 0 : images[0].arity();
        std::vector<std::vector<MultiPoly>> powers(arity_);
        auto power = [&](std::size_t var, int k) -> const MultiPoly& {
            auto& cache = powers[var];
            if (cache.empty()) cache.push_back(constant(out_arity, Rational(1)));
            while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[var]);
            return cache[static_cast<std::size_t>(k)];
        };
        MultiPoly r(out_arity);
        for (const auto& [e, c] : terms_) {
            MultiPoly term = constant(out_arity, c);
            for (std::size_t i = 0; i < arity_; ++i) {
                if (e[i] > 0) term *= power(i, e[i]);
            }
            r += term;
        }
        return r;
    }

    /// Embeds into a ring of larger arity, mapping variable i to variable offset + i.
    MultiPoly lift(std::size_t new_arity, std::size_t offset = 0) const {
        if (offset + arity_ > new_arity) throw ValidationError("MultiPoly::lift: target arity too small");
        MultiPoly r(new_arity);
        for (const auto& [e, c] : terms_) {
            Exponents f(new_arity, 0);
            std::copy(e.begin(), e.end(), f.begin() + static_cast<std::ptrdiff_t>(offset));
            r.add_term(f, c);
        }
        return r;
    }

    /// Removes every term of total degree <= max_degree.
    MultiPoly without_degree_at_most(int max_degree) const {
        MultiPoly r(arity_);
        for (const auto& [e, c] : terms_) {
            if (total(e) > max_degree) r.terms_.emplace(e, c);
        }
        return r;
    }

    /// Part of total degree exactly d.
    MultiPoly homogeneous_part(int d) const {
        MultiPoly r(arity_);
        for (const auto& [e, c] : terms_) {
            if (total(e) == d) r.terms_.emplace(e, c);
        }
        return r;
    }

    Rational evaluate(std::span<const Rational> point) const {
        check_point(point.size());
        Rational acc(0);
        for (const auto& [e, c] : terms_) {
            Rational m = c;
            for (std::size_t i = 0; i < arity_; ++i) {
                for (int k = 0; k < e[i]; ++k) m *= point[i];
            }
            acc += m;
        }
        return acc;
    }

    /// Numeric evaluation for any field-like T constructible from double (double, std::complex<double>).
    template <class T>
    T evaluate_numeric(std::span<const T> point) const {
        check_point(point.size());
        T acc{};
        for (const auto& [e, c] : terms_) {
            T m = T(c.get_d());
            for (std::size_t i = 0; i < arity_; ++i) {
                for (int k = 0; k < e[i]; ++k) m *= point[i];
            }
            acc += m;
        }
        return acc;
    }

    static int total(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

private:
    static bool is_zero_q(const Rational& c) { return sgn(c) == 0; }

    void check_arity(const MultiPoly& o) const {
        if (o.arity_ != arity_) {
            throw ValidationError("MultiPoly: arity mismatch " + std::to_string(arity_) + " vs " +
                                  std::to_string(o.arity_));
        }
    }
    void check_var(std::size_t var) const {
        if (var >= arity_) {
            throw ValidationError("MultiPoly: variable index " + std::to_string(var) + " out of range for arity " +
                                  std::to_string(arity_));
        }
    }
    void check_point(std::size_t n) const {
        if (n != arity_) throw ValidationError("MultiPoly::evaluate: point has wrong dimension");
    }

    std::size_t arity_ = 0;
    TermMap terms_;
};

/// Human-readable form, used in CLI reports and test diagnostics.
inline std::string to_string(const MultiPoly& p, const std::vector<std::string>& names = {}) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        std::string coeff = c.get_str();
        if (!first) {
            if (sgn(c) < 0) {
                out += " - ";
                coeff = Rational(-c).get_str();
            } else {
                out += " + ";
            }
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += i < names.size() ? names[i] : "t" + std::to_string(i + 1);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            out += coeff;
        } else if (coeff == "1") {
            out += mono;
        } else if (coeff == "-1") {
            out += "-" + mono;
        } else {
            out += coeff + "*" + mono;
        }
    }
    return out;
}

}  // namespace frobforge
