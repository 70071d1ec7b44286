#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frobforge/error.hpp"
#include "frobforge/exact/multipoly.hpp"

namespace frobforge {

/// Truncated series  sum_k P_k(t) e^{k t'},  0 <= k <= K,  where t' is one designated coordinate.
///
/// A series without a marker variable is an ordinary polynomial living at marker 0; this is how
/// polynomial potentials (A_n, trivial cubics) and exponential ones (quantum cohomology) share one
/// type. Products saturate at K and set truncated(); everything at marker <= K stays exact because
/// marker degrees only add.
class ExpSeries {
public:
    ExpSeries() = default;

    explicit ExpSeries(std::size_t arity, std::optional<std::size_t> marker_var = std::nullopt, int truncation = 0)
        : arity_(arity), marker_var_(marker_var), truncation_(marker_var ? truncation : 0) {
        if (marker_var && *marker_var >= arity) throw ValidationError("ExpSeries: marker variable out of range");
        if (truncation_ < 0) throw ValidationError("ExpSeries: negative truncation degree");
    }

    static ExpSeries polynomial(const MultiPoly& p) {
        ExpSeries s(p.arity());
        s.add(0, p);
        return s;
    }

    /// p(t) e^{k t'} inside a series with the given marker layout.
    static ExpSeries term(const MultiPoly& p, int marker, std::size_t marker_var, int truncation) {
        ExpSeries s(p.arity(), marker_var, truncation);
        s.add(marker, p);
        return s;
    }

    /// Same layout as `like`, value zero.
    static ExpSeries zero_like(const ExpSeries& like) {
        return ExpSeries(like.arity_, like.marker_var_, like.truncation_);
    }

    std::size_t arity() const { return arity_; }
    std::optional<std::size_t> marker_var() const { return marker_var_; }
    int truncation() const { return truncation_; }
    bool truncated() const { return truncated_; }
    void set_truncated(bool t) { truncated_ = t; }
    const std::map<int, MultiPoly>& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }
    bool is_polynomial() const { return parts_.empty() || (parts_.size() == 1 && parts_.begin()->first == 0); }

    MultiPoly part(int marker) const {
        auto it = parts_.find(marker);
        return it == parts_.end() ? MultiPoly(arity_) : it->second;
    }

    /// Marker-0 coefficient; for polynomial charts this is the whole value.
    MultiPoly polynomial_part() const { return part(0); }

    void add(int marker, const MultiPoly& p) {
        if (p.arity() != arity_) throw ValidationError("ExpSeries: coefficient arity mismatch");
        if (marker < 0) throw ValidationError("ExpSeries: negative marker degree");
        if (marker > 0 && !marker_var_) throw ValidationError("ExpSeries: marker term in a series without marker variable");
        if (marker > truncation_) {
            if (!p.is_zero()) truncated_ = true;
            return;
        }
        if (p.is_zero()) return;
        auto [it, inserted] = parts_.try_emplace(marker, p);
        if (!inserted) {
            it->second += p;
            if (it->second.is_zero()) parts_.erase(it);
        }
    }

    ExpSeries& operator+=(const ExpSeries& o) {
        adopt_layout(o);
        truncated_ = truncated_ || o.truncated_;
        for (const auto& [k, p] : o.parts_) add(k, p);
        return *this;
    }
    ExpSeries& operator-=(const ExpSeries& o) {
        adopt_layout(o);
        truncated_ = truncated_ || o.truncated_;
        for (const auto& [k, p] : o.parts_) add(k, -p);
        return *this;
    }
    ExpSeries& operator*=(const Rational& s) {
        if (sgn(s) == 0) {
            parts_.clear();
            return *this;
        }
        for (auto& [k, p] : parts_) p *= s;
        return *this;
    }

    friend ExpSeries operator+(ExpSeries a, const ExpSeries& b) { return a += b; }
    friend ExpSeries operator-(ExpSeries a, const ExpSeries& b) { return a -= b; }
    friend ExpSeries operator*(ExpSeries a, const Rational& s) { return a *= s; }
    friend ExpSeries operator*(const Rational& s, ExpSeries a) { return a *= s; }
    friend ExpSeries operator-(ExpSeries a) { return a *= Rational(-1); }

    friend ExpSeries operator*(const ExpSeries& a, const ExpSeries& b) {
        ExpSeries r = zero_like(a);
        r.adopt_layout(b);
        r.truncated_ = a.truncated_ || b.truncated_;
        for (const auto& [ka, pa] : a.parts_) {
            for (const auto& [kb, pb] : b.parts_) {
                if (ka + kb > r.truncation_) {
                    r.truncated_ = true;
                    continue;
                }
                r.add(ka + kb, pa * pb);
            }
        }
        return r;
    }
    ExpSeries& operator*=(const ExpSeries& o) { return *this = *this * o; }

    /// Value equality; layout flags (truncated) do not participate.
    friend bool operator==(const ExpSeries& a, const ExpSeries& b) {
        return a.arity_ == b.arity_ && a.parts_ == b.parts_;
    }

    /// Exact partial derivative; on the marker variable, d/dt'(P e^{kt'}) = (dP/dt' + kP) e^{kt'}.
    ExpSeries derivative(std::size_t var) const {
        check_var(var);
        ExpSeries r = zero_like(*this);
        r.truncated_ = truncated_;
        for (const auto& [k, p] : parts_) {
            r.add(k, p.derivative(var));
            if (marker_var_ && var == *marker_var_ && k != 0) r.add(k, p * Rational(k));
        }
        return r;
    }

    /// Some Q with dQ/dt^var = *this (no added constant); exact, including marker terms:
    /// for k > 0,  (d + k) Q_k = P_k  is solved by  Q_k = sum_j (-1)^j d^j P_k / k^{j+1}.
    ExpSeries antiderivative(std::size_t var) const {
        check_var(var);
        ExpSeries r = zero_like(*this);
        r.truncated_ = truncated_;
        const bool on_marker = marker_var_ && var == *marker_var_;
        for (const auto& [k, p] : parts_) {
            if (!on_marker || k == 0) {
                r.add(k, p.antiderivative(var));
                continue;
            }
            MultiPoly d = p;
            Rational scale = Rational(1) / k;
            Rational sign(1);
            while (!d.is_zero()) {
                r.add(k, d * (sign * scale));
                d = d.derivative(var);
                scale /= k;
                sign = -sign;
            }
        }
        return r;
    }

    /// Drops marker-0 terms of total degree <= max_degree (the affine / quadratic normalizations).
    ExpSeries without_low_degree(int max_degree) const {
        ExpSeries r = *this;
        auto it = r.parts_.find(0);
        if (it != r.parts_.end()) {
            it->second = it->second.without_degree_at_most(max_degree);
            if (it->second.is_zero()) r.parts_.erase(it);
        }
        return r;
    }

    /// Raises every coefficient into a ring of larger arity (new variables appended after the old ones
    /// when offset == 0). The marker variable index shifts with the offset.
    ExpSeries lift(std::size_t new_arity, std::size_t offset = 0) const {
        std::optional<std::size_t> mv;
        if (marker_var_) mv = *marker_var_ + offset;
        ExpSeries r(new_arity, mv, truncation_);
        r.truncated_ = truncated_;
        for (const auto& [k, p] : parts_) r.add(k, p.lift(new_arity, offset));
        return r;
    }

    template <class T>
    T evaluate_numeric(std::span<const T> point) const {
        T acc{};
        for (const auto& [k, p] : parts_) {
            T v = p.template evaluate_numeric<T>(point);
            if (k != 0) v *= std::exp(T(static_cast<double>(k)) * point[*marker_var_]);
            acc += v;
        }
        return acc;
    }

    /// Restricts to markers <= k (for degree-by-degree recursions).
    ExpSeries truncate_to(int k) const {
        ExpSeries r(arity_, marker_var_, std::min(k, truncation_));
        for (const auto& [m, p] : parts_) r.add(m, p);
        r.truncated_ = truncated_ || k < truncation_;
        return r;
    }

private:
    void check_var(std::size_t var) const {
        if (var >= arity_) {
            throw ValidationError("ExpSeries: variable index " + std::to_string(var) + " out of range for arity " +
                                  std::to_string(arity_));
        }
    }

    // Combines layouts of two operands: a series without marker adopts the other's marker layout,
    // two marker series must agree on the marker variable and saturate at the smaller K.
    void adopt_layout(const ExpSeries& o) {
        if (o.arity_ != arity_) throw ValidationError("ExpSeries: arity mismatch");
        if (!o.marker_var_) return;
        if (!marker_var_) {
            marker_var_ = o.marker_var_;
            truncation_ = o.truncation_;
            return;
        }
        if (*marker_var_ != *o.marker_var_) throw ValidationError("ExpSeries: marker variable mismatch");
        if (o.truncation_ < truncation_) {
            truncation_ = o.truncation_;
            for (auto it = parts_.begin(); it != parts_.end();) {
                if (it->first > truncation_) {
                    truncated_ = true;
                    it = parts_.erase(it);
                } else {
                    ++it;
                }
            }
        }
    }

    std::size_t arity_ = 0;
    std::optional<std::size_t> marker_var_;
    int truncation_ = 0;
    bool truncated_ = false;
    std::map<int, MultiPoly> parts_;
};

inline std::string to_string(const ExpSeries& s) {
    if (s.is_zero()) return "0";
    std::string out;
    for (const auto& [k, p] : s.parts()) {
        if (!out.empty()) out += " + ";
        if (k == 0) {
            out += "(" + to_string(p) + ")";
        } else {
            out += "(" + to_string(p) + ")*e^(" + std::to_string(k) + "*t" + std::to_string(*s.marker_var() + 1) + ")";
        }
    }
    return out;
}

}  // namespace frobforge
