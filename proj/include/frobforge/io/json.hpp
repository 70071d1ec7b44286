#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frobforge/core/chart.hpp"
#include "frobforge/error.hpp"
#include "frobforge/exact/exp_series.hpp"
#include "frobforge/exact/matrix.hpp"
#include "frobforge/exact/multipoly.hpp"
#include "frobforge/exact/rational.hpp"

namespace frobforge::io {

using json = nlohmann::ordered_json;

inline json parse(const std::string& text, const std::string& what = "input") {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

inline void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

inline const json& field(const json& j, const char* name, const std::string& ctx) {
    if (!j.is_object()) throw SchemaError(ctx + ": expected an object");
    auto it = j.find(name);
    if (it == j.end()) throw SchemaError(ctx + ": missing field \"" + name + "\"");
    return *it;
}

// ---- exact values

// Integers that fit a long are plain JSON numbers, everything else a "p/q" string.
inline json to_json(const Rational& r) {
    if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
    return to_string(r);
}

inline Rational rational_from_json(const json& j, const std::string& ctx) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw SchemaError(ctx + ": expected a rational string \"p/q\"");
}

inline json to_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RationalMatrix matrix_from_json(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw SchemaError(ctx + ": expected a non-empty list of rows");
    const std::size_t rows = j.size(), cols = j[0].size();
    RationalMatrix m(rows, cols, Rational(0));
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw SchemaError(ctx + ": ragged matrix");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from_json(j[i][k], ctx);
    }
    return m;
}

inline json to_json(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline std::vector<Rational> rational_vector_from_json(const json& j, const std::string& ctx) {
    if (!j.is_array()) throw SchemaError(ctx + ": expected a list");
    std::vector<Rational> v;
    for (const auto& x : j) v.push_back(rational_from_json(x, ctx));
    return v;
}

inline json terms_json(const MultiPoly& p, std::optional<int> marker = std::nullopt) {
    json a = json::array();
    for (const auto& [e, c] : p.terms()) {
        json t = {{"coeff", to_json(c)}, {"exps", e}};
        if (marker) t["marker"] = *marker;
        a.push_back(std::move(t));
    }
    return a;
}

inline json to_json(const MultiPoly& p) { return terms_json(p); }

inline void add_terms(const json& terms, std::size_t arity, const std::string& ctx, const std::function<void(int, const MultiPoly&)>& sink) {
    if (!terms.is_array()) throw SchemaError(ctx + ": expected a list of terms");
    for (const auto& t : terms) {
        const Rational c = rational_from_json(field(t, "coeff", ctx), ctx);
        const json& e = field(t, "exps", ctx);
        if (!e.is_array() || e.size() != arity) throw SchemaError(ctx + ": exponent vector must have length " + std::to_string(arity));
        Exponents exps;
        for (const auto& x : e) {
            if (!x.is_number_integer() || x.get<int>() < 0) throw SchemaError(ctx + ": exponents must be non-negative integers");
            exps.push_back(x.get<int>());
        }
        int marker = 0;
        if (t.contains("marker")) {
            if (!t["marker"].is_number_integer() || t["marker"].get<int>() < 0) throw SchemaError(ctx + ": marker must be a non-negative integer");
            marker = t["marker"].get<int>();
        }
        sink(marker, MultiPoly::monomial(exps, c));
    }
}

inline MultiPoly multipoly_from_json(const json& j, std::size_t arity, const std::string& ctx) {
    MultiPoly p(arity);
    add_terms(j, arity, ctx, [&](int marker, const MultiPoly& m) {
        if (marker != 0) throw SchemaError(ctx + ": marker term in a polynomial");
        p += m;
    });
    return p;
}

/// Polynomial series serialize as a plain term list; series with a marker variable as
/// {"marker_var", "truncation", "truncated", "terms"} with per-term "marker".
inline json to_json(const ExpSeries& s) {
    if (!s.marker_var()) return terms_json(s.polynomial_part());
    json terms = json::array();
    for (const auto& [k, p] : s.parts())
        for (auto& t : terms_json(p, k)) terms.push_back(std::move(t));
    return {{"marker_var", *s.marker_var()}, {"truncation", s.truncation()}, {"truncated", s.truncated()}, {"terms", terms}};
}

inline ExpSeries expseries_from_json(const json& j, std::size_t arity, const std::string& ctx) {
    if (j.is_array()) return ExpSeries::polynomial(multipoly_from_json(j, arity, ctx));
    const json& mv = field(j, "marker_var", ctx);
    const json& tr = field(j, "truncation", ctx);
    if (!mv.is_number_integer() || !tr.is_number_integer()) throw SchemaError(ctx + ": marker_var and truncation must be integers");
    if (mv.get<long>() < 0 || static_cast<std::size_t>(mv.get<long>()) >= arity) throw SchemaError(ctx + ": marker_var out of range");
    ExpSeries s(arity, static_cast<std::size_t>(mv.get<long>()), tr.get<int>());
    add_terms(field(j, "terms", ctx), arity, ctx, [&](int marker, const MultiPoly& m) {
        if (marker > s.truncation()) throw SchemaError(ctx + ": term beyond the truncation degree");
        s.add(marker, m);
    });
    if (j.contains("truncated")) s.set_truncated(j["truncated"].get<bool>());
    return s;
}

// ---- charts

inline json to_json(const FMChart& c) {
    return {{"n", c.dim()},
            {"eta", to_json(c.eta())},
            {"charge_d", to_json(c.charge())},
            {"unity_index", c.unity_index()},
            {"potential", to_json(c.potential())},
            {"euler", {{"linear", to_json(c.euler().linear)}, {"const", to_json(c.euler().constant)}}}};
}

inline FMChart chart_from_json(const json& j) {
    const std::string ctx = "chart";
    const json& nj = field(j, "n", ctx);
    if (!nj.is_number_integer() || nj.get<long>() < 1) throw SchemaError("chart: n must be a positive integer");
    const std::size_t n = nj.get<std::size_t>();
    const RationalMatrix eta = matrix_from_json(field(j, "eta", ctx), "chart.eta");
    if (eta.rows() != n || eta.cols() != n) throw SchemaError("chart: eta must be n x n");
    const Rational d = rational_from_json(field(j, "charge_d", ctx), "chart.charge_d");
    const json& uj = field(j, "unity_index", ctx);
    if (!uj.is_number_integer() || uj.get<long>() < 0 || uj.get<std::size_t>() >= n) throw SchemaError("chart: unity_index out of range");
    const ExpSeries F = expseries_from_json(field(j, "potential", ctx), n, "chart.potential");
    const json& ej = field(j, "euler", ctx);
    EulerField E{matrix_from_json(field(ej, "linear", "chart.euler"), "chart.euler.linear"),
                 rational_vector_from_json(field(ej, "const", "chart.euler"), "chart.euler.const")};
    return FMChart(eta, F, E, d, uj.get<std::size_t>());
}

inline FMChart read_chart(const std::string& path) { return chart_from_json(read_file(path)); }

// ---- floating point

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline double parse_double(const json& j, const std::string& ctx) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_string()) throw SchemaError(ctx + ": expected a decimal string");
    const std::string s = j.get<std::string>();
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw SchemaError(ctx + ": trailing characters in \"" + s + "\"");
        return v;
    } catch (const std::invalid_argument&) {
        throw SchemaError(ctx + ": \"" + s + "\" is not a number");
    } catch (const std::out_of_range&) {
        throw SchemaError(ctx + ": \"" + s + "\" is out of range");
    }
}

inline json to_json(std::complex<double> z) { return {{"re", format_double(z.real())}, {"im", format_double(z.imag())}}; }

inline std::complex<double> complex_from_json(const json& j, const std::string& ctx) {
    if (j.is_number() || j.is_string()) return {parse_double(j, ctx), 0.0};
    return {parse_double(field(j, "re", ctx), ctx), parse_double(field(j, "im", ctx), ctx)};
}

// "x", "yi", "x+yi", "x-yi" (also "i", "-i"); whitespace is ignored.
inline std::complex<double> parse_complex(std::string text) {
    std::erase_if(text, [](char c) { return c == ' ' || c == '\t'; });
    if (text.empty()) throw ParseError("empty complex number");
    const char* p = text.c_str();
    const char* const endp = p + text.size();
    auto number = [&](double& v, bool& imag) {
        char* e = nullptr;
        v = std::strtod(p, &e);
        if (e == p) {
            // bare i, +i, -i
            double sign = 1;
            if (*p == '+' || *p == '-') sign = *p++ == '-' ? -1 : 1;
            if (p == endp || *p != 'i') throw ParseError("bad complex number '" + text + "'");
            v = sign;
            ++p;
            imag = true;
            return;
        }
        p = e;
        imag = p != endp && *p == 'i';
        if (imag) ++p;
    };
    double a = 0, b = 0;
    bool ia = false, ib = false;
    number(a, ia);
    if (p == endp) return ia ? std::complex<double>(0, a) : std::complex<double>(a, 0);
    if (ia || (*p != '+' && *p != '-')) throw ParseError("bad complex number '" + text + "'");
    number(b, ib);
    if (p != endp || !ib) throw ParseError("bad complex number '" + text + "'");
    return {a, b};
}

inline std::vector<std::complex<double>> parse_complex_list(const std::string& text, char sep = ',') {
    std::vector<std::complex<double>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(parse_complex(item));
    if (out.empty()) throw ParseError("empty list of complex numbers");
    return out;
}

template <class Vec>
json complex_list(const Vec& v) {
    json a = json::array();
    for (auto z : v) a.push_back(to_json(std::complex<double>(z)));
    return a;
}

template <class Mat>
json complex_matrix(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(std::complex<double>(m(i, k))));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<std::complex<double>> complex_vector_from_json(const json& j, const std::string& ctx) {
    if (!j.is_array()) throw SchemaError(ctx + ": expected a list");
    std::vector<std::complex<double>> v;
    for (const auto& x : j) v.push_back(complex_from_json(x, ctx));
    return v;
}

inline Eigen::MatrixXcd complex_matrix_from_json(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw SchemaError(ctx + ": expected a non-empty list of rows");
    const auto rows = static_cast<Eigen::Index>(j.size()), cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw SchemaError(ctx + ": ragged matrix");
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], ctx);
    }
    return m;
}

}  // namespace frobforge::io
