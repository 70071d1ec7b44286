#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "frobforge/frobforge.hpp"

using namespace frobforge;
using io::json;

namespace {

// "-" or empty means standard output
void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f) throw ValidationError("cannot write '" + out + "'");
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

void emit(const json& j, const std::string& out, int indent = 2) { emit(j.dump(indent), out); }

std::vector<cplx> complex_point(const std::string& text, std::size_t n, const char* what) {
    const auto v = io::parse_complex_list(text);
    if (v.size() != n) throw ValidationError(std::string(what) + ": expected " + std::to_string(n) + " coordinates, got " + std::to_string(v.size()));
    return v;
}

std::vector<Rational> rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

json hp_complex(const hp::Complex& z, unsigned digits) {
    return {{"re", hp::to_string(z.real(), digits)}, {"im", hp::to_string(z.imag(), digits)}, {"digits", digits}};
}

json hp_matrix(const hp::CMatrixHP& m, unsigned digits) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(hp_complex(m(i, j), digits));
        rows.push_back(std::move(row));
    }
    return rows;
}

json series_matrix(const SeriesMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(io::to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// A bare matrix, or an object holding it under "S".
RationalMatrix read_stokes(const std::string& path) {
    const json j = io::read_file(path);
    const json& m = j.is_object() ? io::field(j, "S", path) : j;
    RationalMatrix S = io::matrix_from_json(m, path);
    if (!S.square()) throw SchemaError(path + ": S must be square");
    return S;
}

std::string csv_header(std::size_t n) {
    std::string h = "s";
    for (std::size_t i = 1; i <= n; ++i) h += ",re_u" + std::to_string(i) + ",im_u" + std::to_string(i);
    for (std::size_t j = 1; j <= n; ++j)
        for (std::size_t k = j + 1; k <= n; ++k) h += ",re_V" + std::to_string(j) + std::to_string(k) + ",im_V" + std::to_string(j) + std::to_string(k);
    for (std::size_t i = 1; i <= n; ++i) h += ",re_H" + std::to_string(i) + ",im_H" + std::to_string(i);
    return h + ",re_log_tau,im_log_tau\n";
}

std::string csv_row(const iso::Sample& s) {
    std::string r = io::format_double(s.s);
    auto put = [&r](cplx z) { r += "," + io::format_double(z.real()) + "," + io::format_double(z.imag()); };
    for (Eigen::Index i = 0; i < s.u.size(); ++i) put(s.u(i));
    for (auto z : s.upper) put(z);
    for (auto z : s.H) put(z);
    put(s.log_tau);
    return r + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frobforge: Frobenius manifolds, isomonodromy and monodromy data"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    std::function<void()> action;
    auto on = [&action](CLI::App* sub, std::function<void()> f) { sub->callback([&action, f] { action = f; }); };

    std::string out, chart_path;

    // ---- singularity-an
    int an_n = 3;
    auto* an_build = app.add_subcommand("an-build", "Build the A_n chart in flat coordinates");
    an_build->add_option("--n", an_n, "n of A_n")->required()->check(CLI::Range(1, 12));
    an_build->add_option("--out", out, "Output chart JSON (default stdout)");
    on(an_build, [&] { emit(io::to_json(an::build_an_chart(an_n)), out); });

    std::string s_text;
    auto* an_crit = app.add_subcommand("an-critical", "Critical values of x^{n+1} + s_1 x^{n-1} + ... + s_n");
    an_crit->add_option("--n", an_n, "n of A_n")->required()->check(CLI::Range(1, 12));
    an_crit->add_option("--s", s_text, "Comma-separated rational parameters s_1..s_n")->required();
    on(an_crit, [&] {
        const auto s = rational_list(s_text);
        if (s.size() != static_cast<std::size_t>(an_n)) throw ValidationError("an-critical: expected " + std::to_string(an_n) + " parameters");
        emit(io::complex_list(an::critical_values(an::make_unfolding(an_n), s)), "");
    });

    // ---- quantum-p2
    int degree = 5;
    auto* qh_p2 = app.add_subcommand("qh-p2", "Quantum cohomology chart of P^2 truncated at e^{D t2}");
    qh_p2->add_option("--degree", degree, "Truncation degree D")->required()->check(CLI::Range(0, 12));
    qh_p2->add_option("--out", out, "Output chart JSON (default stdout)");
    on(qh_p2, [&] {
        const auto q = qh::build_p2_chart(degree);
        emit(io::to_json(q.chart), out);
        if (!out.empty() && out != "-") emit(json{{"degree", degree}, {"N", io::to_json(q.N)}}, "", -1);
    });

    int pd = 2;
    auto* pd_data = app.add_subcommand("pd-data", "Classical data (eta, mu, R) of P^d");
    pd_data->add_option("--d", pd, "d")->required()->check(CLI::Range(1, 64));
    on(pd_data, [&] {
        const auto c = qh::pd_classical_data(pd);
        emit(json{{"eta", io::to_json(c.eta)}, {"mu", io::to_json(c.mu)}, {"R", io::to_json(c.R)}}, "");
    });

    // ---- frobenius-core
    auto* wdvv = app.add_subcommand("wdvv-check", "Exact WDVV residuals of a chart");
    wdvv->add_option("--chart", chart_path, "Chart JSON")->required();
    int wdvv_status = 0;
    on(wdvv, [&] {
        const auto rep = check_wdvv(io::read_chart(chart_path));
        std::cout << "residuals: " << rep.nonzero << '\n';
        if (rep.truncated) std::cout << "exact through marker degree " << rep.truncation << '\n';
        if (!rep.passed()) wdvv_status = 1;
    });

    auto* axioms = app.add_subcommand("axioms", "Unity and quasihomogeneity checks");
    axioms->add_option("--chart", chart_path, "Chart JSON")->required();
    int axioms_status = 0;
    on(axioms, [&] {
        const FMChart chart = io::read_chart(chart_path);
        const auto rep = check_axioms(chart);
        json j{{"unity", rep.unity_ok},
               {"unity_failures", rep.unity_failures},
               {"quasihomogeneous", rep.quasihomogeneous},
               {"remainder", io::to_json(rep.remainder)},
               {"note", rep.note},
               {"central_charge", io::to_json(virasoro_central_charge(chart))}};
        emit(j, "");
        if (!rep.passed()) axioms_status = 1;
    });

    // ---- semisimple-frame
    std::string t_text, t1_text;
    auto* canonical = app.add_subcommand("canonical", "Canonical coordinates and frame at a point");
    canonical->add_option("--chart", chart_path, "Chart JSON")->required();
    canonical->add_option("--t", t_text, "Flat coordinates, e.g. \"0.3+0.1i,-1.2,0.8i\"")->required();
    on(canonical, [&] {
        const FMChart chart = io::read_chart(chart_path);
        const auto fr = canonical_frame(chart, complex_point(t_text, chart.dim(), "--t"));
        emit(json{{"u", io::complex_list(fr.u)}, {"Psi", io::complex_matrix(fr.Psi)}, {"V", io::complex_matrix(fr.V)}}, "");
    });

    // ---- isomonodromy
    auto* isomono = app.add_subcommand("isomonodromy", "Isomonodromic deformations");
    isomono->require_subcommand(1);
    int iso_n = 3;
    std::string v0_path, path_text;
    double tol = 1e-10;
    auto* iso_run = isomono->add_subcommand("run", "Integrate V along a polyline in u-space, CSV output");
    iso_run->add_option("--n", iso_n, "Dimension")->required()->check(CLI::Range(2, 32));
    iso_run->add_option("--v0", v0_path, "JSON skew matrix V(u_0), bare or under \"V\"")->required();
    iso_run->add_option("--path", path_text, "Vertices u_0;u_1;... each a comma-separated complex list")->required();
    iso_run->add_option("--tol", tol, "Integrator tolerance")->check(CLI::PositiveNumber);
    iso_run->add_option("--out", out, "Output CSV (default stdout)");
    on(iso_run, [&] {
        const json j = io::read_file(v0_path);
        const CMatrix V0 = io::complex_matrix_from_json(j.is_object() ? io::field(j, "V", v0_path) : j, v0_path);
        std::vector<CVector> path;
        std::stringstream ss(path_text);
        std::string vertex;
        while (std::getline(ss, vertex, ';')) {
            const auto p = complex_point(vertex, static_cast<std::size_t>(iso_n), "--path");
            path.push_back(Eigen::Map<const CVector>(p.data(), static_cast<Eigen::Index>(p.size())));
        }
        if (path.size() < 2) throw ValidationError("--path needs at least two vertices");
        const auto tr = iso::integrate(iso::State::from(path[0], V0), path, tol);
        std::string csv = csv_header(static_cast<std::size_t>(iso_n));
        for (const auto& s : tr.samples) csv += csv_row(s);
        emit(csv, out);
    });

    auto* gfun = app.add_subcommand("gfunction", "G-function difference between two points of a chart");
    gfun->add_option("--chart", chart_path, "Chart JSON")->required();
    gfun->add_option("--t0", t_text, "Start point")->required();
    gfun->add_option("--t1", t1_text, "End point")->required();
    gfun->add_option("--tol", tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
    on(gfun, [&] {
        const FMChart chart = io::read_chart(chart_path);
        const auto g = iso::g_function(NumericChart(chart), iso::straight_path(complex_point(t_text, chart.dim(), "--t0"), complex_point(t1_text, chart.dim(), "--t1")), tol);
        emit(json{{"t0", io::complex_list(g.t0)},
                  {"t1", io::complex_list(g.t1)},
                  {"delta_log_tau", io::to_json(g.delta_log_tau)},
                  {"delta_log_J", io::to_json(g.delta_log_J)},
                  {"delta_G", io::to_json(g.delta_G)},
                  {"quadrature_error", io::format_double(g.quadrature_error)},
                  {"samples", g.samples}},
             "");
    });

    // ---- descendents-hierarchy
    int order = 3;
    auto* descendents = app.add_subcommand("descendents", "Two-point descendent table Omega_{a,p;b,q}");
    descendents->add_option("--chart", chart_path, "Chart JSON")->required();
    descendents->add_option("--order", order, "Largest p + q")->check(CLI::Range(0, 12));
    descendents->add_option("--out", out, "Output JSON (default stdout)");
    on(descendents, [&] {
        const FMChart chart = io::read_chart(chart_path);
        const auto t = desc::omega_table(chart, order);
        json blocks = json::array();
        for (int p = 0; p <= order; ++p)
            for (int q = 0; p + q <= order; ++q) blocks.push_back({{"p", p}, {"q", q}, {"omega", series_matrix(t.block(p, q))}});
        emit(json{{"order", order}, {"n", t.n}, {"blocks", blocks}}, out);
    });

    int alpha = 1, flow_p = 0;
    auto* flow = app.add_subcommand("flow", "Hierarchy flow t_{p}^{alpha}: u_T = A(u) u_X");
    flow->add_option("--chart", chart_path, "Chart JSON")->required();
    flow->add_option("--alpha", alpha, "alpha, 1-based")->required();
    flow->add_option("--p", flow_p, "p >= 0")->required()->check(CLI::Range(0, 12));
    on(flow, [&] {
        const FMChart chart = io::read_chart(chart_path);
        if (alpha < 1 || static_cast<std::size_t>(alpha) > chart.dim()) throw ValidationError("--alpha must be in 1.." + std::to_string(chart.dim()));
        const auto f = desc::hierarchy_flow(chart, static_cast<std::size_t>(alpha - 1), flow_p);
        emit(json{{"alpha", alpha}, {"p", flow_p}, {"A", series_matrix(f.A)}}, "");
    });

    // ---- monodromy-data
    auto* stokes = app.add_subcommand("stokes", "Stokes matrices");
    stokes->require_subcommand(1);
    auto* stokes_pd = stokes->add_subcommand("pd", "Stokes matrix of P^d, s_ij = binom(d+1, j-i)");
    stokes_pd->add_option("--d", pd, "d")->required()->check(CLI::Range(1, 64));
    on(stokes_pd, [&] { emit(io::to_json(mono::pd_stokes(pd)), "", -1); });

    auto* connection = app.add_subcommand("connection", "Connection matrices");
    connection->require_subcommand(1);
    unsigned digits = 0;
    bool raw = false;
    auto* connection_pd = connection->add_subcommand("pd", "Connection matrix C = C'C'' of P^d and its compatibility residual");
    connection_pd->add_option("--d", pd, "d")->required()->check(CLI::Range(1, 32));
    connection_pd->add_option("--digits", digits, "Working precision (default FROBFORGE_PRECISION or 30)")->check(CLI::Range(10, 10000));
    connection_pd->add_flag("--raw", raw, "Use the unnormalized prefactor of C'");
    connection_pd->add_option("--out", out, "Output JSON (default stdout)");
    on(connection_pd, [&] {
        const unsigned dg = digits ? digits : hp::default_digits();
        const auto norm = raw ? mono::ConnectionNormalization::Raw : mono::ConnectionNormalization::Compatible;
        const auto c = mono::pd_connection(pd, dg, norm);
        const auto m = mono::pd_monodromy_data(pd, dg, norm);
        const auto rep = mono::check_compatibility(m, 1e-8);
        hp::PrecisionGuard g(dg);
        json A = json::array();
        for (const auto& a : c.A) A.push_back(hp_complex(a, dg));
        emit(json{{"d", pd},
                  {"digits", dg},
                  {"normalization", raw ? "raw" : "compatible"},
                  {"A", A},
                  {"Cprime", hp_matrix(c.Cprime, dg)},
                  {"Cdoubleprime", hp_matrix(c.Cdoubleprime, dg)},
                  {"C", hp_matrix(c.C, dg)},
                  {"S", io::to_json(m.S)},
                  {"compatibility_residual", hp::to_string(rep.residual, 6)},
                  {"compatible", rep.passed}},
             out);
    });

    std::string s_path, word_text;
    auto* braid = app.add_subcommand("braid", "Apply a braid word to a Stokes matrix");
    braid->add_option("--s", s_path, "JSON matrix S, bare or under \"S\"")->required();
    braid->add_option("--word", word_text, "Generators, e.g. \"1,-2,1\" (negative = inverse)")->required();
    braid->add_option("--out", out, "Output JSON (default stdout)");
    on(braid, [&] {
        const RationalMatrix S = read_stokes(s_path);
        if (!mono::is_unit_upper_triangular(S)) throw ValidationError("braid: S must be unit upper triangular");
        const auto word = mono::parse_word(word_text);
        emit(json{{"word", word}, {"S", io::to_json(mono::apply_word(S, word))}}, out, -1);
    });

    int depth = 3;
    std::size_t cap = 1000;
    auto* orbit = app.add_subcommand("orbit", "Braid orbit of a Stokes matrix modulo sign diagonals");
    orbit->add_option("--s", s_path, "JSON matrix S, bare or under \"S\"")->required();
    orbit->add_option("--depth", depth, "Maximal word length")->check(CLI::Range(0, 64));
    orbit->add_option("--cap", cap, "Maximal number of orbit elements")->check(CLI::PositiveNumber);
    orbit->add_option("--out", out, "Output JSON (default stdout)");
    on(orbit, [&] {
        const auto o = mono::braid_orbit(read_stokes(s_path), depth, cap);
        json entries = json::array();
        for (const auto& e : o.entries) entries.push_back({{"word", e.word}, {"S", io::to_json(e.S)}});
        emit(json{{"depth", o.depth}, {"truncated", o.truncated}, {"size", o.entries.size()}, {"entries", entries}}, out);
    });

    // ---- acceptance suite
    std::optional<unsigned> seed;
    std::vector<int> only;
    auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
    selftest->add_option("--seed", seed, "Seed for the randomized criteria (default: pinned per criterion)");
    selftest->add_option("--only", only, "Criterion ids to run")->delimiter(',')->check(CLI::Range(1, 13));
    int selftest_status = 0;
    on(selftest, [&] {
        selftest::Options opt;
        opt.seed = seed;
        opt.only.insert(only.begin(), only.end());
        const auto results = selftest::run_all(opt);
        selftest::print(std::cout, results);
        for (const auto& r : results)
            if (!r.passed) selftest_status = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        std::cerr << "run with --help for usage\n";
        return 1;
    }

    try {
        action();
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const SchemaError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 1;
    } catch (const AlgebraError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const NumericError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 2;
    }
    return wdvv_status | axioms_status | selftest_status;
}
