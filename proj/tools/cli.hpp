#pragma once
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "btq/btq.hpp"
#include "btq/io.hpp"

namespace btq::cli {

enum ExitCode { kOk = 0, kInvalid = 2, kResource = 3, kInternal = 4 };

namespace detail {

inline std::string read_source(const std::string& path, std::istream& in) {
    if (path == "-") return {std::istreambuf_iterator<char>(in), {}};
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot open " + path);
    return {std::istreambuf_iterator<char>(f), {}};
}

inline Json big_list(const std::vector<Rational>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(to_string(x));
    return a;
}

inline Json big_list(const std::vector<Real>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(x.convert_to<double>());
    return a;
}

inline std::string opt_str(const std::optional<int>& d) { return d ? std::to_string(*d) : "none"; }

struct Options {
    int d = 3;
    std::uint32_t q = 2;
    int max_n = 12;
    int degree = 1;
    std::string matrix, label, from, to, format = "json", lambda1, lambda2, normalization = "pgl";
    bool in_t = false, enumerate = false, list = false, l2 = false, regression = false;
    std::size_t max_order = kStabilizerEnumerationBound;
    int radius = 6, samples = 5;
    std::uint64_t seed = 1;
};

inline void cmd_domain(const Options& o, std::ostream& out) {
    if (o.d < 2) throw InvalidInput("d must be >= 2");
    auto g = build_graph(o.d, o.q, o.max_n);
    if (o.format == "dot")
        out << graph_to_dot(g);
    else if (o.format == "text")
        out << graph_to_text(g);
    else
        out << graph_to_json(g).dump(2) << "\n";
}

inline void cmd_neighbors(const Options& o, std::istream& in, std::ostream& out) {
    if (!o.label.empty() == !o.matrix.empty()) throw InvalidInput("give exactly one of --n or --matrix");
    Json res;
    if (o.in_t) {
        if (o.label.empty()) throw InvalidInput("--in-t needs --n");
        auto n = VertexLabel::parse(o.label);
        Json a = Json::array();
        for (const auto& m : neighbors_in_T(n, o.degree)) a.push_back(m.values());
        res = {{"label", n.values()}, {"degree", o.degree}, {"neighbors_in_T", a}};
    } else {
        BuildingVertex v = o.label.empty() ? vertex_normal_form(matrix_from_text(detail::read_source(o.matrix, in)))
                                           : label_vertex(VertexLabel::parse(o.label), o.q);
        Json a = Json::array();
        for (const auto& w : neighbors(v, o.degree)) {
            Json x = vertex_to_json(w);
            x["t_label"] = reduce_to_T(w).label.values();
            a.push_back(std::move(x));
        }
        res = {{"vertex", vertex_to_json(v)}, {"degree", o.degree}, {"neighbors", a}};
    }
    out << res.dump(2) << "\n";
}

inline int cmd_stabilizer(const Options& o, std::ostream& out) {
    auto n = VertexLabel::parse(o.label);
    const bool gl = o.normalization == "gl";
    auto order = stabilizer_order(n, o.q, gl);
    out << order.str() << "\n";
    if (!o.enumerate) return kOk;
    if (gl) throw InvalidInput("enumeration is modulo scalars; use the pgl normalization");
    auto els = stabilizer_enumerate(n, o.q, o.max_order);
    out << "enumerated " << els.size() << "\n";
    if (o.list)
        for (const auto& g : els) out << g.str() << "\n";
    invariant(BigInt(els.size()) == order, "enumerated stabilizer size differs from its closed form");
    return kOk;
}

inline void cmd_reduce(const Options& o, std::istream& in, std::ostream& out) {
    auto m = matrix_from_text(detail::read_source(o.matrix, in));
    auto r = reduce_to_T(vertex_normal_form(m));
    Json w = matrix_to_json(r.witness);
    out << Json{{"label", r.label.values()}, {"witness", w}}.dump(2) << "\n";
}

inline void cmd_covolume(const Options& o, std::ostream& out) {
    const bool gl = o.normalization == "gl";
    auto exact = covolume(o.d, o.q, gl);
    auto part = covolume_partial(o.d, o.q, o.max_n, gl);
    auto tail = covolume_tail_bound(o.d, o.q, o.max_n, gl);
    Rational gap = exact - part;
    if (o.format == "json") {
        out << Json{{"d", o.d},
                    {"q", o.q},
                    {"normalization", gl ? "gl" : "pgl"},
                    {"covolume", to_string(exact)},
                    {"max_n1", o.max_n},
                    {"partial", to_string(part)},
                    {"gap", to_string(gap)},
                    {"gap_approx", gap.convert_to<double>()},
                    {"tail_bound", to_string(tail)}}
                   .dump(2)
            << "\n";
        return;
    }
    out << "covolume " << to_string(exact) << "\n";
    out << "partial " << to_string(part) << "\n";
    out << "gap " << to_string(gap) << "\n";
    out << "gap_approx " << gap.convert_to<double>() << "\n";
    out << "tail_bound_approx " << tail.convert_to<double>() << "\n";
}

inline void cmd_hecke_check(const Options& o, std::ostream& out) {
    if (o.max_n < 3) throw InvalidInput("hecke-check needs --max-n >= 3");
    auto g = build_graph(o.d, o.q, o.max_n);
    out << "nodes " << g.nodes.size() << " edges " << g.edges.size() << "\n";
    out << "row_sums ok at " << row_sum_check(g) << " interior nodes\n";
    for (int s = 0; s < o.samples; ++s) {
        const std::uint64_t seed = o.seed + 3 * s;
        if (g.d >= 3) {
            auto c = commutator_check(g, random_function(g, seed, o.max_n));
            invariant(c.max_abs == 0, "A_1 and A_{d-1} do not commute");
            out << "commutator sample " << s << " max " << to_string(c.max_abs) << " over " << c.checked << "\n";
        }
        auto [x, y] = adjointness_check(g, random_function(g, seed + 1, o.max_n - 2),
                                        random_function(g, seed + 2, o.max_n - 2));
        invariant(x == y, "A_{d-1} is not the adjoint of A_1");
        out << "adjoint sample " << s << " <A_1 f,g> = <f,A_" << o.d - 1 << " g> = " << to_string(x) << "\n";
    }
}

template <class S>
Json eigen_json_d3(const Options& o, const S& l1, const S& l2) {
    auto ev = eigenvector_d3<S>(l1, l2, o.q, o.max_n);
    Json vals = Json::array();
    for (std::size_t u = 0; u < ev.graph.nodes.size(); ++u)
        vals.push_back({{"label", ev.graph.nodes[u].label.values()}, {"value", scalar_str(*ev.f.values[u])}});
    decltype(abs_value(l1)) worst = 0;
    for (const auto& r : ev.second_residuals) worst = std::max(worst, decltype(worst)(abs_value(r.second)));
    Json j = {{"d", 3},
              {"q", o.q},
              {"max_n1", o.max_n},
              {"lambda1", scalar_str(l1)},
              {"lambda2", scalar_str(l2)},
              {"values", vals},
              {"second_recursion_max_residual", scalar_str(S(worst))},
              {"eigen_residual", scalar_str(S(eigen_residual(ev.graph, ev.f, l1, l2)))}};
    if (o.l2) j["l2_partial"] = big_list(l2_partial_norm(ev.graph, ev.f));
    return j;
}

template <class S>
Json eigen_json_d2(const Options& o, const S& l) {
    auto f = eigenvector_d2_recursion<S>(l, o.q, o.max_n);
    Json vals = Json::array();
    for (int n = 0; n <= o.max_n; ++n) vals.push_back({{"label", {n, 0}}, {"value", scalar_str(f[n])}});
    Json j = {{"d", 2}, {"q", o.q}, {"max_n1", o.max_n}, {"lambda1", scalar_str(l)}, {"values", vals}};
    auto g = build_graph(2, o.q, o.max_n);
    DomainFunction<S> df{{}};
    for (const auto& nd : g.nodes) df.values.push_back(f[nd.label[0]]);
    j["eigen_residual"] = scalar_str(S(eigen_residual(g, df, l, l)));
    if constexpr (std::is_same_v<S, Rational>) {
        if (l * l != 4 * Rational(o.q)) {
            auto cf = eigenvector_d2_closed_form(l, o.q, o.max_n);
            bool same = true;
            for (int n = 0; n <= o.max_n; ++n) same = same && cf[n].to_rational() == std::optional<Rational>(f[n]);
            j["closed_form_agrees"] = same;
        }
    } else {
        if (abs(l * l - Complex(Real(4 * o.q))) > Real("1e-30")) {
            auto cf = eigenvector_d2_closed_form(l, o.q, o.max_n);
            Real worst = 0;
            for (int n = 0; n <= o.max_n; ++n)
                worst = std::max(worst, Real(abs(cf[n] - f[n]) / std::max(Real(1), Real(abs(f[n])))));
            j["closed_form_max_rel_diff"] = worst.convert_to<double>();
        }
    }
    if (o.l2) j["l2_partial"] = big_list(l2_partial_norm(g, df));
    return j;
}

inline void cmd_eigenvector(const Options& o, std::ostream& out) {
    if (o.lambda1.empty()) throw InvalidInput("--lambda1 is required");
    if (o.d != 2 && o.d != 3) throw InvalidInput("eigenvector supports d = 2 and d = 3");
    if (o.d == 3 && o.lambda2.empty()) throw InvalidInput("--lambda2 is required for d = 3");
    const bool cplx = is_complex_literal(o.lambda1) || is_complex_literal(o.lambda2);
    Json j;
    if (o.d == 3) {
        j = cplx ? eigen_json_d3<Complex>(o, parse_complex(o.lambda1), parse_complex(o.lambda2))
                 : eigen_json_d3<Rational>(o, parse_rational(o.lambda1), parse_rational(o.lambda2));
        if (o.regression) {
            if (cplx) throw InvalidInput("closed-form regression needs rational eigenvalues");
            Json reg = Json::array();
            for (const auto& c : closed_form_regression(parse_rational(o.lambda1), parse_rational(o.lambda2), o.q))
                reg.push_back({{"label", c.label.values()},
                               {"match", c.match()},
                               {"expected", to_string(c.expected)},
                               {"note", c.reading_note}});
            j["regression"] = reg;
        }
    } else {
        j = cplx ? eigen_json_d2<Complex>(o, parse_complex(o.lambda1)) : eigen_json_d2<Rational>(o, parse_rational(o.lambda1));
    }
    if (o.format == "text") {
        for (const auto& v : j["values"]) {
            auto lab = v["label"].get<std::vector<int>>();
            std::string s;
            for (std::size_t i = 0; i < lab.size(); ++i) s += (i ? "," : "") + std::to_string(lab[i]);
            out << s << " " << v["value"].get<std::string>() << "\n";
        }
        return;
    }
    out << j.dump(2) << "\n";
}

inline void cmd_distance(const Options& o, std::ostream& out) {
    auto a = VertexLabel::parse(o.from), b = VertexLabel::parse(o.to);
    if (a.dim() != b.dim()) throw InvalidInput("labels of different dimension");
    auto x = label_vertex(a, o.q), y = label_vertex(b, o.q);
    auto p = paper_distance_formulas(a.values(), b.values());
    auto bfs = bfs_distance(x, y, o.radius);
    auto c1 = bfs_color1_distance(x, y, o.radius);
    out << "bfs " << opt_str(bfs) << "\n";
    out << "bfs_color1 " << opt_str(c1) << "\n";
    out << "dis_b " << p.dis_b << "\n";
    out << "dis_b1 " << p.dis_b1 << "\n";
    if (bfs && *bfs != p.dis_b) out << "note dis_b differs from the BFS edge distance\n";
    if (c1 && *c1 != p.dis_b1) out << "note dis_b1 differs from the directed color-1 BFS distance\n";
}

} // namespace detail

// argv[0] is the program name
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quotient of the Bruhat-Tits building of PGL_d(F_q((1/t))) by PGL_d(F_q[t])", "btq"};
    app.require_subcommand(1);
    detail::Options o;

    auto add_q = [&](CLI::App* s) { s->add_option("--q", o.q, "field size, prime")->check(CLI::PositiveNumber); };
    auto add_d = [&](CLI::App* s) { s->add_option("--d", o.d, "dimension")->check(CLI::Range(2, 8)); };
    auto add_maxn = [&](CLI::App* s, const char* help) { s->add_option("--max-n", o.max_n, help)->check(CLI::Range(0, 400)); };
    auto add_norm = [&](CLI::App* s) {
        s->add_option("--normalization", o.normalization, "pgl or gl stabilizer orders")
            ->check(CLI::IsMember({"pgl", "gl"}));
    };

    auto* dom = app.add_subcommand("domain", "quotient graph of labels with n_1 <= max-n");
    add_d(dom);
    add_q(dom);
    add_maxn(dom, "largest n_1");
    dom->add_option("--format", o.format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));

    auto* nb = app.add_subcommand("neighbors", "building or in-T neighbors");
    add_d(nb);
    add_q(nb);
    nb->add_option("--n", o.label, "label, e.g. 2,1,0");
    nb->add_option("--matrix", o.matrix, "matrix literal file, - for stdin");
    nb->add_option("--degree", o.degree, "neighbor degree k")->required();
    nb->add_flag("--in-t", o.in_t, "labels of neighbors inside T");

    auto* st = app.add_subcommand("stabilizer", "order of the stabilizer of a label");
    add_d(st);
    add_q(st);
    st->add_option("--n", o.label, "label")->required();
    st->add_flag("--enumerate", o.enumerate, "also enumerate the group");
    st->add_flag("--list", o.list, "print enumerated elements");
    st->add_option("--max-order", o.max_order, "enumeration bound");
    add_norm(st);

    auto* rd = app.add_subcommand("reduce", "move a lattice into T");
    rd->add_option("--matrix", o.matrix, "matrix literal file, - for stdin")->required();

    auto* cv = app.add_subcommand("covolume", "exact covolume and partial sums");
    add_d(cv);
    add_q(cv);
    add_maxn(cv, "partial sum over n_1 <= max-n");
    add_norm(cv);
    cv->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* hk = app.add_subcommand("hecke-check", "commutator, adjointness and row sums");
    add_d(hk);
    add_q(hk);
    add_maxn(hk, "truncation");
    hk->add_option("--samples", o.samples, "random functions")->check(CLI::Range(1, 1000));
    hk->add_option("--seed", o.seed, "seed");

    auto* ev = app.add_subcommand("eigenvector", "simultaneous Hecke eigenvector");
    add_d(ev);
    add_q(ev);
    add_maxn(ev, "truncation");
    ev->add_option("--lambda1", o.lambda1, "rational (3/2) or complex (1.5+2i)");
    ev->add_option("--lambda2", o.lambda2, "second eigenvalue, d = 3");
    ev->add_flag("--l2", o.l2, "partial weighted L2 norms per shell");
    ev->add_flag("--regression", o.regression, "compare with tabulated closed forms");
    ev->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* ds = app.add_subcommand("distance", "BFS distances against the label formulas");
    add_d(ds);
    add_q(ds);
    ds->add_option("--from", o.from, "label")->required();
    ds->add_option("--to", o.to, "label")->required();
    ds->add_option("--radius", o.radius, "BFS radius")->check(CLI::Range(0, 12));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream so, se;
        int code = app.exit(e, so, se);
        out << so.str();
        err << se.str();
        return code == 0 ? kOk : kInvalid;
    }

    try {
        check_field(o.q);
        // an explicit --d must agree with any label given
        for (auto* sub : {nb, st, ds})
            if (sub->parsed() && sub->count("--d"))
                for (const auto* lab : {&o.label, &o.from, &o.to})
                    if (!lab->empty() && VertexLabel::parse(*lab).dim() != o.d)
                        throw InvalidInput("label " + *lab + " does not have d = " + std::to_string(o.d) + " entries");
        if (dom->parsed())
            detail::cmd_domain(o, out);
        else if (nb->parsed())
            detail::cmd_neighbors(o, in, out);
        else if (st->parsed())
            return detail::cmd_stabilizer(o, out);
        else if (rd->parsed())
            detail::cmd_reduce(o, in, out);
        else if (cv->parsed()) {
            if (o.format == "json" && !cv->count("--format")) o.format = "text";
            detail::cmd_covolume(o, out);
        } else if (hk->parsed())
            detail::cmd_hecke_check(o, out);
        else if (ev->parsed())
            detail::cmd_eigenvector(o, out);
        else if (ds->parsed())
            detail::cmd_distance(o, out);
        return kOk;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const ResourceLimit& e) {
        err << "resource bound exceeded: " << e.what() << "\n";
        return kResource;
    } catch (const InvariantViolation& e) {
        err << "internal invariant violated: " << e.what() << "\n";
        return kInternal;
    } catch (const std::bad_alloc&) {
        err << "resource bound exceeded: out of memory\n";
        return kResource;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

} // namespace btq::cli
