#pragma once
// Command line front end. Everything goes through run_cli so the tests can
// drive it without spawning a process.

#include <insep/kangaroo.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace insep {

// exit codes
inline constexpr int kOk = 0, kChecksFailed = 1, kUsage = 2;

// ---------------------------------------------------------------- rendering

// y up, z to the right, holes at p*N^2 as open circles
inline std::string render_svg(const ResidueSeries& F) {
    const int s = 28, pad = 36;
    auto N = F.polygon();
    int amax = 1, bmax = 1;
    for (auto& [e, c] : F.poly().terms()) {
        amax = std::max(amax, e.a);
        bmax = std::max(bmax, e.b);
    }
    amax += 1;
    bmax += 1;
    int W = 2 * pad + bmax * s, H = 2 * pad + amax * s;
    auto X = [&](double b) { return pad + b * s; };
    auto Y = [&](double a) { return H - pad - a * s; };
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' '
      << H << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // the region N(F), clipped to the box
    o << "<path class=\"polygon\" d=\"M" << X(N.top().b) << ',' << Y(amax);
    for (auto& v : N.vertices) o << " L" << X(v.b) << ',' << Y(v.a);
    o << " L" << X(bmax) << ',' << Y(N.bottom().a) << " L" << X(bmax) << ',' << Y(amax)
      << " Z\" fill=\"#dde8f4\" stroke=\"#1f4e79\" stroke-width=\"2\"/>\n";
    o << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(bmax) << "\" y2=\"" << Y(0)
      << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(0) << "\" y2=\"" << Y(amax)
      << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << X(bmax) + 6 << "\" y=\"" << Y(0) + 4 << "\" font-size=\"14\">z</text>\n";
    o << "<text x=\"" << X(0) - 4 << "\" y=\"" << Y(amax) - 8 << "\" font-size=\"14\">y</text>\n";
    unsigned p = F.p();
    for (int a = 0; a <= amax; ++a)
        for (int b = 0; b <= bmax; ++b)
            if (in_pN2({a, b}, p))
                o << "<circle class=\"hole\" cx=\"" << X(b) << "\" cy=\"" << Y(a)
                  << "\" r=\"4\" fill=\"white\" stroke=\"black\"/>\n";
    for (auto& [e, c] : F.poly().terms()) {
        bool vert = std::find(N.vertices.begin(), N.vertices.end(), e) != N.vertices.end();
        o << "<circle class=\"" << (vert ? "vertex" : "support") << "\" data-exp=\"(" << e.a << ',' << e.b << ")\" cx=\""
          << X(e.b) << "\" cy=\"" << Y(e.a) << "\" r=\"" << (vert ? 5 : 3.5) << "\" fill=\"" << (vert ? "#c0392b" : "black")
          << "\"/>\n";
    }
    o << "</svg>\n";
    return o.str();
}

// rows are y = deg .. 0; '#' vertex, '*' support, 'o' hole, '.' otherwise
inline std::string render_ascii(const ResidueSeries& F) {
    auto N = F.polygon();
    int amax = 0, bmax = 0;
    for (auto& [e, c] : F.poly().terms()) {
        amax = std::max(amax, e.a);
        bmax = std::max(bmax, e.b);
    }
    std::string s;
    for (int a = amax; a >= 0; --a) {
        std::string row = (a < 10 ? " " : "") + std::to_string(a) + " ";
        for (int b = 0; b <= bmax; ++b) {
            Exp e{a, b};
            char ch = '.';
            if (F.poly().terms().count(e)) {
                ch = std::find(N.vertices.begin(), N.vertices.end(), e) != N.vertices.end() ? '#' : '*';
            } else if (in_pN2(e, F.p())) {
                ch = 'o';
            }
            row += ch;
            row += ' ';
        }
        s += row + "\n";
    }
    return s;
}

// ---------------------------------------------------------------- commands

namespace cli {

struct Options {
    unsigned p = 2;
    std::vector<unsigned> ps;
    unsigned ext = 1;
    std::string variant = "height";
    int K = 0;
    unsigned r = 4;
    int trunc = 0;
    int depth = 64;
    std::uint64_t seed = 0;
    std::string out, svg, events;
    std::string text;
    std::string move, t;
    int count = 10;
    int degree = 8;

    Config config() const {
        Config c;
        c.p = p;
        c.ext = ext;
        c.variant = variant == "dorder" ? Variant::dorder : Variant::height;
        c.K = K;
        c.r = r;
        c.trunc = trunc;
        c.depth = depth;
        c.seed = seed;
        return c;
    }
};

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

inline void check_prime(unsigned p) {
    if (p < 2) throw Error("p must be prime");
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) throw Error("p must be prime");
}

inline std::string shift_line(const Preparation& P) {
    if (P.shift.is_zero()) return "none";
    return "y -> y + " + zpoly_str(P.shift, P.series.field());
}

inline int cmd_invariant(const Options& o, std::ostream& out) {
    auto c = o.config();
    auto I = inspect(o.text, c);
    const auto& Mi = I.height.measures;
    const auto& Mj = I.dorder.measures;
    auto vs = [](const Measures& M) {
        std::string s;
        for (auto& v : M.vertices) s += (s.empty() ? "" : " ") + std::string("(") + std::to_string(v.a) + "," + std::to_string(v.b) + ")";
        return s;
    };
    out << "series: " << I.series.str() << "\n";
    out << "shift: " << shift_line(I.height) << "\n";
    out << "prepared: " << I.height.series.str() << "\n";
    if (I.field_degree > 1) out << "field degree: " << I.field_degree << "\n";
    out << "vertices: " << vs(Mi) << "\n";
    out << "ord: " << Mi.ord << "\n";
    out << "ord_y: " << Mi.ord_y << "\n";
    out << "deg_y: " << Mi.deg_y << "\n";
    out << "ord_z: " << Mi.ord_z << "\n";
    out << "height: " << Mi.height << "\n";
    out << "width: " << Mi.width << "\n";
    out << "slope: " << Mi.slope.str() << "\n";
    out << "adjacency: " << to_string(Mi.adjacency) << "\n";
    out << "parity: " << Mi.parity << "\n";
    out << "intricacy: " << intricacy(Mi).str() << "\n";
    out << "dent shift: " << shift_line(I.dorder) << "\n";
    out << "dorder: " << Mj.dorder << "\n";
    out << "dent: " << Mj.dent.str() << "\n";
    out << "defect: " << to_string(defect(Mj)) << "\n";
    out << "adjusted dorder: " << adjusted_dorder(Mj).str() << "\n";
    auto i = invariant_i(Mi), j = invariant_j(Mj);
    if (c.variant == Variant::dorder) std::swap(i, j);
    out << "invariant " << to_string(i.variant) << ": " << i.str() << "\n";
    out << "invariant " << to_string(j.variant) << ": " << j.str() << "\n";
    out << "monomial: " << (Mi.quadrant() ? "yes" : "no") << "\n";
    if (!I.height.complete || !I.dorder.complete) out << "warning: search bounds reached\n";
    return kOk;
}

inline int cmd_resolve(const Options& o, std::ostream& out) {
    auto t = resolve(o.text, o.config());
    auto ev = detect_events(t);
    std::string js = to_json(t).dump(2) + "\n";
    if (o.out.empty()) {
        out << js;
    } else {
        emit(js, o.out, out);
        int incomplete = 0;
        for (auto& n : t.nodes) incomplete += n.status == Status::truncation_incomplete;
        out << "nodes " << t.nodes.size() << ", depth " << t.max_depth() << ", events " << ev.size() << ", failures "
            << t.failures.size() << ", incomplete " << incomplete << "\n";
        for (auto& f : t.failures) out << "  " << f << "\n";
    }
    if (!o.events.empty()) emit(events_jsonl(t), o.events, out);
    return t.passed() ? kOk : kChecksFailed;
}

inline json child_json(const BlowupResult& r) {
    json j = {{"move", r.label()}, {"total", r.total.str()}, {"strict", r.strict.str()}, {"multiplicity", r.multiplicity},
              {"order_dropped", r.order_dropped}};
    if (!r.strict.is_zero()) j["measures"] = to_json(measures(r.strict));
    return j;
}

inline int cmd_blowup(const Options& o, std::ostream& out) {
    FieldTower T(o.p, o.seed, o.ext);
    auto F = ResidueSeries::reduce(Poly::parse(o.text, T.field()));
    if (F.is_zero()) throw Error("input is a p-th power");
    json kids = json::array();
    json j = {{"schema", 1}, {"series", F.str()}, {"order", F.ord()}};
    if (!o.move.empty()) {
        Move m = o.move == "T" ? Move::T : o.move == "H" ? Move::H : o.move == "V" ? Move::V : throw Error("unknown move " + o.move);
        Code t = o.t.empty() ? 0 : T.field()->parse(o.t);
        kids.push_back(child_json(apply_move(F, m, t)));
    } else {
        auto C = enumerate_children(F, T, o.r);
        for (auto& r : C.special) kids.push_back(child_json(r));
        j["generic_monomial"] = C.generic_monomial;
        j["complete"] = C.complete;
        if (T.degree() > 1) j["field_degree"] = T.degree();
    }
    j["children"] = kids;
    emit(j.dump(2) + "\n", o.out, out);
    return kOk;
}

inline json corpus_report(const std::vector<CorpusEntry>& runs, const Options& o, bool& passed) {
    json seeds = json::array();
    std::map<unsigned, json> per;
    passed = true;
    for (auto& r : runs) {
        auto ev = detect_events(r.trace);
        int good = 0, incomplete = 0, checked = 0;
        for (auto& e : ev) good += check_conditions(e, r.trace).passed();
        for (auto& n : r.trace.nodes) incomplete += n.status == Status::truncation_incomplete;
        for (auto& e : r.trace.edges) checked += e.checked;
        bool ok = r.trace.passed() && good == static_cast<int>(ev.size());
        passed = passed && ok;
        seeds.push_back({{"p", r.p}, {"seed", r.seed}, {"nodes", r.trace.nodes.size()}, {"depth", r.trace.max_depth()},
                         {"events", ev.size()}, {"failures", r.trace.failures}, {"passed", ok}});
        auto& s = per[r.p];
        if (s.is_null()) s = {{"p", r.p}, {"seeds", 0}, {"nodes", 0}, {"checked_edges", 0}, {"failures", 0},
                              {"incomplete", 0}, {"events", 0}, {"events_passing", 0}};
        s["seeds"] = s["seeds"].get<int>() + 1;
        s["nodes"] = s["nodes"].get<std::size_t>() + r.trace.nodes.size();
        s["checked_edges"] = s["checked_edges"].get<int>() + checked;
        s["failures"] = s["failures"].get<std::size_t>() + r.trace.failures.size();
        s["incomplete"] = s["incomplete"].get<int>() + incomplete;
        s["events"] = s["events"].get<std::size_t>() + ev.size();
        s["events_passing"] = s["events_passing"].get<int>() + good;
    }
    json summary = json::array();
    for (auto& [p, s] : per) summary.push_back(s);
    auto c = o.config();
    json cfg = to_json(c);
    cfg.erase("p");
    cfg["ps"] = o.ps;
    cfg["count"] = o.count;
    cfg["degree"] = o.degree;
    return {{"schema", 1}, {"version", kVersion}, {"config", cfg}, {"seeds", seeds}, {"summary", summary}, {"passed", passed}};
}

inline int cmd_corpus(const Options& o, std::ostream& out) {
    for (unsigned p : o.ps) check_prime(p);
    if (o.degree < 2) throw Error("degree must be at least 2");
    Config base = o.config();
    auto runs = corpus_run(o.ps, o.degree, o.count, o.seed, base);
    bool passed = true;
    auto j = corpus_report(runs, o, passed);
    emit(j.dump(2) + "\n", o.out, out);
    return passed ? kOk : kChecksFailed;
}

inline int cmd_render(const Options& o, std::ostream& out) {
    FieldTower T(o.p, o.seed, o.ext);
    auto F = ResidueSeries::reduce(Poly::parse(o.text, T.field()));
    if (F.is_zero()) throw Error("input is a p-th power");
    if (!o.svg.empty()) emit(render_svg(F), o.svg, out);
    if (o.svg.empty() || o.svg != "-") out << render_ascii(F);
    return kOk;
}

}  // namespace cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Invariants and blowups of x^p + F(y,z) in characteristic p", "insep"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    cli::Options o;

    auto common = [&](CLI::App* s) {
        s->add_option("--p", o.p, "characteristic")->check(CLI::PositiveNumber);
        s->add_option("--ext", o.ext, "degree of the starting field over F_p")->check(CLI::PositiveNumber);
        s->add_option("--seed", o.seed, "seed for field choices and corpus");
    };
    auto bounds = [&](CLI::App* s) {
        s->add_option("--invariant", o.variant, "primary invariant")->check(CLI::IsMember({"height", "dorder"}));
        s->add_option("--K", o.K, "max shift degree, 0 follows the truncation")->check(CLI::NonNegativeNumber);
        s->add_option("--r", o.r, "max field degree for roots")->check(CLI::PositiveNumber);
        s->add_option("--trunc", o.trunc, "degrees kept above the order, 0 picks from the input")->check(CLI::NonNegativeNumber);
        s->add_option("--depth", o.depth, "depth cap")->check(CLI::NonNegativeNumber);
    };

    auto* inv = app.add_subcommand("invariant", "measures and both invariants of one series");
    inv->add_option("poly", o.text)->required();
    common(inv);
    bounds(inv);

    auto* res = app.add_subcommand("resolve", "resolve and write the trace");
    res->add_option("poly", o.text)->required();
    common(res);
    bounds(res);
    res->add_option("--out", o.out, "trace JSON, stdout if omitted");
    res->add_option("--events", o.events, "kangaroo events as JSON lines");

    auto* blw = app.add_subcommand("blowup", "children of the point blowup");
    blw->add_option("poly", o.text)->required();
    common(blw);
    blw->add_option("--move", o.move, "single move instead of the listing")->check(CLI::IsMember({"T", "H", "V"}));
    blw->add_option("--t", o.t, "translation for T, as a field element");
    blw->add_option("--r", o.r, "max field degree for roots")->check(CLI::PositiveNumber);
    blw->add_option("--out", o.out, "JSON output");

    auto* cor = app.add_subcommand("corpus", "random seeds, aggregate report");
    cor->add_option("--p", o.ps, "characteristics")->required();
    cor->add_option("--ext", o.ext)->check(CLI::PositiveNumber);
    cor->add_option("--seed", o.seed, "corpus seed")->required();
    cor->add_option("--count", o.count, "seeds per p")->check(CLI::NonNegativeNumber);
    cor->add_option("--degree", o.degree, "max degree of the seeds");
    bounds(cor);
    cor->add_option("--out", o.out, "report JSON");

    auto* ren = app.add_subcommand("render", "Newton polygon as SVG or text");
    ren->add_option("poly", o.text)->required();
    common(ren);
    ren->add_option("--svg", o.svg, "SVG file, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }
    try {
        if (!*cor) cli::check_prime(o.p);
        if (*inv) return cli::cmd_invariant(o, out);
        if (*res) return cli::cmd_resolve(o, out);
        if (*blw) return cli::cmd_blowup(o, out);
        if (*cor) return cli::cmd_corpus(o, out);
        return cli::cmd_render(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace insep
