#pragma once
// The resolution loop: prepare, classify, blow up the point, check that the
// invariants drop, record everything.

#include <insep/blowup.hpp>
#include <insep/monomial.hpp>

#include <json.hpp>

namespace insep {

inline constexpr const char* kVersion = "insep 0.1.0";

struct Config {
    unsigned p = 2;
    unsigned ext = 1;
    Variant variant = Variant::height;
    int K = 0;        // shift degree; 0: up to the node's cut
    unsigned r = 4;   // max tower degree
    int trunc = 0;    // window kept above each node's order; 0: four times the seed degree
    int depth = 64;
    std::uint64_t seed = 0;
    std::size_t budget = 20000;

    int window(int seed_degree) const { return trunc > 0 ? trunc : 4 * std::max(seed_degree, 2); }
    // cut: the absolute degree up to which a node's series is kept
    Bounds bounds(int cut) const { return {K > 0 ? K : cut, r, budget}; }
};

enum class Status { open, order_dropped, monomial, quasi_monomial_resolved, truncation_incomplete, depth_exceeded };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::open: return "open";
        case Status::order_dropped: return "order-dropped";
        case Status::monomial: return "monomial";
        case Status::quasi_monomial_resolved: return "quasi-monomial-resolved";
        case Status::truncation_incomplete: return "truncation-incomplete";
        default: return "depth-exceeded";
    }
}

struct TraceNode {
    std::string id, parent;
    std::string move;  // label of the move from the parent, empty at the root
    Move move_kind = Move::H;
    int depth = 0;
    ResidueSeries series;  // strict transform as received
    std::optional<int> precision;
    bool jet = false;  // prepared series only known up to precision
    Preparation prep_i, prep_j;
    Measures mi, mj;
    InvariantVector inv_i, inv_j;
    int r1 = 0, r2 = 0;  // exponents of the monomial factor
    int order = 0;
    Status status = Status::open;
    bool complete = true;
    std::optional<MonomialTree> monomial;
    MonomialWitness witness;
    unsigned witness_gen = 0;
    std::optional<QuasiMonomialRecord> quasi;
    int generic_exponent = 0;  // other T(t) points: z^(d-p) times a unit
    std::vector<std::size_t> children;
};

struct Check {
    std::string parent, child;
    bool passed = true;
};

struct TraceEdge {
    std::size_t parent = 0, child = 0;
    std::string move;
    bool checked = false;  // open -> open
    Check i, j;
    std::optional<Check> total_i, total_j;  // V children only, total transform
};

struct ResolutionTrace {
    Config config;
    std::string seed_text;
    std::vector<TraceNode> nodes;
    std::vector<TraceEdge> edges;
    std::vector<std::string> failures;
    std::string field_modulus;
    unsigned field_degree = 1;
    int window = 0;  // degrees kept above each node's order

    bool passed() const {
        if (!failures.empty()) return false;
        for (auto& n : nodes)
            if (n.status == Status::truncation_incomplete || n.status == Status::depth_exceeded) return false;
        return true;
    }
    int max_depth() const {
        int d = 0;
        for (auto& n : nodes) d = std::max(d, n.depth);
        return d;
    }
    const TraceNode* parent_of(const TraceNode& n) const {
        for (auto& m : nodes)
            if (m.id == n.parent) return &m;
        return nullptr;
    }
};

namespace detail {

inline std::string fnv(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline bool same_measures(const Measures& a, const Measures& b) {
    return a.vertices == b.vertices && a.slope == b.slope && a.dent == b.dent;
}

class Resolver {
public:
    Resolver(Config c, std::string seed, int window = 0) : cfg_(c), T_(c.p, c.seed, c.ext), forced_(window) {
        trace_.config = c;
        trace_.seed_text = std::move(seed);
    }

    ResolutionTrace run(const Poly& raw) {
        Poly own = raw;
        if (raw.field_ptr() != T_.field()) {
            // same field built by another tower
            const Field& K = raw.field();
            if (K.p() != cfg_.p || K.modulus() != T_.field()->modulus()) throw Error("input over a different field");
            own = Poly(T_.field(), raw.terms());
        }
        auto F = ResidueSeries::reduce(own);
        if (F.is_zero()) throw Error("input is a p-th power, the surface is not reduced");
        if (F.ord() < static_cast<int>(cfg_.p)) throw Error("order " + std::to_string(F.ord()) + " below p at the origin");
        int sd = 0;
        for (auto& [e, c] : own.terms()) sd = std::max(sd, e.deg());
        window_ = forced_ > 0 ? forced_ : cfg_.window(sd);
        trace_.window = window_;
        std::string rid = fnv(std::to_string(cfg_.p) + "|" + std::to_string(cfg_.ext) + "|" + F.str());
        node(F, std::nullopt, "", rid, "", Move::H, 0);
        finish();
        return std::move(trace_);
    }

private:
    Config cfg_;
    FieldTower T_;
    ResolutionTrace trace_;
    int forced_ = 0;
    int window_ = 0;

    int cut_of(const ResidueSeries& S, std::optional<int> precision) const {
        int c = S.ord() + window_;
        return precision ? std::min(c, *precision) : c;
    }

    // prepare both variants; keep the exact series unless only a jet realizes the optimum
    void prepare(TraceNode& n) {
        int cut = cut_of(n.series, n.precision);
        auto B = cfg_.bounds(cut);
        auto F = embed(n.series, T_);
        auto Fc = ResidueSeries::reduce(F.poly(), cut);
        n.prep_i = maximize_slope(Fc, T_, B);
        n.prep_j = realize_second_invariant(Fc, T_, B);
        F = embed(F, T_);
        auto exact_i = ResidueSeries::reduce(shift_y(F.poly(), embed(n.prep_i.shift, n.prep_i.series.field().generation(), T_)),
                                             n.precision);
        auto exact_j = ResidueSeries::reduce(shift_y(F.poly(), embed(n.prep_j.shift, n.prep_j.series.field().generation(), T_)),
                                             n.precision);
        if (same_measures(measures(exact_i), n.prep_i.measures) && same_measures(measures(exact_j), n.prep_j.measures)) {
            n.prep_i.series = exact_i;
            n.prep_j.series = exact_j;
        } else {
            n.jet = true;
            n.precision = cut;
        }
        n.mi = n.prep_i.measures;
        n.mj = n.prep_j.measures;
        n.inv_i = invariant_i(n.mi);
        n.inv_j = invariant_j(n.mj);
        n.r1 = n.mi.ord_y;
        n.r2 = n.mi.ord_z;
        n.complete = n.prep_i.complete && n.prep_j.complete;
    }

    void at_incomplete(std::size_t idx) {
        auto& z = trace_.nodes[idx];
        z.status = Status::truncation_incomplete;
        z.complete = false;
    }

    std::size_t node(const ResidueSeries& S, std::optional<int> precision, const std::string& parent, const std::string& id,
                     const std::string& move, Move kind, int depth) {
        std::size_t idx = trace_.nodes.size();
        trace_.nodes.push_back({});
        {
            auto& n = trace_.nodes[idx];
            n.id = id;
            n.parent = parent;
            n.move = move;
            n.move_kind = kind;
            n.depth = depth;
            n.series = S;
            n.precision = precision;
        }
        if (S.is_zero()) {
            // a jet whose transform has no term left below its precision
            if (!precision) throw Error("strict transform vanished on an exact series");
            at_incomplete(idx);
            return idx;
        }
        trace_.nodes[idx].order = S.ord();
        unsigned p = cfg_.p;
        auto at = [&]() -> TraceNode& { return trace_.nodes[idx]; };
        if (at().order < static_cast<int>(p)) {
            at().status = Status::order_dropped;
            at().mi = at().mj = measures(S);
            at().inv_i = invariant_i(at().mi);
            at().inv_j = invariant_j(at().mj);
            return idx;
        }
        if (depth > cfg_.depth) {
            at().status = Status::depth_exceeded;
            trace_.failures.push_back("depth cap exceeded at node " + id);
            return idx;
        }
        {
            if (ResidueSeries::reduce(S.poly(), cut_of(S, precision)).is_zero()) {
                // nothing survives the cut
                auto& z = at();
                z.status = Status::truncation_incomplete;
                z.mi = z.mj = measures(S);
                z.inv_i = invariant_i(z.mi);
                z.inv_j = invariant_j(z.mj);
                z.complete = false;
                return idx;
            }
        }
        prepare(at());
        auto& n = at();
        if (n.mi.quadrant()) {
            n.status = Status::monomial;
            n.witness.monomial = true;
            n.witness.exponents = n.mi.vertices.front();
            n.monomial = resolve_monomial({n.witness.exponents.a, n.witness.exponents.b}, p);
            return idx;
        }
        if (auto w = is_monomial(n.prep_i.series, T_, cfg_.bounds(cut_of(n.prep_i.series, n.precision))); w.monomial) {
            auto& m = at();
            m.status = Status::monomial;
            m.witness = w;
            m.witness_gen = T_.generation();
            m.monomial = resolve_monomial({w.exponents.a, w.exponents.b}, p);
            return idx;
        }
        if (is_quasi_monomial(at().mi)) {
            auto& m = at();
            m.status = Status::quasi_monomial_resolved;
            m.quasi = resolve_quasi_monomial(m.prep_i.series);
            if (!m.quasi->order_dropped) trace_.failures.push_back("quasi-monomial line blowups did not drop the order at " + id);
            return idx;
        }
        if (at().precision) {
            int maxdeg = 0;
            for (auto& v : at().mi.vertices) maxdeg = std::max(maxdeg, v.deg());
            if (maxdeg > *at().precision - static_cast<int>(p)) {
                at().status = Status::truncation_incomplete;
                return idx;
            }
        }
        at().status = Status::open;
        auto kids = enumerate_children(at().prep_i.series, T_, cfg_.r);
        at().generic_exponent = kids.d - static_cast<int>(p);
        if (!kids.complete) at().complete = false;
        std::optional<int> cp;
        if (at().precision) cp = *at().precision - static_cast<int>(p);
        for (auto& c : kids.special) {
            std::string label = c.label();
            std::string cid = fnv(id + "/" + label);
            std::size_t ci = node(c.strict, cp, id, cid, label, c.move, depth + 1);
            trace_.nodes[idx].children.push_back(ci);
            TraceEdge e;
            e.parent = idx;
            e.child = ci;
            e.move = label;
            auto& P = trace_.nodes[idx];
            auto& C = trace_.nodes[ci];
            bool measured = !C.mi.vertices.empty();
            if (C.status == Status::open || (C.status == Status::truncation_incomplete && measured)) {
                e.checked = true;
                e.i = {P.inv_i.str(), C.inv_i.str(), compare(C.inv_i, P.inv_i) < 0};
                e.j = {P.inv_j.str(), C.inv_j.str(), compare(C.inv_j, P.inv_j) < 0};
                if (c.move == Move::V) {
                    auto tot = embed(c.total, T_);
                    int tc = cut_of(tot, cp);
                    auto B = cfg_.bounds(tc);
                    tot = ResidueSeries::reduce(tot.poly(), tc);
                    auto ti = invariant_i(maximize_slope(tot, T_, B).measures);
                    auto tj = invariant_j(realize_second_invariant(tot, T_, B).measures);
                    auto& P2 = trace_.nodes[idx];
                    e.total_i = Check{P2.inv_i.str(), ti.str(), compare(ti, P2.inv_i) < 0};
                    e.total_j = Check{P2.inv_j.str(), tj.str(), compare(tj, P2.inv_j) < 0};
                }
                auto& P3 = trace_.nodes[idx];
                auto& C3 = trace_.nodes[ci];
                if (!e.i.passed)
                    trace_.failures.push_back("height invariant did not drop on " + P3.id + " -> " + C3.id + " (" + label +
                                              "): " + e.i.parent + " -> " + e.i.child + " at " + P3.prep_i.series.str());
                if (!e.j.passed)
                    trace_.failures.push_back("dorder invariant did not drop on " + P3.id + " -> " + C3.id + " (" + label +
                                              "): " + e.j.parent + " -> " + e.j.child + " at " + P3.prep_j.series.str());
            }
            trace_.edges.push_back(e);
        }
        return idx;
    }

    // render every series in the final field
    void finish() {
        for (auto& n : trace_.nodes) {
            n.series = embed(n.series, T_);
            if (!n.prep_i.series.field_ptr()) continue;  // never prepared
            unsigned gi = n.prep_i.series.field().generation(), gj = n.prep_j.series.field().generation();
            n.prep_i.shift = embed(n.prep_i.shift, gi, T_);
            n.prep_j.shift = embed(n.prep_j.shift, gj, T_);
            for (auto& s : n.prep_i.steps) s.c = T_.embed_code(gi, s.c);
            for (auto& s : n.prep_j.steps) s.c = T_.embed_code(gj, s.c);
            n.prep_i.series = embed(n.prep_i.series, T_);
            n.prep_j.series = embed(n.prep_j.series, T_);
            if (n.witness.monomial) n.witness.shift = embed(n.witness.shift, n.witness_gen, T_);
            if (n.quasi)
                for (auto& s : n.quasi->stages) s = embed(s, T_);
        }
        const Field& K = *T_.field();
        trace_.field_degree = K.degree();
        std::string m;
        auto& mod = K.modulus();
        for (std::size_t i = mod.size(); i-- > 0;) {
            if (!mod[i]) continue;
            if (!m.empty()) m += " + ";
            std::string c = mod[i] == 1 && i ? "" : std::to_string(mod[i]) + (i ? "*" : "");
            m += c + (i == 0 ? "" : i == 1 ? "g" : "g^" + std::to_string(i));
        }
        trace_.field_modulus = K.degree() > 1 ? m : "";
    }
};

}  // namespace detail

inline bool has_incomplete(const ResolutionTrace& t) {
    for (auto& n : t.nodes)
        if (n.status == Status::truncation_incomplete) return true;
    return false;
}

// with the automatic window, a run that leaves jets undecided is repeated
// with twice the window, up to kWindowRetries times
inline constexpr int kWindowRetries = 3;

inline ResolutionTrace resolve(const Poly& raw, const Config& cfg, std::string seed_text = {}) {
    if (seed_text.empty()) seed_text = raw.str();
    int w = 0;
    for (int k = 0;; ++k) {
        detail::Resolver R(cfg, seed_text, w);
        auto t = R.run(raw);
        if (cfg.trunc > 0 || k == kWindowRetries || !has_incomplete(t)) return t;
        w = 2 * t.window;
    }
}

inline ResolutionTrace resolve(std::string_view text, const Config& cfg) {
    FieldTower T(cfg.p, cfg.seed, cfg.ext);
    return resolve(Poly::parse(text, T.field()), cfg, std::string(text));
}

// one point, no blowups: both preparations and what they realize
struct Inspection {
    ResidueSeries series;
    Preparation height, dorder;
    unsigned field_degree = 1;
};

inline Inspection inspect(std::string_view text, const Config& cfg) {
    FieldTower T(cfg.p, cfg.seed, cfg.ext);
    auto raw = Poly::parse(text, T.field());
    Inspection out{ResidueSeries::reduce(raw)};
    if (out.series.is_zero()) throw Error("input is a p-th power");
    int sd = 0;
    for (auto& [e, c] : raw.terms()) sd = std::max(sd, e.deg());
    auto B = cfg.bounds(out.series.ord() + cfg.window(sd));
    auto Fc = ResidueSeries::reduce(raw, out.series.ord() + cfg.window(sd));
    out.height = maximize_slope(Fc, T, B);
    out.dorder = realize_second_invariant(Fc, T, B);
    out.field_degree = T.degree();
    return out;
}

// ---------------------------------------------------------------- corpus

// reduced, order >= p, not quasi-monomial
inline Poly corpus_seed(std::mt19937_64& rng, unsigned p, int max_degree) {
    auto f = prime_field(p);
    int q = static_cast<int>(p);
    for (;;) {
        Poly r(f);
        int terms = 2 + static_cast<int>(rng() % 5);
        for (int i = 0; i < terms; ++i) {
            int d = q + static_cast<int>(rng() % static_cast<std::uint64_t>(max_degree - q + 1));
            int a = static_cast<int>(rng() % static_cast<std::uint64_t>(d + 1));
            Code c = 1 + rng() % (p - 1);
            if (!in_pN2({a, d - a}, p)) r.add_term({a, d - a}, c);
        }
        auto F = ResidueSeries::reduce(r);
        if (F.is_zero() || F.ord() < q) continue;
        if (is_quasi_monomial(measures(F))) continue;
        return F.poly();
    }
}

struct CorpusEntry {
    unsigned p = 2;
    std::string seed;
    ResolutionTrace trace;
};

inline std::vector<CorpusEntry> corpus_run(const std::vector<unsigned>& ps, int max_degree, int count, std::uint64_t seed,
                                           Config base = {}) {
    std::vector<CorpusEntry> out;
    for (unsigned p : ps) {
        std::mt19937_64 rng(seed * 1000003ull + p);
        for (int i = 0; i < count; ++i) {
            auto F = corpus_seed(rng, p, max_degree);
            Config c = base;
            c.p = p;
            c.seed = seed;
            out.push_back({p, F.str(), resolve(F, c)});
        }
    }
    return out;
}

// ---------------------------------------------------------------- json

using json = nlohmann::ordered_json;

inline json to_json(const Measures& M) {
    json v = json::array();
    for (auto& e : M.vertices) v.push_back({e.a, e.b});
    return {{"vertices", v},
            {"ord", M.ord},
            {"ord_y", M.ord_y},
            {"deg_y", M.deg_y},
            {"ord_z", M.ord_z},
            {"height", M.height},
            {"width", M.width},
            {"slope", M.slope.str()},
            {"adjacency", to_string(M.adjacency)},
            {"parity", M.parity},
            {"dorder", M.dorder},
            {"dent", M.dent.str()}};
}

inline json to_json(const Preparation& P) {
    const Field& K = P.series.field();
    json steps = json::array();
    for (auto& s : P.steps) steps.push_back({{"k", s.k}, {"c", K.format(s.c)}, {"equation", s.kind}});
    return {{"shift", zpoly_str(P.shift, K)},
            {"series", P.series.str()},
            {"steps", steps},
            {"bounds", {{"K", P.K}, {"r", P.r}}},
            {"complete", P.complete}};
}

inline json to_json(const MonomialTree& t) {
    json j = {{"m", t.state.m}, {"n", t.state.n}};
    if (t.leaf()) {
        j["terminal"] = true;
        return j;
    }
    j["case"] = to_string(*t.center);
    json c = json::array();
    for (auto& k : t.children) c.push_back(to_json(k));
    j["children"] = c;
    return j;
}

inline json to_json(const Check& c) { return {{"parent", c.parent}, {"child", c.child}, {"passed", c.passed}}; }

inline json to_json(const Config& c) {
    json j = {{"p", c.p}, {"ext", c.ext}, {"invariant", to_string(c.variant)}, {"K", c.K}, {"r", c.r}};
    j["trunc"] = c.trunc;
    j["depth"] = c.depth;
    j["seed"] = c.seed;
    j["budget"] = c.budget;
    return j;
}

inline json to_json(const ResolutionTrace& t) {
    json nodes = json::array();
    for (auto& n : t.nodes) {
        json j = {{"id", n.id}, {"parent", n.parent.empty() ? json(nullptr) : json(n.parent)}, {"move", n.move},
                  {"depth", n.depth}, {"series", n.series.str()}, {"order", n.order}, {"status", to_string(n.status)}};
        j["precision"] = n.precision ? json(*n.precision) : json(nullptr);
        if (n.prep_i.series.field_ptr()) {
            j["prepared"] = to_json(n.prep_i);
            j["prepared_dent"] = to_json(n.prep_j);
            j["jet"] = n.jet;
            j["complete"] = n.complete;
        }
        if (n.status != Status::depth_exceeded && !n.mi.vertices.empty()) {
            j["measures"] = to_json(n.mi);
            j["invariants"] = {{"height", n.inv_i.str()}, {"dorder", n.inv_j.str()}};
            j["r"] = {n.r1, n.r2};
        }
        if (n.monomial) {
            j["monomial"] = {{"swapped", n.witness.swapped}, {"tree", to_json(*n.monomial)}};
            if (n.witness.swapped) j["monomial"]["shift_in_y"] = zpoly_str(n.witness.shift, n.prep_i.series.field());
        }
        if (n.quasi) {
            json st = json::array();
            for (auto& s : n.quasi->stages) st.push_back(s.str());
            j["quasi"] = {{"stages", st}, {"line_blowups", n.quasi->line_blowups}, {"final_order", n.quasi->final_order}};
        }
        if (n.status == Status::open) j["generic"] = {{"monomial", true}, {"z_exponent", n.generic_exponent}};
        nodes.push_back(j);
    }
    json edges = json::array();
    for (auto& e : t.edges) {
        json j = {{"parent", t.nodes[e.parent].id}, {"child", t.nodes[e.child].id}, {"move", e.move}};
        if (e.checked) {
            j["check"] = {{"height", to_json(e.i)}, {"dorder", to_json(e.j)}};
            if (e.total_i) j["check"]["total_height"] = to_json(*e.total_i);
            if (e.total_j) j["check"]["total_dorder"] = to_json(*e.total_j);
        } else {
            j["check"] = nullptr;
        }
        edges.push_back(j);
    }
    json out = {{"schema", 1}, {"version", kVersion}, {"config", to_json(t.config)}, {"seed", {{"p", t.config.p}, {"text", t.seed_text}}}};
    out["field"] = {{"p", t.config.p}, {"degree", t.field_degree}, {"modulus", t.field_modulus}};
    out["nodes"] = nodes;
    out["edges"] = edges;
    out["summary"] = {{"nodes", t.nodes.size()}, {"max_depth", t.max_depth()}, {"window", t.window}, {"failures", t.failures}, {"passed", t.passed()}};
    return out;
}

}  // namespace insep
