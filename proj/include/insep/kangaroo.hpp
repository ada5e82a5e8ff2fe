#pragma once
// Jumps of height or dorder along a resolution trace, and the necessary
// conditions such jumps have to satisfy.

#include <insep/driver.hpp>

namespace insep {

struct KangarooEvent {
    std::size_t parent = 0, child = 0;  // antelope and kangaroo point
    std::string parent_id, child_id, move;
    Move move_kind = Move::T;
    int height_before = 0, height_after = 0;
    int dorder_before = 0, dorder_after = 0;
    int r1 = 0, r2 = 0;  // (ord_y, ord_z) at the antelope
    int d = 0;           // order at the antelope
    int parity = 0;
    bool child_adjacent = false;
    std::optional<std::size_t> b0;  // last ancestor with r = (0,0)
};

namespace detail {

inline bool increases(const TraceNode& P, const TraceNode& C) {
    // ord(G') = ord(G) = p just means the child kept order >= p
    if (C.status == Status::order_dropped || C.status == Status::depth_exceeded) return false;
    return C.mi.height > P.mi.height || C.mj.dorder > P.mj.dorder;
}

}  // namespace detail

inline std::vector<KangarooEvent> detect_events(const ResolutionTrace& t) {
    std::unordered_map<std::string, std::size_t> at;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) at[t.nodes[i].id] = i;
    std::vector<KangarooEvent> out;
    for (std::size_t pi = 0; pi < t.nodes.size(); ++pi) {
        const auto& P = t.nodes[pi];
        for (auto ci : P.children) {
            const auto& C = t.nodes[ci];
            if (!detail::increases(P, C)) continue;
            KangarooEvent e;
            e.parent = pi;
            e.child = ci;
            e.parent_id = P.id;
            e.child_id = C.id;
            e.move = C.move;
            e.move_kind = C.move_kind;
            e.height_before = P.mi.height;
            e.height_after = C.mi.height;
            e.dorder_before = P.mj.dorder;
            e.dorder_after = C.mj.dorder;
            e.r1 = P.r1;
            e.r2 = P.r2;
            e.d = P.order;
            e.parity = P.mi.parity;
            e.child_adjacent = C.mi.ord_y == 0;
            for (auto id = P.parent; !id.empty();) {
                auto& A = t.nodes[at.at(id)];
                if (A.r1 == 0 && A.r2 == 0) {
                    e.b0 = at.at(id);
                    break;
                }
                id = A.parent;
            }
            out.push_back(e);
        }
    }
    return out;
}

enum class Verdict { pass, fail, not_applicable };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "n/a";
    }
}

struct ConditionReport {
    Verdict order_multiple = Verdict::fail;   // (1) p | d
    Verdict multiplicities = Verdict::fail;   // (2) r1, r2 not 0 mod p and r1 + r2 <= p mod p
    Verdict off_origins = Verdict::fail;      // (3) t != 0
    Verdict history = Verdict::not_applicable;  // (3) an H and a V move since b0
    int h_moves = 0, v_moves = 0;  // on the path b0 -> antelope, first move included
    std::string first_move;        // the move out of b0
    bool passed() const {
        for (auto v : {order_multiple, multiplicities, off_origins, history})
            if (v == Verdict::fail) return false;
        return true;
    }
};

inline ConditionReport check_conditions(const KangarooEvent& e, const ResolutionTrace& t) {
    ConditionReport r;
    int p = static_cast<int>(t.config.p);
    r.order_multiple = e.d % p == 0 ? Verdict::pass : Verdict::fail;
    int a = e.r1 % p, b = e.r2 % p;
    r.multiplicities = (a != 0 && b != 0 && a + b <= p) ? Verdict::pass : Verdict::fail;
    r.off_origins = e.move_kind == Move::T ? Verdict::pass : Verdict::fail;
    if (!e.b0) return r;
    // moves on the path b0 -> antelope. At b0 no axis is exceptional, so the
    // first move is only defined up to y -> y + t z and y <-> z: it may stand
    // in for either kind.
    std::unordered_map<std::string, std::size_t> at;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) at[t.nodes[i].id] = i;
    int h = 0, v = 0;
    for (std::size_t i = e.parent; i != *e.b0;) {
        auto& n = t.nodes[i];
        std::size_t up = at.at(n.parent);
        if (up == *e.b0) {
            r.first_move = n.move;
        } else {
            h += n.move_kind == Move::H;
            v += n.move_kind == Move::V;
        }
        r.h_moves += n.move_kind == Move::H;
        r.v_moves += n.move_kind == Move::V;
        i = up;
    }
    int missing = (h == 0) + (v == 0);
    bool free = !r.first_move.empty();
    r.history = missing == 0 || (missing == 1 && free) ? Verdict::pass : Verdict::fail;
    return r;
}

struct HalvingReport {
    Verdict halving = Verdict::not_applicable;  // dorder(antelope) <= dorder(b0) / 2
    Verdict low_start = Verdict::not_applicable;  // dorder(b0) > 2
    int dorder_b0 = 0, dorder_antelope = 0;
    std::string b0_id;
};

inline HalvingReport check_halving(const KangarooEvent& e, const ResolutionTrace& t) {
    HalvingReport h;
    h.dorder_antelope = t.nodes[e.parent].mj.dorder;
    if (!e.b0) return h;
    auto& B = t.nodes[*e.b0];
    h.b0_id = B.id;
    h.dorder_b0 = B.mj.dorder;
    h.halving = 2 * h.dorder_antelope <= h.dorder_b0 ? Verdict::pass : Verdict::fail;
    h.low_start = h.dorder_b0 > 2 ? Verdict::pass : Verdict::fail;
    return h;
}

// ---------------------------------------------------------------- Moh bound

struct MohReport {
    unsigned p = 0;
    int d = 0;
    int forms = 0, shifts = 0;
    int min_slack = INT32_MAX;  // bound - ord_y over all checks
    int max_slack = INT32_MIN;
    std::vector<std::string> violations;
};

// ord_y(F(y + t z, z)) <= height(F) + par(d) for homogeneous F of degree d
inline void moh_check(const ResidueSeries& F, const FieldTower& T, MohReport& rep) {
    auto M = measures(F);
    int d = M.ord;
    int bound = M.height + (d % static_cast<int>(F.p()) == 0 ? 1 : 0);
    ++rep.forms;
    for (Code t = 1; t < T.field()->size(); ++t) {
        UPoly a(std::vector<Code>{0, t});
        auto G = ResidueSeries::reduce(detail::shift_y(F.poly(), a));
        ++rep.shifts;
        if (G.is_zero()) continue;
        int slack = bound - G.ord_y();
        rep.min_slack = std::min(rep.min_slack, slack);
        rep.max_slack = std::max(rep.max_slack, slack);
        if (slack < 0) rep.violations.push_back(F.str() + " t=" + T.field()->format(t));
    }
}

inline ResidueSeries random_form(std::mt19937_64& rng, const FieldPtr& f, int d) {
    unsigned p = f->p();
    while (true) {
        Poly P(f);
        for (int a = 0; a <= d; ++a) {
            if (in_pN2({a, d - a}, p)) continue;
            if (rng() % 2) P.add_term({a, d - a}, static_cast<Code>(rng() % f->size()));
        }
        auto F = ResidueSeries::reduce(P);
        if (!F.is_zero()) return F;
    }
}

inline MohReport moh_bound_sweep(unsigned p, int d, int samples, std::uint64_t seed = 0, unsigned ext = 2) {
    if (d < 1) throw Error("degree must be positive");
    FieldTower T(p, seed, ext);
    std::mt19937_64 rng(seed * 7919ull + p * 31ull + static_cast<unsigned>(d));
    MohReport rep;
    rep.p = p;
    rep.d = d;
    for (int i = 0; i < samples; ++i) moh_check(random_form(rng, T.field(), d), T, rep);
    return rep;
}

// ---------------------------------------------------------------- json

inline json to_json(const KangarooEvent& e, const ResolutionTrace& t) {
    auto c = check_conditions(e, t);
    auto h = check_halving(e, t);
    json j = {{"antelope", e.parent_id},
              {"kangaroo", e.child_id},
              {"move", e.move},
              {"height", {e.height_before, e.height_after}},
              {"dorder", {e.dorder_before, e.dorder_after}},
              {"r", {e.r1, e.r2}},
              {"order", e.d},
              {"parity", e.parity},
              {"child_adjacent", e.child_adjacent},
              {"b0", e.b0 ? json(t.nodes[*e.b0].id) : json(nullptr)}};
    j["conditions"] = {{"order_multiple_of_p", to_string(c.order_multiple)},
                       {"multiplicities", to_string(c.multiplicities)},
                       {"off_origins", to_string(c.off_origins)},
                       {"history", to_string(c.history)},
                       {"h_moves", c.h_moves},
                       {"v_moves", c.v_moves},
                       {"first_move", e.b0 ? json(c.first_move) : json(nullptr)},
                       {"initial_form", "not checked"}};
    j["halving"] = {{"result", to_string(h.halving)}, {"dorder_b0", e.b0 ? json(h.dorder_b0) : json(nullptr)},
                    {"dorder_antelope", h.dorder_antelope}, {"b0_above_2", to_string(h.low_start)}};
    return j;
}

// one event per line
inline std::string events_jsonl(const ResolutionTrace& t) {
    std::string s;
    for (auto& e : detect_events(t)) s += to_json(e, t).dump() + "\n";
    return s;
}

inline json to_json(const MohReport& r) {
    json v = json::array();
    for (auto& s : r.violations) v.push_back(s);
    return {{"p", r.p},
            {"d", r.d},
            {"forms", r.forms},
            {"shifts", r.shifts},
            {"min_slack", r.shifts ? json(r.min_slack) : json(nullptr)},
            {"max_slack", r.shifts ? json(r.max_slack) : json(nullptr)},
            {"violations", v}};
}

}  // namespace insep
