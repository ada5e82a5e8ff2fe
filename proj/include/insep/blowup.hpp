#pragma once
// Point blowups as the three chart moves, strict transforms, and the points of
// the exceptional line where the order can stay p.

#include <insep/prepare.hpp>

namespace insep {

enum class Move { T, H, V };

inline const char* to_string(Move m) {
    switch (m) {
        case Move::T: return "T";
        case Move::H: return "H";
        default: return "V";
    }
}

struct BlowupResult {
    Move move = Move::H;
    Code t = 0;  // only for T, in the series' field
    ResidueSeries total;
    ResidueSeries strict;  // total divided by the exceptional variable to the p
    bool order_dropped = false;
    int multiplicity = 0;  // exponent of the exceptional variable removed

    std::string label() const {
        if (move != Move::T) return to_string(move);
        return std::string("T(") + strict.field().format(t) + ")";
    }
};

inline BlowupResult apply_move(const ResidueSeries& F, Move m, Code t = 0) {
    if (F.is_zero()) throw Error("blowup of the zero series");
    unsigned p = F.p();
    if (F.ord() < static_cast<int>(p)) throw Error("order " + std::to_string(F.ord()) + " is below p");
    BlowupResult r;
    r.move = m;
    r.t = t;
    switch (m) {
        case Move::T:
            if (t == 0) throw Error("T needs a nonzero t, use H");
            r.total = substitute(F, Translate{t});
            break;
        case Move::H: r.total = substitute(F, Horizontal{}); break;
        case Move::V: r.total = substitute(F, Vertical{}); break;
    }
    int pi = static_cast<int>(p);
    Exp ex = m == Move::V ? Exp{pi, 0} : Exp{0, pi};
    r.strict = ResidueSeries::reduce(monomial_divide(r.total, ex), F.trunc(), r.total.truncated());
    r.multiplicity = pi;
    r.order_dropped = r.strict.is_zero() || r.strict.ord() < pi;
    return r;
}

// T(t) points of the exceptional line in the z-chart that need a look
struct Children {
    std::vector<BlowupResult> special;  // V, H, then T(t) by code
    int d = 0;                          // order of the parent
    bool generic_monomial = true;       // every other T(t) is z^(d-p) times a unit
    bool complete = true;               // false if some candidate t needed a bigger field
};

// candidates t != 0: roots of Q(y) = F_d(y,1), and of Q' when p | d
inline Children enumerate_children(const ResidueSeries& F0, FieldTower& T, unsigned max_degree = 0) {
    auto F = embed(F0, T);
    Children out;
    out.d = F.ord();
    unsigned p = F.p();
    std::vector<Code> q;
    for (auto& [e, c] : F.poly().terms())
        if (e.deg() == out.d) {
            if (q.size() <= static_cast<std::size_t>(e.a)) q.resize(static_cast<std::size_t>(e.a) + 1, 0);
            q[static_cast<std::size_t>(e.a)] = c;
        }
    UPoly Q(q);
    unsigned gen = T.generation();
    std::set<Code> ts;
    std::vector<UPoly> eqs{Q};
    if (out.d % static_cast<int>(p) == 0) eqs.push_back(upoly::derivative(*T.field(), Q));
    for (auto& e : eqs) {
        if (e.deg() < 1) continue;
        auto rs = univ_roots(T, gen == T.generation() ? e : embed(e, gen, T), max_degree);
        if (!rs.complete) out.complete = false;
        if (T.generation() != gen) {
            std::set<Code> moved;
            for (Code c : ts) moved.insert(T.embed_code(gen, c));
            ts = std::move(moved);
            gen = T.generation();
        }
        for (auto [c, m] : rs.roots)
            if (c) ts.insert(c);
    }
    F = embed(F, T);
    out.special.push_back(apply_move(F, Move::V));
    out.special.push_back(apply_move(F, Move::H));
    for (Code t : ts) out.special.push_back(apply_move(F, Move::T, t));
    return out;
}

enum class SurfaceStatus { open, order_drop, not_reduced };

inline const char* to_string(SurfaceStatus s) {
    switch (s) {
        case SurfaceStatus::open: return "open";
        case SurfaceStatus::order_drop: return "order-drop";
        default: return "not reduced";
    }
}

struct SurfaceReduction {
    ResidueSeries F;
    SurfaceStatus status = SurfaceStatus::open;
};

// canonical representative of F for G = x^p + F
inline SurfaceReduction surface_reduce(const Poly& raw, std::optional<int> trunc = std::nullopt) {
    SurfaceReduction s{ResidueSeries::reduce(raw, trunc)};
    unsigned p = raw.field().p();
    if (s.F.is_zero())
        s.status = SurfaceStatus::not_reduced;
    else if (s.F.ord() < static_cast<int>(p))
        s.status = SurfaceStatus::order_drop;
    return s;
}

}  // namespace insep
