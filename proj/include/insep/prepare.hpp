#pragma once
// Realizing the coordinate-free measures: maximize ord_y over shifts
// y -> y + a(z), then optimize slope (first invariant) or dent (second).
//
// Search class: a(0) = 0, deg a <= K, coefficients in the tower, roots taken
// in extensions of degree <= r. Completeness inside the class:
//  - ord_y >= m >= 2 forces y^(m-1) | F_y(y+a) so a is an exact root of F_y
//    (of F_z when F_y = 0); those roots are enumerated exhaustively;
//  - ord_y >= 1 means F(a(z), z) lies in K[z^p]; searched coefficient by
//    coefficient with a pruning bound on the lowest surviving term.

#include <insep/invariants.hpp>

#include <functional>
#include <set>
#include <unordered_set>

namespace insep {

struct Bounds {
    int K = 8;               // max degree of the shift
    unsigned r = 0;          // max tower degree for root extensions, 0 = current degree
    std::size_t budget = 20000;  // search nodes per preparation
};

struct Step {
    std::string kind;  // which equation produced the coefficient
    int k = 0;         // exponent of z
    Code c = 0;        // coefficient, in the final field
};

struct Preparation {
    UPoly shift;  // y -> y + shift(z)
    ResidueSeries series;
    Measures measures;
    std::vector<Step> steps;
    int K = 0;
    unsigned r = 0;
    unsigned field_degree = 1;
    bool complete = true;
    std::size_t explored = 0;
    int original_ord_y = 0;
    bool lifting_available = true;  // child shifts A lift to z*A at the parent
};

namespace detail {

inline UPoly to_upoly(const Poly& a) {
    std::vector<Code> c;
    for (auto& [e, v] : a.terms()) {
        if (c.size() <= static_cast<std::size_t>(e.b)) c.resize(static_cast<std::size_t>(e.b) + 1, 0);
        c[static_cast<std::size_t>(e.b)] = v;
    }
    return UPoly(std::move(c));
}

inline std::vector<Code> shift_key(const Poly& a, int K) {
    std::vector<Code> key(static_cast<std::size_t>(std::max(K, 0)) + 1, 0);
    for (auto& [e, v] : a.terms())
        if (e.b < static_cast<int>(key.size())) key[static_cast<std::size_t>(e.b)] = v;
    return key;
}

struct Candidate {
    Poly shift;  // polynomial in z (terms (0,k))
    ResidueSeries series;
    std::vector<Step> steps;
};

struct SearchState {
    FieldTower& T;
    Bounds B;
    std::size_t nodes = 0;
    bool complete = true;
    // states already expanded; the first visit always carries the smallest prefix
    std::unordered_set<std::string> seen;
    std::unordered_set<std::string> dead;  // layer states with no solution

    std::string key(char tag, int k, const ResidueSeries& G) const {
        return std::string(1, tag) + std::to_string(T.generation()) + "|" + std::to_string(k) + "|" + G.str();
    }

    unsigned cap() const { return B.r ? std::max(B.r, T.degree()) : T.degree(); }
    bool spend() {
        if (++nodes > B.budget) {
            complete = false;
            return false;
        }
        return true;
    }
    template <class X>
    X sync(const X& x) const {
        return embed(x, T);
    }
    std::vector<std::pair<Code, unsigned>> roots(UPoly q, unsigned gen) {
        if (gen != T.generation()) q = embed(q, gen, T);
        auto rs = univ_roots(T, q, cap());
        if (!rs.complete) complete = false;
        return rs.roots;
    }
};

inline ResidueSeries shifted(const ResidueSeries& F, const Poly& a) {
    return ResidueSeries::reduce(shift_y(F.poly(), to_upoly(a)), F.trunc(), F.truncated());
}

// derivative of a raw polynomial in y or z
inline Poly partial(const Poly& F, bool wrt_y) {
    const Field& K = F.field();
    Poly r(F.field_ptr());
    for (auto& [e, c] : F.terms()) {
        int n = wrt_y ? e.a : e.b;
        if (n % static_cast<int>(K.p()) == 0) continue;
        r.add_term(wrt_y ? Exp{e.a - 1, e.b} : Exp{e.a, e.b - 1}, K.mul(c, K.from_int(n)));
    }
    return r;
}

inline Poly divide_out_z(const Poly& Q) {
    int m = INT32_MAX;
    for (auto& [e, c] : Q.terms()) m = std::min(m, e.b);
    if (m == 0 || Q.is_zero()) return Q;
    return monomial_divide(Q, {0, m});
}

// exact roots a(z) of P in y with a(0) = 0, deg a <= K
inline void poly_roots(SearchState& S, const Poly& P, const std::string& kind, std::vector<Candidate>& out) {
    std::set<std::vector<Code>> seen;
    std::function<void(Poly, Poly, std::vector<Step>, int)> rec = [&](Poly Q, Poly pre, std::vector<Step> steps, int j) {
        if (!S.spend()) return;
        Q = S.sync(Q);
        pre = S.sync(pre);
        bool root = true;
        for (auto& [e, c] : Q.terms())
            if (e.a == 0) {
                root = false;
                break;
            }
        // jets of formal roots count too: exact up to the truncation order when K reaches it
        if ((root || j > S.B.K) && seen.insert(shift_key(pre, S.B.K)).second) out.push_back({pre, ResidueSeries{}, steps});
        if (j > S.B.K) return;
        std::vector<Code> r0;
        for (auto& [e, c] : Q.terms())
            if (e.b == 0) {
                if (r0.size() <= static_cast<std::size_t>(e.a)) r0.resize(static_cast<std::size_t>(e.a) + 1, 0);
                r0[static_cast<std::size_t>(e.a)] = c;
            }
        UPoly R(r0);
        if (R.deg() < 1) return;
        unsigned gen = Q.field().generation();
        for (auto [c, mult] : S.roots(R, gen)) {
            Poly Qn = S.sync(Q), pn = S.sync(pre);
            Qn = divide_out_z(substitute_raw(shift_y(Qn, UPoly::constant(c)), Horizontal{}));
            auto st = steps;
            if (c) {
                pn.add_term({0, j}, c);
                st.push_back({kind, j, c});
            }
            rec(Qn, pn, st, j + 1);
        }
    };
    Poly start = divide_out_z(substitute_raw(S.sync(P), Horizontal{}));
    rec(start, Poly(S.T.field()), {}, 1);
}

// shifts with F(a(z), z) in K[z^p]; stops at the first (smallest) solution
inline std::optional<Candidate> layer_solution(SearchState& S, const ResidueSeries& F, int k0 = 1,
                                               std::optional<Candidate> from = std::nullopt) {
    std::optional<Candidate> found;
    unsigned p = F.p();
    std::function<void(ResidueSeries, Poly, std::vector<Step>, int)> rec = [&](ResidueSeries G, Poly pre,
                                                                                 std::vector<Step> steps, int k) {
        if (found || !S.spend()) return;
        G = S.sync(G);
        pre = S.sync(pre);
        int n0 = INT32_MAX;
        for (auto& [e, c] : G.poly().terms())
            if (e.a == 0) n0 = std::min(n0, e.b);
        if (n0 == INT32_MAX) {
            found = Candidate{pre, G, steps};
            return;
        }
        if (k > S.B.K) return;
        int w = INT32_MAX;
        for (auto& [e, c] : G.poly().terms())
            if (e.a >= 1) w = std::min(w, k * e.a + e.b);
        if (w > n0) return;
        auto key = S.key('l', k, G);
        if (S.dead.count(key)) return;
        std::vector<Code> cands;
        if (w % static_cast<int>(p) != 0) {
            std::vector<Code> ec;
            for (auto& [e, c] : G.poly().terms())
                if (k * e.a + e.b == w) {
                    if (ec.size() <= static_cast<std::size_t>(e.a)) ec.resize(static_cast<std::size_t>(e.a) + 1, 0);
                    ec[static_cast<std::size_t>(e.a)] = c;
                }
            for (auto [c, m] : S.roots(UPoly(ec), G.field().generation())) cands.push_back(c);
        } else {
            for (Code c = 0; c < S.T.field()->size(); ++c) cands.push_back(c);
        }
        for (Code c : cands) {
            if (found) return;
            auto Gs = S.sync(G);
            auto pn = S.sync(pre);
            auto st = steps;
            if (c) {
                Poly a(S.T.field());
                a.add_term({0, k}, c);
                Gs = shifted(Gs, a);
                pn.add_term({0, k}, c);
                st.push_back({"y^0 layer", k, c});
            }
            rec(Gs, pn, st, k + 1);
        }
        // only a full search proves the state dead
        if (!found && S.nodes <= S.B.budget) S.dead.insert(key);
    };
    if (from)
        rec(F, from->shift, from->steps, k0);
    else
        rec(F, Poly(F.field_ptr()), {}, k0);
    return found;
}

// leading equation of the top edge under y -> y + c z^sigma: the first point on
// the edge line outside p N^2 whose coefficient depends on c
inline UPoly dissolution_equation(const ResidueSeries& G, int sigma) {
    auto A = G.polygon().vertices;
    int a1 = A[0].a, b1 = A[0].b;
    const Field& K = G.field();
    unsigned p = K.p();
    std::vector<Code> g(static_cast<std::size_t>(a1) + 1, 0);
    for (int i = 0; i <= a1; ++i) g[static_cast<std::size_t>(i)] = G.poly().coeff({a1 - i, b1 + i * sigma});
    for (int i = 1; i <= a1; ++i) {
        if (in_pN2({a1 - i, b1 + i * sigma}, p)) continue;
        std::vector<Code> P(static_cast<std::size_t>(i) + 1, 0);
        for (int l = 0; l <= i; ++l) {
            Code gl = g[static_cast<std::size_t>(l)];
            if (!gl) continue;
            auto row = binom_row(a1 - l, K);
            auto j = static_cast<std::size_t>(i - l);
            P[j] = K.add(P[j], K.mul(gl, K.from_int(static_cast<long long>(row[j]))));
        }
        UPoly Pc(P);
        if (Pc.is_zero()) continue;
        return Pc;
    }
    return {};
}

// Every shift keeping ord_y at `best`, coefficient by coefficient. Once the top
// edge is steeper than the next order the edge can no longer move, so the
// node is final for slope and dent.
inline std::vector<Candidate> secondary_search(SearchState& S, const ResidueSeries& F, int best) {
    std::vector<Candidate> out;
    unsigned p = F.p();
    bool done = false;  // a quadrant beats everything, and DFS order finds the smallest one first
    auto take = [&](Candidate c) {
        if (c.series.polygon().vertices.size() < 2) done = true;
        out.push_back(std::move(c));
    };
    std::function<void(ResidueSeries, Poly, std::vector<Step>, int, bool)> rec =
        [&](ResidueSeries G, Poly pre, std::vector<Step> steps, int k, bool fresh) {
            if (done || !S.spend()) return;
            G = S.sync(G);
            pre = S.sync(pre);
            if (!S.seen.insert(S.key('s', k, G)).second) return;
            int oy = G.ord_y();
            if (fresh && oy == best) take({pre, G, steps});
            auto A = G.polygon().vertices;
            if (A.size() < 2) return;
            int du = A[0].a - A[1].a, dn = A[1].b - A[0].b;
            if (k > S.B.K || dn < k * du) {
                if (oy < best)
                    if (auto sol = layer_solution(S, G, k, Candidate{pre, G, steps})) take(*sol);
                return;
            }
            std::set<Code> cands;
            for (Code c = 0; c < S.T.field()->size(); ++c) cands.insert(c);
            std::vector<UPoly> eqs;
            unsigned gen = G.field().generation();
            if (dn == k * du) eqs.push_back(dissolution_equation(G, k));
            if (best == 1) {
                int n0 = INT32_MAX, w = INT32_MAX;
                for (auto& [e, c] : G.poly().terms()) {
                    if (e.a == 0) n0 = std::min(n0, e.b);
                    else w = std::min(w, k * e.a + e.b);
                }
                if (n0 != INT32_MAX && w > n0) return;
                if (n0 != INT32_MAX && w % static_cast<int>(p) != 0) {
                    std::vector<Code> ec;
                    for (auto& [e, c] : G.poly().terms())
                        if (k * e.a + e.b == w) {
                            if (ec.size() <= static_cast<std::size_t>(e.a)) ec.resize(static_cast<std::size_t>(e.a) + 1, 0);
                            ec[static_cast<std::size_t>(e.a)] = c;
                        }
                    eqs.push_back(UPoly(ec));
                }
            }
            for (auto& q : eqs)
                if (q.deg() >= 1) {
                    auto rs = S.roots(q, gen);
                    if (S.T.generation() != gen) {
                        std::set<Code> moved;
                        for (Code c : cands) moved.insert(S.T.embed_code(gen, c));
                        cands = std::move(moved);
                        gen = S.T.generation();
                    }
                    for (auto [c, m] : rs) cands.insert(c);
                }
            for (Code c : cands) {
                if (S.T.generation() != gen) {
                    c = S.T.embed_code(gen, c);
                }
                auto Gs = S.sync(G);
                auto pn = S.sync(pre);
                auto st = steps;
                if (c) {
                    Poly a(S.T.field());
                    a.add_term({0, k}, c);
                    Gs = shifted(Gs, a);
                    pn.add_term({0, k}, c);
                    st.push_back({"secondary", k, c});
                }
                rec(Gs, pn, st, k + 1, c != 0);
                if (done || S.nodes > S.B.budget) return;
            }
        };
    rec(F, Poly(F.field_ptr()), {}, 1, true);
    return out;
}

struct OrdYSearch {
    int best = 0;
    std::vector<Candidate> optimal;  // every searched shift realizing best (finite part)
    bool closed = true;              // true if optimal is the whole class (best >= 2 or via F_z)
    bool complete = true;
    std::size_t explored = 0;
};

// lift: also try to reach ord_y = 1 when the roots stop at 0
inline OrdYSearch search_ord_y(const ResidueSeries& F0, FieldTower& T, const Bounds& B, bool lift = true) {
    SearchState S{T, B};
    OrdYSearch out;
    auto F = embed(F0, T);
    if (F.is_zero()) throw Error("preparation of the zero series");
    int m0 = F.ord_y();
    Candidate id{Poly(T.field()), F, {}};
    auto M = measures(F);
    if (M.quadrant()) {
        out.best = m0;
        out.optimal.push_back(id);
        return out;
    }
    Poly Fy = partial(F.poly(), true);
    bool via_z = Fy.is_zero();
    Poly P = via_z ? partial(F.poly(), false) : Fy;
    std::vector<Candidate> roots;
    poly_roots(S, P, via_z ? "root of F_z" : "root of F_y", roots);
    int best = m0;
    for (auto& c : roots) {
        c.shift = embed(c.shift, T);
        c.series = shifted(embed(F, T), c.shift);
        best = std::max(best, c.series.is_zero() ? best : c.series.ord_y());
    }
    if (best >= 2 || via_z) {
        out.best = best;
        if (m0 == best) out.optimal.push_back({Poly(T.field()), embed(F, T), {}});
        for (auto& c : roots)
            if (!c.series.is_zero() && c.series.ord_y() == best && !c.shift.is_zero()) out.optimal.push_back(c);
        out.closed = true;
    } else {
        if (m0 == best) out.optimal.push_back({Poly(T.field()), embed(F, T), {}});
        for (auto& c : roots)
            if (!c.series.is_zero() && c.series.ord_y() == best && best == 1 && !c.shift.is_zero()) out.optimal.push_back(c);
        out.best = best;
        if (best == 0 && lift) {
            if (auto sol = layer_solution(S, embed(F, T))) {
                out.best = 1;
                out.optimal.clear();
                out.optimal.push_back(*sol);
            }
        }
        out.closed = false;
    }
    for (auto& c : out.optimal) {
        c.shift = embed(c.shift, T);
        c.series = embed(c.series, T);
    }
    out.complete = S.complete;
    out.explored = S.nodes;
    return out;
}

}  // namespace detail

enum class Objective { ord_y, slope, dent };

namespace detail {

// steps carry codes of the generation they were found in; replay them from the final shift
inline std::vector<Step> restate_steps(const std::vector<Step>& steps, const Poly& shift) {
    std::vector<Step> out;
    for (auto& s : steps) out.push_back({s.kind, s.k, shift.coeff({0, s.k})});
    return out;
}

inline Preparation prepare(const ResidueSeries& F, FieldTower& T, const Bounds& B, Objective obj, bool lift = true) {
    auto R = search_ord_y(F, T, B, lift);
    SearchState S{T, B};
    S.nodes = R.explored;
    std::vector<Candidate> pool = R.optimal;
    if (obj != Objective::ord_y && !R.closed) {
        for (auto& d : secondary_search(S, embed(F, T), R.best)) pool.push_back(d);
    }
    for (auto& c : pool) {
        c.shift = embed(c.shift, T);
        c.series = embed(c.series, T);
    }
    auto better = [&](const Candidate& x, const Candidate& y) {
        auto mx = measures(x.series), my = measures(y.series);
        if (mx.ord_y != my.ord_y) return mx.ord_y > my.ord_y;
        if (obj == Objective::slope && !(mx.slope == my.slope)) return mx.slope > my.slope;
        if (obj == Objective::dent && !(mx.dent == my.dent)) return realizes_better(mx.dent, my.dent);
        return shift_key(x.shift, B.K) < shift_key(y.shift, B.K);
    };
    const Candidate* best = &pool.front();
    for (auto& c : pool)
        if (better(c, *best)) best = &c;
    Preparation P;
    P.shift = to_upoly(best->shift);
    P.series = best->series;
    P.measures = measures(P.series);
    P.steps = restate_steps(best->steps, best->shift);
    P.K = B.K;
    P.r = B.r;
    P.field_degree = T.degree();
    P.complete = R.complete && S.complete;
    P.explored = S.nodes;
    P.original_ord_y = F.ord_y();
    return P;
}

}  // namespace detail

inline Preparation maximize_ord_y(const ResidueSeries& F, FieldTower& T, const Bounds& B = {}) {
    return detail::prepare(F, T, B, Objective::ord_y);
}
inline Preparation maximize_slope(const ResidueSeries& F, FieldTower& T, const Bounds& B = {}) {
    return detail::prepare(F, T, B, Objective::slope);
}
inline Preparation realize_second_invariant(const ResidueSeries& F, FieldTower& T, const Bounds& B = {}) {
    return detail::prepare(F, T, B, Objective::dent);
}

// ---------------------------------------------------------------- oracle

struct BruteForceResult {
    int best_ord_y = 0;
    UPoly witness;
    Slope best_slope;  // among shifts reaching best_ord_y
    Dent best_dent;
    std::size_t candidates = 0;
};

// every a(z) = sum_{1<=k<=K} c_k z^k with c_k in F_{p^r}
inline BruteForceResult brute_force_ord_y(const ResidueSeries& F0, int K, unsigned r, FieldTower& T,
                                          std::size_t cap = 2000000) {
    T.ensure_degree(r);
    auto F = embed(F0, T);
    const Field& Fq = *T.field();
    std::vector<Code> sub;
    std::uint64_t qr = 1;
    for (unsigned i = 0; i < r; ++i) qr *= Fq.p();
    for (Code x = 0; x < Fq.size(); ++x)
        if (Fq.pow(x, qr) == x) sub.push_back(x);
    double count = 1;
    for (int i = 0; i < K; ++i) count *= static_cast<double>(sub.size());
    if (count > static_cast<double>(cap)) throw Error("brute force cap exceeded");
    BruteForceResult out;
    out.best_ord_y = -1;
    std::vector<std::size_t> idx(static_cast<std::size_t>(K), 0);
    for (;;) {
        std::vector<Code> c(static_cast<std::size_t>(K) + 1, 0);
        for (int i = 0; i < K; ++i) c[static_cast<std::size_t>(i) + 1] = sub[idx[static_cast<std::size_t>(i)]];
        UPoly a(c);
        auto G = ResidueSeries::reduce(detail::shift_y(F.poly(), a));
        ++out.candidates;
        auto M = measures(G);
        if (M.ord_y > out.best_ord_y) {
            out.best_ord_y = M.ord_y;
            out.witness = a;
            out.best_slope = M.slope;
            out.best_dent = M.dent;
        } else if (M.ord_y == out.best_ord_y) {
            if (M.slope > out.best_slope) out.best_slope = M.slope;
            if (realizes_better(M.dent, out.best_dent)) out.best_dent = M.dent;
        }
        int i = 0;
        while (i < K && ++idx[static_cast<std::size_t>(i)] == sub.size()) idx[static_cast<std::size_t>(i++)] = 0;
        if (i == K) break;
    }
    return out;
}

// ---------------------------------------------------------------- monomiality

struct MonomialWitness {
    bool monomial = false;
    bool swapped = false;  // found after exchanging y and z
    UPoly shift;           // in the (possibly swapped) variable
    Exp exponents;         // (m, n) in the original orientation
    bool complete = true;
};

namespace detail {

// Shifts fix ord and the top vertex (a1, b1), so a quadrant needs a1 + b1 = ord
// and then ord_y = a1; for a1 >= 2 the exact roots decide it.
inline std::optional<Preparation> quadrant_preparation(const ResidueSeries& F, FieldTower& T, const Bounds& B) {
    auto M = measures(F);
    auto top = M.vertices.front();
    if (top.deg() != M.ord) return std::nullopt;
    auto P = prepare(F, T, B, Objective::ord_y, top.a <= 1);
    return P;
}

}  // namespace detail

inline MonomialWitness is_monomial(const ResidueSeries& F, FieldTower& T, const Bounds& B = {}) {
    MonomialWitness w;
    auto P = detail::quadrant_preparation(F, T, B);
    if (P) w.complete = P->complete;
    if (P && P->measures.quadrant()) {
        w.monomial = true;
        w.shift = P->shift;
        w.exponents = P->measures.vertices.front();
        return w;
    }
    auto Fs = ResidueSeries::reduce(swap_yz(embed(F, T).poly()), F.trunc(), F.truncated());
    auto Q = detail::quadrant_preparation(Fs, T, B);
    if (!Q) return w;
    w.complete = w.complete && Q->complete;
    if (Q->measures.quadrant()) {
        w.monomial = true;
        w.swapped = true;
        w.shift = Q->shift;
        auto v = Q->measures.vertices.front();
        w.exponents = {v.b, v.a};
    }
    return w;
}

}  // namespace insep
