#pragma once
// Endgame on y^m z^n: curve blowups along the axes, point blowups otherwise,
// until m + n < p. Also the line blowups closing quasi-monomial points.

#include <insep/invariants.hpp>

#include <memory>

namespace insep {

struct MonomialState {
    int m = 0, n = 0;
    friend bool operator==(const MonomialState&, const MonomialState&) = default;
};

enum class Center { curve_z, curve_y, point };

inline const char* to_string(Center c) {
    switch (c) {
        case Center::curve_z: return "curve-z";
        case Center::curve_y: return "curve-y";
        default: return "point";
    }
}

struct MonomialStep {
    Center center = Center::point;
    std::vector<MonomialState> children;
};

inline bool is_terminal(MonomialState s, unsigned p) { return s.m + s.n < static_cast<int>(p); }

inline MonomialStep monomial_step(MonomialState s, unsigned p) {
    int q = static_cast<int>(p);
    if (s.m < 0 || s.n < 0) throw Error("negative exponent");
    if (s.m % q == 0 && s.n % q == 0) throw Error("exponents (" + std::to_string(s.m) + "," + std::to_string(s.n) + ") both divisible by p");
    if (is_terminal(s, p)) throw Error("(" + std::to_string(s.m) + "," + std::to_string(s.n) + ") is already below order p");
    if (s.m >= q) return {Center::curve_z, {{s.m - q, s.n}}};
    if (s.n >= q) return {Center::curve_y, {{s.m, s.n - q}}};
    return {Center::point, {{s.m + s.n - q, s.n}, {s.m, s.m + s.n - q}}};
}

struct MonomialTree {
    MonomialState state;
    std::optional<Center> center;  // empty at leaves
    std::vector<MonomialTree> children;

    bool leaf() const { return !center; }
    int depth() const {
        int d = 0;
        for (auto& c : children) d = std::max(d, 1 + c.depth());
        return d;
    }
    int steps() const {
        int k = leaf() ? 0 : 1;
        for (auto& c : children) k += c.steps();
        return k;
    }
    template <class Fn>
    void each_leaf(Fn&& fn) const {
        if (leaf()) fn(state);
        for (auto& c : children) c.each_leaf(fn);
    }
};

inline MonomialTree resolve_monomial(MonomialState s, unsigned p) {
    if (is_terminal(s, p)) throw Error("(" + std::to_string(s.m) + "," + std::to_string(s.n) + ") is already below order p");
    MonomialTree t{s, {}, {}};
    auto st = monomial_step(s, p);
    t.center = st.center;
    for (auto c : st.children) {
        if (is_terminal(c, p))
            t.children.push_back({c, {}, {}});
        else
            t.children.push_back(resolve_monomial(c, p));
    }
    return t;
}

struct QuasiMonomialRecord {
    std::vector<ResidueSeries> stages;  // input, then after each line blowup
    int line_blowups = 0;
    bool order_dropped = false;
    int final_order = 0;
    const ResidueSeries& result() const { return stages.back(); }
};

inline QuasiMonomialRecord resolve_quasi_monomial(const ResidueSeries& F) {
    if (F.is_zero() || !is_quasi_monomial(measures(F))) throw Error("not quasi-monomial: " + F.str());
    QuasiMonomialRecord r;
    r.stages.push_back(F);
    int p = static_cast<int>(F.p());
    while (r.stages.back().ord_z() >= p) {
        auto& G = r.stages.back();
        r.stages.push_back(ResidueSeries::reduce(monomial_divide(G, {0, p}), G.trunc(), G.truncated()));
        ++r.line_blowups;
    }
    auto& last = r.stages.back();
    r.final_order = last.is_zero() ? 0 : last.ord();
    r.order_dropped = !last.is_zero() && r.final_order < p;
    return r;
}

}  // namespace insep
