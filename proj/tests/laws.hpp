#pragma once
// Structural laws of the moves, each returning an empty string when it holds.

#include <insep/blowup.hpp>

#include <random>

namespace laws {

using namespace insep;

inline std::string t_decomposition(const ResidueSeries& F, Code t) {
    auto lhs = substitute(F, Translate{t});
    auto rhs = substitute(substitute(F, ShiftY{UPoly({0, t})}), Horizontal{});
    return lhs == rhs ? "" : "T(t) != H o shift for " + F.str();
}

inline std::string h_adjacency(const ResidueSeries& F) {
    auto M = measures(F);
    auto N = measures(substitute(F, Horizontal{}));
    if (N.adjacency != M.adjacency) return "H changed adjacency of " + F.str();
    if (N.height > M.height) return "H raised height of " + F.str();
    return "";
}

inline std::string v_height_drop(const ResidueSeries& F) {
    auto M = measures(F);
    if (M.quadrant()) return "";
    auto N = measures(substitute(F, Vertical{}));
    return N.height <= M.height - 1 ? "" : "V did not drop height of " + F.str();
}

// only when every edge is steeper than the diagonal
inline bool h_slope_applies(const Measures& M) {
    if (M.quadrant()) return false;
    for (std::size_t i = 1; i < M.vertices.size(); ++i)
        if (M.vertices[i].b - M.vertices[i - 1].b <= M.vertices[i - 1].a - M.vertices[i].a) return false;
    return true;
}

inline std::string h_slope(const ResidueSeries& F) {
    auto M = measures(F);
    if (!h_slope_applies(M)) return "";
    auto N = measures(substitute(F, Horizontal{}));
    auto want = Slope::rational(M.slope.num - static_cast<long long>(M.deg_y) * M.slope.den, M.slope.den);
    return N.slope == want ? "" : "H slope law fails for " + F.str();
}

inline std::string displacement(const ResidueSeries& F, Move m, Code t = 1) {
    auto r = apply_move(F, m, t);
    int p = static_cast<int>(F.p());
    auto A = r.total.polygon().vertices;
    auto B = r.strict.polygon().vertices;
    if (A.size() != B.size()) return "vertex count differs for " + F.str();
    for (std::size_t i = 0; i < A.size(); ++i) {
        Exp s = m == Move::V ? Exp{B[i].a + p, B[i].b} : Exp{B[i].a, B[i].b + p};
        if (!(s == A[i])) return std::string("displacement fails under ") + to_string(m) + " for " + F.str();
    }
    return "";
}

// reduced series of order >= p
inline ResidueSeries random_singular(std::mt19937_64& rng, const FieldPtr& f, int deg, int terms) {
    for (;;) {
        Poly r(f);
        std::uniform_int_distribution<Code> pc(1, f->size() - 1);
        int p = static_cast<int>(f->p());
        for (int i = 0; i < terms; ++i) {
            int a = std::uniform_int_distribution<int>(0, deg)(rng);
            int b = std::uniform_int_distribution<int>(0, deg - a)(rng);
            if (a + b < p || in_pN2({a, b}, f->p())) continue;
            r.add_term({a, b}, pc(rng));
        }
        auto F = ResidueSeries::reduce(r);
        if (!F.is_zero()) return F;
    }
}

}  // namespace laws
