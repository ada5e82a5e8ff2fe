#pragma once
// Measures read off the Newton polygon and the two adjusted invariants.

#include <insep/series.hpp>

#include <numeric>

namespace insep {

enum class Adjacency { adjacent, close, distant };

inline const char* to_string(Adjacency a) {
    switch (a) {
        case Adjacency::adjacent: return "adjacent";
        case Adjacency::close: return "close";
        default: return "distant";
    }
}

// corrections subtracted from a base measure
enum class Correction { zero, eps, delta, one_plus_delta };

inline const char* to_string(Correction c) {
    switch (c) {
        case Correction::zero: return "0";
        case Correction::eps: return "eps";
        case Correction::delta: return "delta";
        default: return "1+delta";
    }
}

enum class Tag { zero, eps, delta };

inline const char* to_string(Tag t) {
    switch (t) {
        case Tag::zero: return "0";
        case Tag::eps: return "eps";
        default: return "delta";
    }
}

// m - tag with 0 < eps < delta < 1 kept symbolic
struct AdjustedValue {
    int m = 0;
    Tag tag = Tag::zero;

    static AdjustedValue of(int base, Correction c) {
        switch (c) {
            case Correction::zero: return {base, Tag::zero};
            case Correction::eps: return {base, Tag::eps};
            case Correction::delta: return {base, Tag::delta};
            default: return {base - 1, Tag::delta};
        }
    }
    int rank() const { return tag == Tag::delta ? 0 : tag == Tag::eps ? 1 : 2; }
    friend std::strong_ordering operator<=>(const AdjustedValue& x, const AdjustedValue& y) {
        if (auto c = x.m <=> y.m; c != 0) return c;
        return x.rank() <=> y.rank();
    }
    friend bool operator==(const AdjustedValue& x, const AdjustedValue& y) = default;

    double numeric(double eps = 0.25, double delta = 0.5) const {
        return m - (tag == Tag::eps ? eps : tag == Tag::delta ? delta : 0.0);
    }
    std::string str() const {
        if (tag == Tag::zero) return std::to_string(m);
        return std::to_string(m) + "-" + to_string(tag);
    }
};

// nonnegative rational or +infinity
struct Slope {
    bool inf = true;
    long long num = 0, den = 1;

    static Slope infinity() { return {}; }
    static Slope rational(long long n, long long d) {
        long long g = std::gcd(n, d);
        if (g == 0) g = 1;
        return {false, n / g, d / g};
    }
    friend std::strong_ordering operator<=>(const Slope& x, const Slope& y) {
        if (x.inf || y.inf) return static_cast<int>(x.inf) <=> static_cast<int>(y.inf);
        return x.num * y.den <=> y.num * x.den;
    }
    friend bool operator==(const Slope& x, const Slope& y) { return (x <=> y) == 0; }
    bool is_integer() const { return !inf && den == 1; }
    std::string str() const {
        if (inf) return "inf";
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// (updent, indent), ordered lexicographically; inf for quadrants.
// Coordinates realize the least updent, then the most indent (see realizes_better).
struct Dent {
    bool inf = true;
    int up = 0, in = 0;

    friend std::strong_ordering operator<=>(const Dent& x, const Dent& y) {
        if (x.inf || y.inf) return static_cast<int>(x.inf) <=> static_cast<int>(y.inf);
        if (auto c = x.up <=> y.up; c != 0) return c;
        return x.in <=> y.in;
    }
    friend bool operator==(const Dent& x, const Dent& y) { return (x <=> y) == 0; }
    std::string str() const {
        if (inf) return "inf";
        return "(" + std::to_string(up) + "," + std::to_string(in) + ")";
    }
};

// preference among coordinates: quadrant first, then less updent, then more indent
inline bool realizes_better(const Dent& x, const Dent& y) {
    if (x.inf || y.inf) return x.inf && !y.inf;
    if (x.up != y.up) return x.up < y.up;
    return x.in > y.in;
}

struct Measures {
    std::vector<Exp> vertices;
    int ord = 0, ord_y = 0, deg_y = 0, ord_z = 0, deg_z = 0;
    int height = 0, width = 0;
    Slope slope;
    Adjacency adjacency = Adjacency::distant;
    int parity = 0;
    int dorder = 0;
    Dent dent;
    unsigned p = 2;

    bool quadrant() const { return vertices.size() == 1; }
    int adj() const { return adjacency == Adjacency::adjacent ? 2 : adjacency == Adjacency::close ? 1 : 0; }
};

inline Measures measures_of(const NewtonPolygon& N, unsigned p) {
    Measures M;
    M.p = p;
    M.vertices = N.vertices;
    const auto& A = N.vertices;
    if (A.empty()) throw Error("measures of the zero series");
    M.ord = INT32_MAX;
    for (auto& v : A) M.ord = std::min(M.ord, v.deg());
    M.deg_y = A.front().a;
    M.ord_y = A.back().a;
    M.ord_z = A.front().b;
    M.deg_z = A.back().b;
    M.height = M.deg_y - M.ord_y;
    M.width = M.deg_z - M.ord_z;
    M.adjacency = M.ord_y == 0 ? Adjacency::adjacent : M.ord_y == 1 ? Adjacency::close : Adjacency::distant;
    M.parity = (M.ord % static_cast<int>(p) == 0) ? 1 : 0;
    M.dorder = M.ord - M.ord_y - M.ord_z;
    if (A.size() >= 2) {
        int a1 = A[0].a, b1 = A[0].b, a2 = A[1].a, b2 = A[1].b;
        M.slope = Slope::rational(1ll * a1 * (b2 - b1), a1 - a2);
        M.dent = Dent{false, a1 - a2, b2 - b1};
    }
    return M;
}

inline Measures measures(const ResidueSeries& F) { return measures_of(F.polygon(), F.p()); }

inline Correction bonus(Adjacency a) {
    switch (a) {
        case Adjacency::adjacent: return Correction::one_plus_delta;
        case Adjacency::close: return Correction::eps;
        default: return Correction::zero;
    }
}

inline Correction defect(const Measures& M) {
    int h = M.deg_y - M.ord_y;
    if (M.dorder == h) return bonus(M.adjacency);
    if (M.dorder == h - 1) return M.adjacency == Adjacency::adjacent ? Correction::delta : Correction::zero;
    return Correction::zero;
}

inline bool is_quasi_monomial(const Measures& M) { return M.width == 1 && M.ord_y == 0; }

inline AdjustedValue intricacy(const Measures& M) { return AdjustedValue::of(M.height, bonus(M.adjacency)); }
inline AdjustedValue adjusted_dorder(const Measures& M) { return AdjustedValue::of(M.dorder, defect(M)); }

enum class Variant { height, dorder };

inline const char* to_string(Variant v) { return v == Variant::height ? "height" : "dorder"; }

struct InvariantVector {
    Variant variant = Variant::height;
    AdjustedValue first;
    Slope slope;  // variant height
    Dent dent;    // variant dorder

    std::string second_str() const { return variant == Variant::height ? slope.str() : dent.str(); }
    std::string str() const { return "(" + first.str() + ", " + second_str() + ")"; }
};

inline InvariantVector invariant_i(const Measures& M) { return {Variant::height, intricacy(M), M.slope, {}}; }
inline InvariantVector invariant_j(const Measures& M) { return {Variant::dorder, adjusted_dorder(M), {}, M.dent}; }

inline std::strong_ordering compare(const InvariantVector& x, const InvariantVector& y) {
    if (x.variant != y.variant) throw Error("comparing invariants of different variants");
    if (auto c = x.first <=> y.first; c != 0) return c;
    return x.variant == Variant::height ? x.slope <=> y.slope : x.dent <=> y.dent;
}

}  // namespace insep
