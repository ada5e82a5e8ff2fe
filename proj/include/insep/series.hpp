#pragma once
// Bivariate polynomials in y, z over a finite field, their canonical
// representatives modulo p-th powers, Newton polygons and the substitutions
// used by coordinate changes and blowup charts.

#include <insep/algebra.hpp>

#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

namespace insep {

struct Exp {
    int a = 0;  // exponent of y
    int b = 0;  // exponent of z
    friend auto operator<=>(const Exp&, const Exp&) = default;
    int deg() const { return a + b; }
};

inline std::string mono_str(Exp e) {
    std::string s;
    auto put = [&](char v, int n) {
        if (!n) return;
        if (!s.empty()) s += '*';
        s += v;
        if (n > 1) s += "^" + std::to_string(n);
    };
    put('y', e.a);
    put('z', e.b);
    return s.empty() ? "1" : s;
}

// raw polynomial; no reduction invariant
class Poly {
public:
    using Terms = std::map<Exp, Code>;

    Poly() = default;
    explicit Poly(FieldPtr f) : f_(std::move(f)) {}
    Poly(FieldPtr f, Terms t) : f_(std::move(f)), t_(std::move(t)) {
        std::erase_if(t_, [](const auto& kv) { return kv.second == 0; });
    }

    const FieldPtr& field_ptr() const { return f_; }
    const Field& field() const { return *f_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    Code coeff(Exp e) const {
        auto it = t_.find(e);
        return it == t_.end() ? 0 : it->second;
    }
    void add_term(Exp e, Code c) {
        if (!c) return;
        if (e.a < 0 || e.b < 0) throw Error("negative exponent");
        auto [it, fresh] = t_.emplace(e, c);
        if (!fresh) {
            it->second = f_->add(it->second, c);
            if (!it->second) t_.erase(it);
        }
    }
    int total_degree() const {
        int d = -1;
        for (auto& [e, c] : t_) d = std::max(d, e.deg());
        return d;
    }

    friend bool operator==(const Poly& x, const Poly& y) { return x.f_ == y.f_ && x.t_ == y.t_; }

    // canonical text: alpha descending, beta ascending
    std::string str() const {
        if (t_.empty()) return "0";
        std::vector<std::pair<Exp, Code>> v(t_.begin(), t_.end());
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
            if (x.first.a != y.first.a) return x.first.a > y.first.a;
            return x.first.b < y.first.b;
        });
        std::string s;
        for (auto& [e, c] : v) {
            if (!s.empty()) s += " + ";
            std::string cs = f_->format(c);
            bool compound = cs.find('+') != std::string::npos || cs.find('*') != std::string::npos;
            bool unit_mono = e.a == 0 && e.b == 0;
            if (unit_mono) {
                s += compound ? "(" + cs + ")" : cs;
            } else {
                if (cs != "1") s += (compound ? "(" + cs + ")" : cs) + "*";
                s += mono_str(e);
            }
        }
        return s;
    }

    static Poly parse(std::string_view text, FieldPtr f) {
        Parser ps{std::string(text), 0, f};
        return ps.run();
    }

private:
    struct Parser {
        std::string s;
        std::size_t i;
        FieldPtr f;

        [[noreturn]] void fail(const std::string& what) const {
            throw Error("parse error at position " + std::to_string(i) + ": " + what);
        }
        void ws() {
            while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        }
        long long number() {
            if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected a number");
            long long v = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                v = v * 10 + (s[i++] - '0');
                if (v > 1000000000) fail("number too large");
            }
            return v;
        }
        int exponent() {
            ws();
            if (i < s.size() && s[i] == '^') {
                ++i;
                ws();
                return static_cast<int>(number());
            }
            return 1;
        }
        Poly run() {
            Poly out(f);
            ws();
            if (i >= s.size()) fail("empty polynomial");
            bool first = true;
            while (true) {
                ws();
                if (i >= s.size()) break;
                Code sign = 1;
                if (s[i] == '+' || s[i] == '-') {
                    if (s[i] == '-') sign = f->neg(1);
                    ++i;
                } else if (!first) {
                    fail("expected '+' or '-'");
                }
                first = false;
                ws();
                auto [e, c] = term();
                out.add_term(e, f->mul(sign, c));
            }
            return out;
        }
        std::pair<Exp, Code> term() {
            Exp e;
            Code c = 1;
            bool any = false;
            while (true) {
                ws();
                if (i >= s.size()) break;
                char ch = s[i];
                if (ch == 'y' || ch == 'z') {
                    ++i;
                    int n = exponent();
                    (ch == 'y' ? e.a : e.b) += n;
                } else if (ch == 'g') {
                    ++i;
                    int n = exponent();
                    c = f->mul(c, f->pow(f->gen(), static_cast<std::uint64_t>(n)));
                } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                    c = f->mul(c, f->from_int(number()));
                } else if (ch == '(') {
                    auto close = s.find(')', i);
                    if (close == std::string::npos) fail("unclosed '('");
                    try {
                        c = f->mul(c, f->parse(std::string_view(s).substr(i + 1, close - i - 1)));
                    } catch (const Error& err) {
                        fail(err.what());
                    }
                    i = close + 1;
                } else {
                    fail(std::string("unexpected '") + ch + "'");
                }
                any = true;
                ws();
                if (i < s.size() && s[i] == '*') {
                    ++i;
                    continue;
                }
                break;
            }
            if (!any) fail("expected a term");
            return {e, c};
        }
    };

    FieldPtr f_;
    Terms t_;
};

// ---------------------------------------------------------------- polygon

struct NewtonPolygon {
    std::vector<Exp> vertices;  // alpha decreasing, beta increasing
    bool quadrant() const { return vertices.size() == 1; }
    const Exp& top() const { return vertices.front(); }
    const Exp& bottom() const { return vertices.back(); }
    friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;
};

inline NewtonPolygon polygon_of(const Poly& F) {
    if (F.is_zero()) throw Error("Newton polygon of the zero series");
    // lowest beta for every alpha
    std::map<int, int> low;
    int bmin = INT32_MAX;
    for (auto& [e, c] : F.terms()) {
        auto [it, fresh] = low.emplace(e.a, e.b);
        if (!fresh) it->second = std::min(it->second, e.b);
        bmin = std::min(bmin, e.b);
    }
    int amax = INT32_MAX;  // smallest alpha reaching the lowest beta
    for (auto& [a, b] : low)
        if (b == bmin) {
            amax = a;
            break;
        }
    // staircase points, then the lower convex chain (alpha increasing)
    std::vector<Exp> pts;
    int best = INT32_MAX;
    for (auto& [a, b] : low) {
        if (a > amax) break;
        if (b < best) {
            pts.push_back({a, b});
            best = b;
        }
    }
    std::vector<Exp> hull;
    for (auto& q : pts) {
        while (hull.size() >= 2) {
            const Exp& o = hull[hull.size() - 2];
            const Exp& m = hull.back();
            // keep m only if it lies strictly below the segment o-q
            long long cross = 1ll * (m.a - o.a) * (q.b - o.b) - 1ll * (m.b - o.b) * (q.a - o.a);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(q);
    }
    std::reverse(hull.begin(), hull.end());
    return {hull};
}

// ---------------------------------------------------------------- residues

inline bool in_pN2(Exp e, unsigned p) { return e.a % p == 0 && e.b % p == 0; }

inline Poly drop_pth_powers(const Poly& F) {
    Poly::Terms t;
    unsigned p = F.field().p();
    for (auto& [e, c] : F.terms())
        if (!in_pN2(e, p)) t.emplace(e, c);
    return Poly(F.field_ptr(), std::move(t));
}

// canonical representative of a class in R/R^p: support avoids p*N^2
class ResidueSeries {
public:
    ResidueSeries() = default;

    static ResidueSeries reduce(const Poly& F, std::optional<int> trunc = std::nullopt, bool truncated = false) {
        ResidueSeries r;
        Poly::Terms t;
        unsigned p = F.field().p();
        for (auto& [e, c] : F.terms()) {
            if (in_pN2(e, p)) continue;
            if (trunc && e.deg() > *trunc) {
                truncated = true;
                continue;
            }
            t.emplace(e, c);
        }
        r.poly_ = Poly(F.field_ptr(), std::move(t));
        r.trunc_ = trunc;
        r.truncated_ = truncated;
        return r;
    }
    static ResidueSeries parse(std::string_view s, FieldPtr f, std::optional<int> trunc = std::nullopt) {
        return reduce(Poly::parse(s, std::move(f)), trunc);
    }

    const Poly& poly() const { return poly_; }
    const FieldPtr& field_ptr() const { return poly_.field_ptr(); }
    const Field& field() const { return poly_.field(); }
    unsigned p() const { return poly_.field().p(); }
    bool is_zero() const { return poly_.is_zero(); }
    std::optional<int> trunc() const { return trunc_; }
    bool truncated() const { return truncated_; }
    std::string str() const { return poly_.str(); }

    NewtonPolygon polygon() const { return polygon_of(poly_); }

    int ord() const {
        if (is_zero()) throw Error("order of the zero series");
        int d = INT32_MAX;
        for (auto& [e, c] : poly_.terms()) d = std::min(d, e.deg());
        return d;
    }
    int ord_y() const {
        if (is_zero()) throw Error("ord_y of the zero series");
        int d = INT32_MAX;
        for (auto& [e, c] : poly_.terms()) d = std::min(d, e.a);
        return d;
    }
    int ord_z() const {
        if (is_zero()) throw Error("ord_z of the zero series");
        int d = INT32_MAX;
        for (auto& [e, c] : poly_.terms()) d = std::min(d, e.b);
        return d;
    }

    ResidueSeries initial_form() const {
        int d = ord();
        Poly::Terms t;
        for (auto& [e, c] : poly_.terms())
            if (e.deg() == d) t.emplace(e, c);
        ResidueSeries r;
        r.poly_ = Poly(field_ptr(), std::move(t));
        r.trunc_ = trunc_;
        r.truncated_ = truncated_;
        return r;
    }

    friend bool operator==(const ResidueSeries& x, const ResidueSeries& y) { return x.poly_ == y.poly_; }

private:
    Poly poly_;
    std::optional<int> trunc_;
    bool truncated_ = false;
};

// ---------------------------------------------------------------- substitutions

struct ShiftY {  // y -> y + a(z)
    UPoly a;
};
struct Horizontal {};  // (y,z) -> (yz, z)
struct Vertical {};    // (y,z) -> (y, yz)
struct Translate {     // (y,z) -> (yz + tz, z)
    Code t;
};
struct ScaleZ {  // z -> u*z
    Code u;
};
using SubstMap = std::variant<ShiftY, Horizontal, Vertical, Translate, ScaleZ>;

namespace detail {

// binomial coefficients of row n mod p
inline std::vector<Code> binom_row(int n, const Field& F) {
    std::vector<Code> row(static_cast<std::size_t>(n) + 1, 0);
    // Lucas: C(n,i) = prod C(n_j, i_j)
    unsigned p = F.p();
    static thread_local std::vector<std::vector<unsigned>> small;
    static thread_local unsigned small_p = 0;
    if (small_p != p) {
        small.assign(p, std::vector<unsigned>(p, 0));
        for (unsigned a = 0; a < p; ++a) {
            small[a][0] = 1;
            for (unsigned b = 1; b <= a; ++b) small[a][b] = (small[a - 1][b - 1] + (b <= a - 1 ? small[a - 1][b] : 0)) % p;
        }
        small_p = p;
    }
    for (int i = 0; i <= n; ++i) {
        unsigned v = 1;
        int x = n, y = i;
        while (v && (x || y)) {
            unsigned xd = static_cast<unsigned>(x % static_cast<int>(p)), yd = static_cast<unsigned>(y % static_cast<int>(p));
            v = yd > xd ? 0 : v * small[xd][yd] % p;
            x /= static_cast<int>(p);
            y /= static_cast<int>(p);
        }
        row[static_cast<std::size_t>(i)] = v;
    }
    return row;
}

// rows[alpha] = coefficient polynomial in z
inline std::vector<UPoly> to_rows(const Poly& F) {
    std::vector<UPoly> rows;
    for (auto& [e, c] : F.terms()) {
        if (rows.size() <= static_cast<std::size_t>(e.a)) rows.resize(static_cast<std::size_t>(e.a) + 1);
        auto& r = rows[static_cast<std::size_t>(e.a)].c;
        if (r.size() <= static_cast<std::size_t>(e.b)) r.resize(static_cast<std::size_t>(e.b) + 1, 0);
        r[static_cast<std::size_t>(e.b)] = c;
    }
    return rows;
}
inline Poly from_rows(const std::vector<UPoly>& rows, const FieldPtr& f) {
    Poly::Terms t;
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < rows[a].c.size(); ++b)
            if (rows[a].c[b]) t.emplace(Exp{static_cast<int>(a), static_cast<int>(b)}, rows[a].c[b]);
    return Poly(f, std::move(t));
}

inline Poly shift_y(const Poly& F, const UPoly& a) {
    const Field& K = F.field();
    if (a.is_zero() || F.is_zero()) return F;
    auto rows = to_rows(F);
    std::vector<UPoly> R;
    for (std::size_t i = rows.size(); i-- > 0;) {
        // R = R*(y + a) + rows[i]
        std::vector<UPoly> N(R.size() + 1);
        for (std::size_t j = 0; j < R.size(); ++j) {
            N[j + 1] = upoly::add(K, N[j + 1], R[j]);
            N[j] = upoly::add(K, N[j], upoly::mul(K, a, R[j]));
        }
        N[0] = upoly::add(K, N[0], rows[i]);
        R = std::move(N);
    }
    return from_rows(R, F.field_ptr());
}

inline Poly translate(const Poly& F, Code t) {
    const Field& K = F.field();
    Poly out(F.field_ptr());
    std::vector<Code> tp{1};
    for (auto& [e, c] : F.terms()) {
        while (tp.size() <= static_cast<std::size_t>(e.a)) tp.push_back(K.mul(tp.back(), t));
        auto row = binom_row(e.a, K);
        for (int i = 0; i <= e.a; ++i) {
            Code b = row[static_cast<std::size_t>(i)];
            if (!b) continue;
            Code v = K.mul(c, K.mul(K.from_int(static_cast<long long>(b)), tp[static_cast<std::size_t>(e.a - i)]));
            out.add_term({i, e.a + e.b}, v);
        }
    }
    return out;
}

inline Poly apply(const Poly& F, const SubstMap& m) {
    const Field& K = F.field();
    return std::visit(
        [&](const auto& s) -> Poly {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ShiftY>) {
                return shift_y(F, s.a);
            } else if constexpr (std::is_same_v<S, Horizontal>) {
                Poly::Terms t;
                for (auto& [e, c] : F.terms()) t.emplace(Exp{e.a, e.a + e.b}, c);
                return Poly(F.field_ptr(), std::move(t));
            } else if constexpr (std::is_same_v<S, Vertical>) {
                Poly::Terms t;
                for (auto& [e, c] : F.terms()) t.emplace(Exp{e.a + e.b, e.b}, c);
                return Poly(F.field_ptr(), std::move(t));
            } else if constexpr (std::is_same_v<S, Translate>) {
                return translate(F, s.t);
            } else {
                if (s.u == 0) throw Error("z -> u*z needs a unit u");
                Poly::Terms t;
                for (auto& [e, c] : F.terms()) t.emplace(e, K.mul(c, K.pow(s.u, static_cast<std::uint64_t>(e.b))));
                return Poly(F.field_ptr(), std::move(t));
            }
        },
        m);
}

}  // namespace detail

inline Poly substitute_raw(const Poly& F, const SubstMap& m) { return detail::apply(F, m); }

inline ResidueSeries substitute(const ResidueSeries& F, const SubstMap& m) {
    return ResidueSeries::reduce(detail::apply(F.poly(), m), F.trunc(), F.truncated());
}

inline Poly monomial_divide(const Poly& F, Exp d) {
    Poly::Terms t;
    for (auto& [e, c] : F.terms()) {
        if (e.a < d.a || e.b < d.b)
            throw Error("monomial " + mono_str(e) + " is not divisible by " + mono_str(d));
        t.emplace(Exp{e.a - d.a, e.b - d.b}, c);
    }
    return Poly(F.field_ptr(), std::move(t));
}
inline Poly monomial_divide(const ResidueSeries& F, Exp d) { return monomial_divide(F.poly(), d); }

inline Poly monomial_multiply(const Poly& F, Exp d) {
    Poly::Terms t;
    for (auto& [e, c] : F.terms()) t.emplace(Exp{e.a + d.a, e.b + d.b}, c);
    return Poly(F.field_ptr(), std::move(t));
}

inline Poly swap_yz(const Poly& F) {
    Poly::Terms t;
    for (auto& [e, c] : F.terms()) t.emplace(Exp{e.b, e.a}, c);
    return Poly(F.field_ptr(), std::move(t));
}

// move every coefficient into the tower's current field
inline Poly embed(const Poly& F, const FieldTower& T) {
    if (F.field_ptr() == T.field()) return F;
    unsigned g = F.field().generation();
    if (T.field_at(g) != F.field_ptr()) throw Error("series from a foreign field");
    Poly::Terms t;
    for (auto& [e, c] : F.terms()) t.emplace(e, T.embed_code(g, c));
    return Poly(T.field(), std::move(t));
}
inline ResidueSeries embed(const ResidueSeries& F, const FieldTower& T) {
    return ResidueSeries::reduce(embed(F.poly(), T), F.trunc(), F.truncated());
}
inline UPoly embed(const UPoly& a, unsigned from_generation, const FieldTower& T) {
    UPoly r = a;
    for (auto& c : r.c) c = T.embed_code(from_generation, c);
    return r;
}

// text for a univariate polynomial in z, ascending powers; e.g. "z + g*z^2"
inline std::string zpoly_str(const UPoly& a, const Field& F) {
    if (a.is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        if (!s.empty()) s += " + ";
        std::string cs = F.format(a.c[i]);
        bool compound = cs.find('+') != std::string::npos || cs.find('*') != std::string::npos;
        if (compound) cs = "(" + cs + ")";
        if (i == 0) {
            s += cs;
            continue;
        }
        if (cs != "1") s += cs + "*";
        s += mono_str({0, static_cast<int>(i)});
    }
    return s;
}

}  // namespace insep
