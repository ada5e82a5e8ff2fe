#pragma once
// Finite fields F_{p^k}, a single-field tower with explicit re-embedding,
// and univariate polynomials with root finding.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace insep {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Code = std::uint64_t;  // base-p digits of the coordinate vector

class Field {
public:
    // modulus: low-to-high coefficients over F_p, monic, degree k >= 1
    Field(unsigned p, std::vector<unsigned> modulus, unsigned generation = 0)
        : p_(p), mod_(std::move(modulus)), gen_(generation) {
        if (p < 2) throw Error("characteristic must be prime");
        for (unsigned d = 2; d * d <= p; ++d)
            if (p % d == 0) throw Error("characteristic must be prime");
        if (mod_.size() < 2 || mod_.back() != 1) throw Error("modulus must be monic of degree >= 1");
        k_ = static_cast<unsigned>(mod_.size() - 1);
        long double approx = 1;
        q_ = 1;
        for (unsigned i = 0; i < k_; ++i) {
            approx *= p;
            q_ *= p;
        }
        if (approx > 4.0e18L) throw Error("field too large");
        pow_.resize(k_ + 1);
        pow_[0] = 1;
        for (unsigned i = 1; i <= k_; ++i) pow_[i] = pow_[i - 1] * p_;
        if (q_ <= (1u << 16) && k_ > 1) build_tables();
    }

    unsigned p() const { return p_; }
    unsigned degree() const { return k_; }
    Code size() const { return q_; }
    unsigned generation() const { return gen_; }
    const std::vector<unsigned>& modulus() const { return mod_; }

    Code digit(Code a, unsigned i) const { return (a / pow_[i]) % p_; }

    std::vector<unsigned> digits(Code a) const {
        std::vector<unsigned> d(k_);
        for (unsigned i = 0; i < k_; ++i, a /= p_) d[i] = static_cast<unsigned>(a % p_);
        return d;
    }
    Code from_digits(const std::vector<unsigned>& d) const {
        Code c = 0;
        for (unsigned i = static_cast<unsigned>(std::min<std::size_t>(d.size(), k_)); i-- > 0;)
            c = c * p_ + d[i] % p_;
        return c;
    }

    Code from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<Code>(r);
    }
    // the generator g (only meaningful for k > 1)
    Code gen() const { return k_ > 1 ? p_ : from_int(-static_cast<long long>(mod_[0])); }

    Code add(Code a, Code b) const {
        if (p_ == 2) return a ^ b;
        if (k_ == 1) return (a + b) % p_;
        Code r = 0, m = 1;
        while (a || b) {
            r += ((a % p_ + b % p_) % p_) * m;
            a /= p_, b /= p_, m *= p_;
        }
        return r;
    }
    Code neg(Code a) const {
        if (p_ == 2) return a;
        Code r = 0, m = 1;
        while (a) {
            r += ((p_ - a % p_) % p_) * m;
            a /= p_, m *= p_;
        }
        return r;
    }
    Code sub(Code a, Code b) const { return add(a, neg(b)); }

    Code mul(Code a, Code b) const {
        if (a == 0 || b == 0) return 0;
        if (k_ == 1) return (a * b) % p_;
        if (!log_.empty()) return exp_[log_[a] + log_[b]];
        return mul_slow(a, b);
    }
    Code pow(Code a, std::uint64_t e) const {
        Code r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Code inv(Code a) const {
        if (a == 0) throw Error("division by zero");
        if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
        return pow(a, q_ - 2);
    }
    Code div(Code a, Code b) const { return mul(a, inv(b)); }
    Code frob(Code a) const { return pow(a, p_); }
    // x -> x^p is bijective, its inverse is x -> x^(q/p)
    Code pth_root(Code a) const { return pow(a, q_ / p_); }

    // polynomial in g, highest power first; e.g. "g^2+2*g+1"
    std::string format(Code a) const {
        if (a == 0) return "0";
        std::string s;
        for (unsigned i = k_; i-- > 0;) {
            unsigned c = static_cast<unsigned>(digit(a, i));
            if (!c) continue;
            if (!s.empty()) s += '+';
            if (i == 0) {
                s += std::to_string(c);
                continue;
            }
            if (c != 1) s += std::to_string(c) + "*";
            s += 'g';
            if (i > 1) s += "^" + std::to_string(i);
        }
        return s;
    }

    Code parse(std::string_view text) const {
        std::string t;
        for (char ch : text)
            if (ch != ' ' && ch != '\t') t += ch;
        if (t.empty()) throw Error("empty field element");
        std::size_t pos = 0;
        Code acc = 0;
        bool first = true;
        while (pos < t.size()) {
            bool minus = false;
            if (t[pos] == '+' || t[pos] == '-') {
                minus = t[pos] == '-';
                ++pos;
            } else if (!first) {
                throw Error("bad field element '" + t + "' at " + std::to_string(pos));
            }
            first = false;
            Code term = 1;
            bool any = false;
            while (pos < t.size() && t[pos] != '+' && t[pos] != '-') {
                if (any) {
                    if (t[pos] != '*') throw Error("bad field element '" + t + "' at " + std::to_string(pos));
                    ++pos;
                }
                if (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
                    long long v = 0;
                    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
                        v = (v * 10 + (t[pos++] - '0')) % static_cast<long long>(p_);
                    term = mul(term, from_int(v));
                } else if (pos < t.size() && t[pos] == 'g') {
                    ++pos;
                    std::uint64_t e = 1;
                    if (pos < t.size() && t[pos] == '^') {
                        ++pos;
                        if (pos >= t.size() || !std::isdigit(static_cast<unsigned char>(t[pos])))
                            throw Error("bad exponent in '" + t + "' at " + std::to_string(pos));
                        e = 0;
                        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
                            e = e * 10 + static_cast<std::uint64_t>(t[pos++] - '0');
                    }
                    term = mul(term, pow(gen(), e));
                } else {
                    throw Error("bad field element '" + t + "' at " + std::to_string(pos));
                }
                any = true;
            }
            if (!any) throw Error("bad field element '" + t + "' at " + std::to_string(pos));
            acc = minus ? sub(acc, term) : add(acc, term);
        }
        return acc;
    }

private:
    Code mul_slow(Code a, Code b) const {
        auto da = digits(a), db = digits(b);
        std::vector<unsigned long long> r(2 * k_, 0);
        for (unsigned i = 0; i < k_; ++i) {
            if (!da[i]) continue;
            for (unsigned j = 0; j < k_; ++j) r[i + j] = (r[i + j] + 1ull * da[i] * db[j]) % p_;
        }
        for (unsigned i = 2 * k_ - 1; i >= k_; --i) {
            auto c = r[i];
            if (!c) continue;
            r[i] = 0;
            for (unsigned j = 0; j < k_; ++j)
                r[i - k_ + j] = (r[i - k_ + j] + (p_ - mod_[j]) % p_ * c) % p_;
        }
        Code out = 0;
        for (unsigned i = k_; i-- > 0;) out = out * p_ + r[i];
        return out;
    }

    void build_tables() {
        // find a primitive element by trial
        Code n = q_ - 1;
        std::vector<Code> primes;
        Code m = n;
        for (Code d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                primes.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) primes.push_back(m);
        auto slow_pow = [&](Code a, Code e) {
            Code r = 1;
            while (e) {
                if (e & 1) r = mul_slow(r, a);
                a = mul_slow(a, a);
                e >>= 1;
            }
            return r;
        };
        Code prim = 0;
        for (Code c = 2; c < q_; ++c) {
            bool ok = true;
            for (Code l : primes)
                if (slow_pow(c, n / l) == 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                prim = c;
                break;
            }
        }
        if (!prim) throw Error("no primitive element found");
        exp_.assign(2 * n + 1, 0);
        log_.assign(q_, 0);
        Code x = 1;
        for (Code i = 0; i < n; ++i) {
            exp_[i] = x;
            log_[x] = static_cast<std::uint32_t>(i);
            x = mul_slow(x, prim);
        }
        for (Code i = n; i < 2 * n + 1; ++i) exp_[i] = exp_[i - n];
    }

    unsigned p_, k_ = 1;
    std::vector<unsigned> mod_;
    unsigned gen_;
    Code q_ = 0;
    std::vector<Code> pow_;
    std::vector<std::uint32_t> log_;
    std::vector<Code> exp_;
};

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr prime_field(unsigned p) { return std::make_shared<const Field>(p, std::vector<unsigned>{0, 1}); }

// element with a handle on its field; arithmetic across generations is refused
class Elem {
public:
    Elem() = default;
    Elem(FieldPtr f, Code c) : f_(std::move(f)), c_(c) {}

    const FieldPtr& field() const { return f_; }
    Code code() const { return c_; }
    bool is_zero() const { return c_ == 0; }

    friend Elem operator+(const Elem& a, const Elem& b) { return {same(a, b), a.f_->add(a.c_, b.c_)}; }
    friend Elem operator-(const Elem& a, const Elem& b) { return {same(a, b), a.f_->sub(a.c_, b.c_)}; }
    friend Elem operator*(const Elem& a, const Elem& b) { return {same(a, b), a.f_->mul(a.c_, b.c_)}; }
    friend Elem operator/(const Elem& a, const Elem& b) { return {same(a, b), a.f_->div(a.c_, b.c_)}; }
    Elem operator-() const { return {f_, f_->neg(c_)}; }
    Elem inv() const { return {f_, f_->inv(c_)}; }
    Elem pow(std::uint64_t e) const { return {f_, f_->pow(c_, e)}; }
    Elem pth_root() const { return {f_, f_->pth_root(c_)}; }
    friend bool operator==(const Elem& a, const Elem& b) { return same(a, b) && a.c_ == b.c_; }
    std::string str() const { return f_->format(c_); }

private:
    static const FieldPtr& same(const Elem& a, const Elem& b) {
        if (!a.f_ || !b.f_) throw Error("uninitialised field element");
        if (a.f_ != b.f_)
            throw Error("embedding required: elements from generations " + std::to_string(a.f_->generation()) +
                        " and " + std::to_string(b.f_->generation()));
        return a.f_;
    }
    FieldPtr f_;
    Code c_ = 0;
};

// ---------------------------------------------------------------- univariate

// dense coefficients, low to high, no trailing zeros
struct UPoly {
    std::vector<Code> c;

    UPoly() = default;
    explicit UPoly(std::vector<Code> v) : c(std::move(v)) { trim(); }
    static UPoly constant(Code a) { return UPoly(std::vector<Code>{a}); }
    static UPoly monomial(Code a, std::size_t e) {
        std::vector<Code> v(e + 1, 0);
        v[e] = a;
        return UPoly(std::move(v));
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    Code lead() const { return c.empty() ? 0 : c.back(); }
    Code at(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    friend bool operator==(const UPoly&, const UPoly&) = default;
};

namespace upoly {

inline UPoly add(const Field& F, const UPoly& a, const UPoly& b) {
    std::vector<Code> r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(a.at(i), b.at(i));
    return UPoly(std::move(r));
}
inline UPoly sub(const Field& F, const UPoly& a, const UPoly& b) {
    std::vector<Code> r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(a.at(i), b.at(i));
    return UPoly(std::move(r));
}
inline UPoly scale(const Field& F, const UPoly& a, Code s) {
    std::vector<Code> r(a.c.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.mul(a.c[i], s);
    return UPoly(std::move(r));
}
inline UPoly mul(const Field& F, const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Code> r(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            if (b.c[j]) r[i + j] = F.add(r[i + j], F.mul(a.c[i], b.c[j]));
    }
    return UPoly(std::move(r));
}
inline std::pair<UPoly, UPoly> divmod(const Field& F, const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    if (a.deg() < b.deg()) return {UPoly{}, a};
    std::vector<Code> r = a.c, q(a.c.size() - b.c.size() + 1, 0);
    Code li = F.inv(b.lead());
    for (std::size_t i = r.size(); i-- >= b.c.size();) {
        if (!r[i]) continue;
        Code f = F.mul(r[i], li);
        std::size_t s = i - (b.c.size() - 1);
        q[s] = f;
        for (std::size_t j = 0; j < b.c.size(); ++j) r[s + j] = F.sub(r[s + j], F.mul(f, b.c[j]));
    }
    r.resize(b.c.size() - 1);
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}
inline UPoly rem(const Field& F, const UPoly& a, const UPoly& b) { return divmod(F, a, b).second; }
inline UPoly monic(const Field& F, const UPoly& a) { return a.is_zero() ? a : scale(F, a, F.inv(a.lead())); }
inline UPoly gcd(const Field& F, UPoly a, UPoly b) {
    while (!b.is_zero()) {
        auto r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}
inline UPoly derivative(const Field& F, const UPoly& a) {
    if (a.c.size() <= 1) return {};
    std::vector<Code> r(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) r[i - 1] = F.mul(a.c[i], F.from_int(static_cast<long long>(i)));
    return UPoly(std::move(r));
}
inline Code eval(const Field& F, const UPoly& a, Code x) {
    Code r = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, x), a.c[i]);
    return r;
}
inline UPoly mulmod(const Field& F, const UPoly& a, const UPoly& b, const UPoly& m) { return rem(F, mul(F, a, b), m); }
inline UPoly powmod(const Field& F, UPoly a, std::uint64_t e, const UPoly& m) {
    UPoly r = rem(F, UPoly::constant(1), m);
    a = rem(F, a, m);
    while (e) {
        if (e & 1) r = mulmod(F, r, a, m);
        e >>= 1;
        if (e) a = mulmod(F, a, a, m);
    }
    return r;
}
// x^(Q^i) mod m by repeated Q-th powering
inline UPoly frob_power_x(const Field& F, const UPoly& m, unsigned i) {
    UPoly x = UPoly::monomial(1, 1);
    UPoly r = rem(F, x, m);
    for (unsigned j = 0; j < i; ++j) r = powmod(F, r, F.size(), m);
    return r;
}
// coefficientwise p-th root of a polynomial in x^p
inline UPoly pth_root(const Field& F, const UPoly& a) {
    std::vector<Code> r(a.c.empty() ? 0 : (a.c.size() - 1) / F.p() + 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        if (i % F.p()) throw Error("not a p-th power");
        r[i / F.p()] = F.pth_root(a.c[i]);
    }
    return UPoly(std::move(r));
}

// square-free decomposition: pairs (square-free monic factor, multiplicity)
inline std::vector<std::pair<UPoly, unsigned>> squarefree(const Field& F, const UPoly& f0) {
    std::vector<std::pair<UPoly, unsigned>> out;
    UPoly f = monic(F, f0);
    if (f.deg() < 1) return out;
    UPoly fd = derivative(F, f);
    UPoly c = gcd(F, f, fd);
    UPoly w = divmod(F, f, c).first;
    unsigned i = 1;
    while (w.deg() > 0) {
        UPoly y = gcd(F, w, c);
        UPoly fac = divmod(F, w, y).first;
        if (fac.deg() > 0) out.emplace_back(fac, i);
        w = y;
        c = divmod(F, c, y).first;
        ++i;
    }
    if (c.deg() > 0) {
        for (auto& [g, m] : squarefree(F, pth_root(F, c))) out.emplace_back(g, m * F.p());
    }
    return out;
}

// split a product of distinct linear factors into roots (Cantor-Zassenhaus)
inline void split_linear(const Field& F, const UPoly& g, std::mt19937_64& rng, std::vector<Code>& roots) {
    if (g.deg() <= 0) return;
    if (g.deg() == 1) {
        roots.push_back(F.neg(F.div(g.c[0], g.c[1])));
        return;
    }
    if (F.size() <= 64) {
        for (Code x = 0; x < F.size(); ++x)
            if (eval(F, g, x) == 0) roots.push_back(x);
        return;
    }
    std::uniform_int_distribution<Code> pick(0, F.size() - 1);
    for (;;) {
        std::vector<Code> a(static_cast<std::size_t>(g.deg()));
        for (auto& x : a) x = pick(rng);
        UPoly ap(std::move(a));
        if (ap.deg() < 1) continue;
        UPoly b;
        if (F.p() == 2) {
            UPoly t = ap, s = ap;
            for (unsigned i = 1; i < F.degree(); ++i) {
                t = mulmod(F, t, t, g);
                s = add(F, s, t);
            }
            b = s;
        } else {
            b = sub(F, powmod(F, ap, (F.size() - 1) / 2, g), UPoly::constant(1));
        }
        UPoly d = gcd(F, g, b);
        if (d.deg() > 0 && d.deg() < g.deg()) {
            split_linear(F, d, rng, roots);
            split_linear(F, divmod(F, g, d).first, rng, roots);
            return;
        }
    }
}

// degrees of the irreducible factors of a square-free monic polynomial (distinct degree)
inline std::vector<unsigned> factor_degrees(const Field& F, UPoly f) {
    std::vector<unsigned> out;
    UPoly x = UPoly::monomial(1, 1);
    UPoly h = rem(F, x, f);
    for (unsigned i = 1; f.deg() > 0; ++i) {
        if (2 * static_cast<int>(i) > f.deg()) {
            out.push_back(static_cast<unsigned>(f.deg()));
            break;
        }
        h = powmod(F, h, F.size(), f);
        UPoly g = gcd(F, f, sub(F, h, x));
        if (g.deg() > 0) {
            for (int j = 0; j < g.deg() / static_cast<int>(i); ++j) out.push_back(i);
            f = divmod(F, f, g).first;
            h = rem(F, h, f);
        }
    }
    return out;
}

inline bool is_irreducible(const Field& F, const UPoly& f) {
    if (f.deg() < 1) return false;
    if (f.deg() == 1) return true;
    auto fm = monic(F, f);
    auto sf = squarefree(F, fm);
    if (sf.size() != 1 || sf[0].second != 1) return false;
    auto d = factor_degrees(F, fm);
    return d.size() == 1;
}

// roots lying in F itself, with multiplicities, sorted by code
inline std::vector<std::pair<Code, unsigned>> roots_in_field(const Field& F, const UPoly& f, std::uint64_t seed = 1) {
    if (f.is_zero()) throw Error("roots of the zero polynomial");
    std::vector<std::pair<Code, unsigned>> out;
    std::mt19937_64 rng(seed);
    UPoly x = UPoly::monomial(1, 1);
    for (auto& [g, m] : squarefree(F, f)) {
        UPoly xq = powmod(F, x, F.size(), g);
        UPoly lin = gcd(F, g, sub(F, xq, x));
        std::vector<Code> r;
        split_linear(F, lin, rng, r);
        for (Code c : r) out.emplace_back(c, m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace upoly

// ---------------------------------------------------------------- tower

// one current field at a time; older generations map forward through the
// recorded images of their generators
class FieldTower {
public:
    explicit FieldTower(unsigned p, std::uint64_t seed = 0, unsigned degree = 1) : p_(p), seed_(seed) {
        gens_.push_back(make_field(degree, 0));
    }

    unsigned p() const { return p_; }
    const FieldPtr& field() const { return gens_.back(); }
    unsigned degree() const { return gens_.back()->degree(); }
    unsigned generation() const { return static_cast<unsigned>(gens_.size() - 1); }
    const FieldPtr& field_at(unsigned generation) const { return gens_.at(generation); }
    Code generator_image(unsigned generation) const { return images_.at(generation); }

    // extend so that the current degree becomes a multiple of d
    void ensure_degree(unsigned d) {
        unsigned k = degree();
        unsigned target = std::lcm(k, d);
        if (target == k) return;
        auto next = make_field(target, generation() + 1);
        const auto& old = *gens_.back();
        // the old modulus has a root in the new field; take the smallest
        UPoly m;
        for (unsigned c : old.modulus()) m.c.push_back(next->from_int(c));
        m.trim();
        auto r = upoly::roots_in_field(*next, m, seed_ ^ 0x9e3779b97f4a7c15ull);
        if (r.empty()) throw Error("tower: modulus does not split");
        images_.push_back(r.front().first);
        gens_.push_back(std::move(next));
    }

    Code embed_code(unsigned from_generation, Code a) const {
        if (from_generation >= gens_.size()) throw Error("tower: unknown generation");
        for (unsigned g = from_generation; g + 1 < gens_.size(); ++g) {
            const Field& src = *gens_[g];
            const Field& dst = *gens_[g + 1];
            Code img = (src.degree() > 1) ? images_[g] : 0;
            Code r = 0, pw = 1;
            for (unsigned i = 0; i < src.degree(); ++i) {
                unsigned d = static_cast<unsigned>(src.digit(a, i));
                if (d) r = dst.add(r, dst.mul(dst.from_int(d), pw));
                pw = dst.mul(pw, img);
            }
            a = r;
        }
        return a;
    }
    Elem embed(const Elem& e) const {
        const auto& f = e.field();
        unsigned g = f->generation();
        if (g >= gens_.size() || gens_[g] != f) throw Error("tower: element from a foreign field");
        return {field(), embed_code(g, e.code())};
    }
    Elem element(std::string_view s) const { return {field(), field()->parse(s)}; }

private:
    FieldPtr make_field(unsigned k, unsigned generation) const {
        if (k == 1) return std::make_shared<const Field>(p_, std::vector<unsigned>{0, 1}, generation);
        auto Fp = prime_field(p_);
        std::mt19937_64 rng(seed_ * 1000003ull + p_ * 131ull + k);
        std::uniform_int_distribution<unsigned> pick(0, p_ - 1);
        for (;;) {
            std::vector<Code> c(k + 1);
            for (unsigned i = 0; i < k; ++i) c[i] = pick(rng);
            c[k] = 1;
            if (c[0] == 0) continue;
            UPoly f(c);
            if (!upoly::is_irreducible(*Fp, f)) continue;
            std::vector<unsigned> m(c.begin(), c.end());
            return std::make_shared<const Field>(p_, std::move(m), generation);
        }
    }

    unsigned p_;
    std::uint64_t seed_;
    std::vector<FieldPtr> gens_;
    std::vector<Code> images_;
};

struct RootSet {
    std::vector<std::pair<Code, unsigned>> roots;  // in the tower's current field
    bool complete = true;                          // false if some roots needed a degree beyond the cap
};

// all roots of q (coefficients in the tower's current field), extending the
// tower up to max_degree; q must already live in the current field
inline RootSet univ_roots(FieldTower& tower, UPoly q, unsigned max_degree = 0) {
    if (q.is_zero()) throw Error("roots of the zero polynomial");
    const Field& F = *tower.field();
    unsigned k = F.degree();
    unsigned gen0 = tower.generation();
    RootSet out;
    if (q.deg() == 0) return out;
    // degrees of irreducible factors decide the extension
    unsigned L = 1;
    for (auto& [g, m] : upoly::squarefree(F, q)) {
        for (unsigned d : upoly::factor_degrees(F, g)) {
            unsigned cand = std::lcm(L, d);
            if (max_degree && k * cand > max_degree)
                out.complete = false;
            else
                L = cand;
        }
    }
    if (L > 1) {
        tower.ensure_degree(k * L);
        for (auto& c : q.c) c = tower.embed_code(gen0, c);
    }
    out.roots = upoly::roots_in_field(*tower.field(), q);
    return out;
}

}  // namespace insep
