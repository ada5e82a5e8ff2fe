// One PASS/FAIL line per criterion. Exit code 1 if any fails.

#include <insep/kangaroo.hpp>

#include "laws.hpp"
#include "oracles.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>

using namespace insep;

namespace {

// time budgets, seconds
constexpr double kWorkedBudget = 1.0;
constexpr double kMohBudget = 60.0;
constexpr double kDecreaseBudget = 300.0;
constexpr double kOracleBudget = 120.0;

constexpr int kMohForms = 500, kMohMaxDegree = 12;
constexpr int kDecreaseSeeds = 200, kDecreaseDegree = 10;
constexpr int kDepthCap = 64;
constexpr int kOracleSeeds = 100, kOracleDegree = 6, kOracleK = 3;
constexpr unsigned kOracleR = 2;
constexpr int kLawPairs = 1000;
constexpr std::uint64_t kCorpusSeed = 20240607;

int failed = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_s(double s) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2fs", s);
    return b;
}

const TraceNode* child(const ResolutionTrace& t, const TraceNode& n, const std::string& move) {
    for (auto i : n.children)
        if (t.nodes[i].move == move) return &t.nodes[i];
    return nullptr;
}

// ------------------------------------------------------------------ 1

ResolutionTrace worked_trace;

void worked() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> bad;
    auto F = ResidueSeries::parse("y^5*z + y^3*z^3 + y^3*z^8", prime_field(2));
    auto M = measures(F);
    if (M.height != 2) bad.push_back("height " + std::to_string(M.height));
    auto b = apply_move(F, Move::T, 1);
    if (measures(b.total).deg_y != 3) bad.push_back("total deg_y");
    if (b.total.polygon().vertices != std::vector<Exp>{{3, 6}, {0, 11}}) bad.push_back("total vertices");
    Config c;
    c.p = 2;
    worked_trace = resolve("y^5*z + y^3*z^3 + y^3*z^8", c);
    auto& root = worked_trace.nodes.front();
    auto* k = child(worked_trace, root, "T(1)");
    if (!k) {
        bad.push_back("no T(1) child");
    } else {
        bool flagged = false;
        for (auto& e : detect_events(worked_trace)) flagged = flagged || e.child_id == k->id;
        if (!flagged) bad.push_back("T(1) not an event");
        if (root.inv_i.first != AdjustedValue{2, Tag::zero}) bad.push_back("parent intricacy " + root.inv_i.first.str());
        if (k->inv_i.first != AdjustedValue{2, Tag::delta}) bad.push_back("child intricacy " + k->inv_i.first.str());
    }
    double s = seconds_since(t0);
    if (s > kWorkedBudget) bad.push_back("slow");
    std::string d = bad.empty() ? "height 2, vertices {(3,6),(0,11)}, event, 2 -> 2-delta" : bad.front();
    report(1, "worked example", bad.empty(), d + " in " + fmt_s(s));
}

// ------------------------------------------------------------------ 2

void moh() {
    auto t0 = std::chrono::steady_clock::now();
    int forms = 0, shifts = 0, violations = 0, par1 = 0;
    std::string first;
    for (unsigned p : {2u, 3u, 5u}) {
        FieldTower T(p, 0, 2);
        std::mt19937_64 rng(1000 + p);
        MohReport rep;
        for (int i = 0; i < kMohForms; ++i) {
            int d = 1 + static_cast<int>(rng() % kMohMaxDegree);
            par1 += d % static_cast<int>(p) == 0;
            moh_check(random_form(rng, T.field(), d), T, rep);
        }
        forms += rep.forms;
        shifts += rep.shifts;
        violations += static_cast<int>(rep.violations.size());
        if (first.empty() && !rep.violations.empty()) first = rep.violations.front();
    }
    double s = seconds_since(t0);
    bool ok = violations == 0 && forms == 3 * kMohForms && s <= kMohBudget;
    report(2, "Moh bound", ok,
           std::to_string(forms) + " forms (" + std::to_string(par1) + " with p | d), " + std::to_string(shifts) +
               " shifts, " + std::to_string(violations) + " violations" + (first.empty() ? "" : " e.g. " + first) +
               " in " + fmt_s(s));
}

// ------------------------------------------------------------------ 3, 4

std::vector<CorpusEntry> corpus;

void decrease() {
    auto t0 = std::chrono::steady_clock::now();
    Config base;
    base.depth = kDepthCap;
    corpus = corpus_run({2, 3, 5}, kDecreaseDegree, kDecreaseSeeds, kCorpusSeed, base);
    double s = seconds_since(t0);
    int edges = 0, bad = 0;
    std::string first;
    for (auto& r : corpus) {
        auto& t = r.trace;
        for (auto& e : t.edges) {
            auto& P = t.nodes[e.parent];
            auto& C = t.nodes[e.child];
            if (P.status != Status::open || C.status != Status::open) continue;
            ++edges;
            // recomputed from the stored measures, not the recorded verdicts
            bool ok = compare(invariant_i(C.mi), invariant_i(P.mi)) < 0 && compare(invariant_j(C.mj), invariant_j(P.mj)) < 0;
            if (!ok) {
                ++bad;
                if (first.empty()) first = r.seed + " " + e.move;
            }
        }
        for (auto& f : t.failures)
            if (f.find("did not drop") != std::string::npos) {
                ++bad;
                if (first.empty()) first = f;
            }
    }
    bool ok = bad == 0 && edges > 0 && corpus.size() == 3u * kDecreaseSeeds && s <= kDecreaseBudget;
    report(3, "decrease", ok,
           std::to_string(corpus.size()) + " seeds, " + std::to_string(edges) + " open edges, " + std::to_string(bad) +
               " failures" + (first.empty() ? "" : " e.g. " + first) + " in " + fmt_s(s));
}

void termination() {
    int leaves = 0, bad = 0, monomial_leaves = 0, maxd = 0;
    std::string first;
    auto flag = [&](const std::string& why) {
        ++bad;
        if (first.empty()) first = why;
    };
    for (auto& r : corpus) {
        auto& t = r.trace;
        maxd = std::max(maxd, t.max_depth());
        if (t.max_depth() > kDepthCap) flag("depth " + r.seed);
        for (auto& n : t.nodes) {
            if (n.status == Status::truncation_incomplete || n.status == Status::depth_exceeded)
                flag(std::string(to_string(n.status)) + " in " + r.seed);
            if (!n.children.empty()) continue;
            ++leaves;
            switch (n.status) {
                case Status::order_dropped:
                case Status::quasi_monomial_resolved: break;
                case Status::monomial:
                    if (!n.monomial) {
                        flag("monomial leaf without endgame in " + r.seed);
                        break;
                    }
                    n.monomial->each_leaf([&](MonomialState m) {
                        ++monomial_leaves;
                        if (m.m + m.n >= static_cast<int>(r.p)) flag("monomial leaf not below p in " + r.seed);
                    });
                    break;
                default: flag(std::string("leaf ") + to_string(n.status) + " in " + r.seed);
            }
        }
    }
    report(4, "termination", bad == 0 && leaves > 0,
           std::to_string(leaves) + " leaves, " + std::to_string(monomial_leaves) + " monomial endgame leaves, max depth " +
               std::to_string(maxd) + ", " + std::to_string(bad) + " violations" + (first.empty() ? "" : " e.g. " + first));
}

// ------------------------------------------------------------------ 5

void oracle_check() {
    auto t0 = std::chrono::steady_clock::now();
    int n = 0, bad = 0;
    std::string first;
    for (unsigned p : {2u, 3u}) {
        FieldTower T(p, 0, kOracleR);
        std::mt19937_64 rng(77 + p);
        int done = 0;
        while (done < kOracleSeeds) {
            auto F = ResidueSeries::reduce(oracle::random_poly(rng, T.field(), kOracleDegree, 2 + done % 5, 1));
            if (F.is_zero()) continue;
            ++done;
            ++n;
            auto P = maximize_ord_y(F, T, {.K = kOracleK, .r = kOracleR});
            auto B = brute_force_ord_y(F, kOracleK, kOracleR, T);
            if (P.measures.ord_y != B.best_ord_y) {
                ++bad;
                if (first.empty()) first = F.str();
            }
        }
    }
    double s = seconds_since(t0);
    report(5, "preparation oracle", bad == 0 && s <= kOracleBudget,
           std::to_string(n) + " seeds at K=3 r=2, " + std::to_string(bad) + " disagreements" +
               (first.empty() ? "" : " e.g. " + first) + " in " + fmt_s(s));
}

// ------------------------------------------------------------------ 6

void kangaroo() {
    int events = 0, with_b0 = 0, bad = 0;
    std::string first;
    auto scan = [&](const ResolutionTrace& t, const std::string& seed) {
        for (auto& e : detect_events(t)) {
            ++events;
            auto c = check_conditions(e, t);
            auto h = check_halving(e, t);
            with_b0 += e.b0.has_value();
            std::string why;
            if (!c.passed()) why = "conditions";
            else if (!e.child_adjacent) why = "child not adjacent";
            else if (e.height_after - e.height_before > 1) why = "height jump > 1";
            else if (h.halving == Verdict::fail) why = "halving";
            else if (h.low_start == Verdict::fail) why = "dorder(b0) <= 2";
            if (!why.empty()) {
                ++bad;
                if (first.empty()) first = why + " at " + seed + " " + e.move;
            }
        }
    };
    scan(worked_trace, worked_trace.seed_text);
    for (auto& r : corpus) scan(r.trace, r.seed);
    // pure y^a and z^b terms, so the root has no monomial factor and can serve as b0
    const std::vector<std::pair<unsigned, std::string>> grounded = {
        {2, "y^9 + y^4*z^3 + z^7"},
        {2, "y^9 + y^4*z^3 + y^3*z^5 + z^9"},
        {2, "y^9 + y^5*z^5 + y^4*z^3 + z^7"},
        {2, "y^7 + y^7*z^7 + y^3*z^4 + z^9"},
        {2, "y^7 + y^6*z^3 + y^5*z^5 + y^4*z + z^5"},
        {2, "y^7 + y^4*z + z^5"},
        {2, "y^7 + y^4*z + z^7"},
        {2, "y^7 + y^7*z^2 + y^5*z^6 + y^4*z + z^5"},
        {3, "y^8 + y^7*z^2 + y^4*z^3 + z^8"},
        {3, "y^10 + 2*y^7*z^2 + 2*y^7*z^4 + 2*y^6*z^2 + z^7"},
        {3, "y^10 + 2*y^4*z^7 + 2*y^3*z^5 + z^10"},
    };
    int b0_before = with_b0;
    for (auto& [p, seed] : grounded) {
        Config c;
        c.p = p;
        scan(resolve(seed, c), seed);
    }
    bool grounded_hit = with_b0 > b0_before;
    report(6, "kangaroo", bad == 0 && events > 0 && grounded_hit,
           std::to_string(events) + " events (" + std::to_string(with_b0) + " with b0), " + std::to_string(bad) +
               " violations" + (first.empty() ? "" : " e.g. " + first));
}

// ------------------------------------------------------------------ 7

void structural() {
    struct Law {
        std::string name;
        std::function<std::string(const ResidueSeries&, Code, std::mt19937_64&)> check;  // "-" = not applicable
        int n = 0, bad = 0;
        std::string first;
    };
    std::vector<Law> L{
        {"T = H o shift", [](const ResidueSeries& F, Code t, std::mt19937_64&) { return laws::t_decomposition(F, t); }},
        {"H keeps adjacency", [](const ResidueSeries& F, Code, std::mt19937_64&) { return laws::h_adjacency(F); }},
        {"V drops height",
         [](const ResidueSeries& F, Code, std::mt19937_64&) {
             return measures(F).quadrant() ? std::string("-") : laws::v_height_drop(F);
         }},
        {"H slope law",
         [](const ResidueSeries& F, Code, std::mt19937_64&) {
             return laws::h_slope_applies(measures(F)) ? laws::h_slope(F) : std::string("-");
         }},
        {"p-unit displacement",
         [](const ResidueSeries& F, Code t, std::mt19937_64& rng) {
             Move m = std::array{Move::T, Move::H, Move::V}[rng() % 3];
             return laws::displacement(F, m, t);
         }},
    };
    std::mt19937_64 rng(4242);
    const unsigned ps[] = {2, 3, 5};
    for (auto& law : L) {
        int guard = 0;
        while (law.n < kLawPairs && guard++ < 100 * kLawPairs) {
            unsigned p = ps[rng() % 3];
            auto f = prime_field(p);
            auto F = laws::random_singular(rng, f, 10, 2 + static_cast<int>(rng() % 7));
            Code t = 1 + rng() % (p - 1);
            auto r = law.check(F, t, rng);
            if (r == "-") continue;
            ++law.n;
            if (!r.empty()) {
                ++law.bad;
                if (law.first.empty()) law.first = r;
            }
        }
    }
    bool ok = true;
    std::string d;
    for (auto& law : L) {
        ok = ok && law.bad == 0 && law.n == kLawPairs;
        if (!d.empty()) d += "; ";
        d += law.name + " " + std::to_string(law.n - law.bad) + "/" + std::to_string(law.n);
        if (!law.first.empty()) d += " (" + law.first + ")";
    }
    report(7, "structural laws", ok, d);
}

// ------------------------------------------------------------------ 8

std::string capture(const std::string& cmd) {
    std::string out;
    FILE* f = ::popen(cmd.c_str(), "r");
    if (!f) return "<popen failed>";
    char buf[4096];
    std::size_t k;
    while ((k = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, k);
    int rc = ::pclose(f);
    return out + "\n<exit " + std::to_string(rc) + ">";
}

void determinism() {
    std::vector<std::string> cmds = {
        "resolve \"y^5*z+y^3*z^3+y^3*z^8\" --p 2",
        "resolve \"y^7*z^2+y^4*z^5+y^2*z^9+z^12\" --p 3 --invariant dorder",
        "corpus --p 2 --p 3 --count 15 --seed 7",
        "render \"y^5*z+y^3*z^3+y^3*z^8\" --p 2 --svg -",
    };
    int same = 0;
    std::string first;
    for (auto& c : cmds) {
        std::string full = std::string(INSEP_BIN) + " " + c;
        auto a = capture(full), b = capture(full);
        if (a == b && a.size() > 20) {
            ++same;
        } else if (first.empty()) {
            first = c;
        }
    }
    report(8, "determinism", same == static_cast<int>(cmds.size()),
           std::to_string(same) + "/" + std::to_string(cmds.size()) + " invocations byte-identical across two runs" +
               (first.empty() ? "" : ", differs: " + first));
}

}  // namespace

int main() {
    try {
        worked();
        moh();
        decrease();
        termination();
        oracle_check();
        kangaroo();
        structural();
        determinism();
    } catch (const std::exception& e) {
        std::printf("FAIL - aborted: %s\n", e.what());
        return 1;
    }
    return failed ? 1 : 0;
}
