#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ldcb/bribery.hpp"
#include "ldcb/election.hpp"
#include "ldcb/errors.hpp"
#include "ldcb/metrics.hpp"
#include "ldcb/sat.hpp"

namespace ldcb {

enum class Reduction { KappSwap, KappMaxdispPriced, Borda };

inline const char* reduction_name(Reduction r) {
    switch (r) {
        case Reduction::KappSwap: return "kapp-swap";
        case Reduction::KappMaxdispPriced: return "kapp-maxdisp-priced";
        case Reduction::Borda: return "borda";
    }
    return "?";
}

inline Reduction parse_reduction(const std::string& s) {
    if (s == "kapp-swap") return Reduction::KappSwap;
    if (s == "kapp-maxdisp-priced") return Reduction::KappMaxdispPriced;
    if (s == "borda") return Reduction::Borda;
    throw InvalidInput("unknown reduction '" + s + "'");
}

struct NameEntry {
    std::string kind;    // literal, alternative, voter, block
    std::string label;   // SAT-side name
    std::string target;  // alt, voter, voters
    int first = 0;
    int last = 0;
};

struct GadgetInstance {
    Reduction reduction = Reduction::KappSwap;
    Sat3B2Instance sat;  // after any doubling
    BriberyInstance instance;
    std::int64_t padding = 0;  // Δ for kapp-swap, |D| otherwise
    std::int64_t padding_floor = 0;
    int k = 2;
    std::int64_t n1 = 0, n2 = 0;  // sizes of the two sub-profiles where the construction has them
    std::vector<NameEntry> names;
    std::map<std::string, int> voter;                   // bookkeeping keys -> voter index
    std::map<std::string, std::pair<int, int>> blocks;  // key -> [first, last)

    std::string render_name_map() const {
        std::ostringstream os;
        os << "reduction " << reduction_name(reduction) << "\n";
        os << "padding " << padding << " floor " << padding_floor << "\n";
        for (const auto& e : names) {
            os << e.kind << " " << e.label << " -> " << e.target << " " << e.first;
            if (e.target == "voters") os << ".." << e.last;
            os << "\n";
        }
        return os.str();
    }
};

namespace detail {

inline std::string lit_tag(int l) { return (l > 0 ? "x" : "nx") + std::to_string(std::abs(l)); }
inline std::string lit_math(int l) { return (l > 0 ? "x" : "-x") + std::to_string(std::abs(l)); }

// Moves the alternative at 0-based index `from` to index `to`, shifting the ones in between.
inline void relocate(Preference& p, int from, int to) {
    Alt a = p.order[from];
    p.order.erase(p.order.begin() + from);
    p.order.insert(p.order.begin() + to, a);
}

inline int index_of(const Preference& p, Alt a) {
    return static_cast<int>(std::find(p.order.begin(), p.order.end(), a) - p.order.begin());
}

// Template slot: a named alternative, or kFiller for "some filler".
inline constexpr int kFiller = -1;

// Expands templates into full preferences over named alternatives plus fillers. Every named
// alternative missing from a template is appended, in index order, behind `gap` fillers; the
// remaining fillers form the tail. Filler slots at 1-based positions <= unique_upto get fillers used
// nowhere else in such a slot; later slots and the tail take fillers in cyclic order from a
// per-preference offset.
class FillerLayout {
public:
    FillerLayout(int named, int gap, int unique_upto) : named_(named), gap_(gap), unique_upto_(unique_upto) {}

    void add(const std::vector<int>& tmpl) {
        std::vector<char> seen(named_, 0);
        std::vector<int> toks;
        for (int t : tmpl) {
            toks.push_back(t);
            if (t >= 0) seen[t] = 1;
        }
        for (int a = 0; a < named_; ++a)
            if (!seen[a]) {
                for (int g = 0; g < gap_; ++g) toks.push_back(kFiller);
                toks.push_back(a);
            }
        Row r;
        int free_slots = 0;
        for (std::size_t j = 0; j < toks.size(); ++j) {
            if (toks[j] >= 0) {
                r.tokens.push_back(toks[j]);
            } else if (static_cast<int>(j) + 1 <= unique_upto_) {
                r.tokens.push_back(-2 - unique_++);
            } else {
                r.tokens.push_back(kFiller);
                ++free_slots;
            }
        }
        r.slots = static_cast<int>(toks.size()) - named_;
        rows_.push_back(std::move(r));
        max_slots_ = std::max(max_slots_, rows_.back().slots);
    }

    // Fillers needed: every unique slot distinct, and each preference fits (+1 so a tail exists).
    std::int64_t floor() const { return std::max<std::int64_t>(unique_, max_slots_) + 1; }

    // Named positions are already fixed by add(): 1-based position of named alternative a in row i.
    int position(std::size_t row, int a) const {
        const auto& t = rows_[row].tokens;
        return static_cast<int>(std::find(t.begin(), t.end(), a) - t.begin()) + 1;
    }
    std::size_t size() const { return rows_.size(); }

    std::vector<Preference> materialize(std::int64_t fillers) const {
        if (fillers < floor())
            throw InvalidInput("filler count " + std::to_string(fillers) + " is below the placement floor " +
                               std::to_string(floor()));
        const int D = static_cast<int>(fillers);
        std::vector<Preference> out;
        out.reserve(rows_.size());
        std::vector<char> used(D);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::fill(used.begin(), used.end(), 0);
            for (int t : rows_[i].tokens)
                if (t <= -2) used[-2 - t] = 1;
            int cursor = static_cast<int>((i * 10) % static_cast<std::size_t>(D));
            auto next_free = [&] {
                while (used[cursor]) cursor = (cursor + 1) % D;
                used[cursor] = 1;
                return cursor;
            };
            Preference p;
            p.order.reserve(named_ + D);
            for (int t : rows_[i].tokens) {
                if (t >= 0) p.order.push_back(t);
                else if (t <= -2) p.order.push_back(named_ + (-2 - t));
                else p.order.push_back(named_ + next_free());
            }
            while (static_cast<int>(p.order.size()) < named_ + D) p.order.push_back(named_ + next_free());
            out.push_back(std::move(p));
        }
        return out;
    }

private:
    struct Row {
        std::vector<int> tokens;  // >=0 named, <=-2 unique filler id, -1 free filler
        int slots = 0;
    };
    int named_;
    int gap_;
    int unique_upto_;
    int unique_ = 0;
    int max_slots_ = 0;
    std::vector<Row> rows_;
};

inline std::vector<std::string> filler_names(int count) {
    std::vector<std::string> v;
    v.reserve(count);
    for (int i = 1; i <= count; ++i) v.push_back("D" + std::to_string(i));
    return v;
}

inline Sat3B2Instance make_even(const Sat3B2Instance& s) {
    return s.n() % 2 == 0 && s.m() % 2 == 0 ? s : disjoint_double(s);
}

}  // namespace detail

// ---------------------------------------------------------------- k-approval, swap, δ = 2

inline std::int64_t kapp_swap_default_delta(const Sat3B2Instance& s) {
    auto e = detail::make_even(s);
    return 100LL * e.m() * e.m() * e.n() * e.n();
}

inline constexpr std::int64_t kKappSwapDeltaFloor = 4;

// k = 2. delta_pad <= 0 picks the default padding. `metric` is swap (δ=2) or footrule (δ=4).
inline GadgetInstance gen_kapproval_swap_gadget(const Sat3B2Instance& input, std::int64_t delta_pad = 0,
                                                Metric metric = Metric::Swap) {
    input.validate();
    if (metric == Metric::MaxDisplacement) throw InvalidInput("this reduction is for swap or footrule");
    GadgetInstance g;
    g.reduction = Reduction::KappSwap;
    g.sat = detail::make_even(input);
    const auto& s = g.sat;
    const int n = s.n(), m = s.m();
    const std::int64_t D = delta_pad > 0 ? delta_pad : kapp_swap_default_delta(input);
    if (D < kKappSwapDeltaFloor)
        throw InvalidInput("delta_pad must be at least " + std::to_string(kKappSwapDeltaFloor));
    g.padding = D;
    g.padding_floor = kKappSwapDeltaFloor;
    g.k = 2;

    // Alternatives.
    std::vector<std::string> names;
    auto add_alt = [&](const std::string& token, const std::string& kind, const std::string& label) {
        names.push_back(token);
        g.names.push_back({kind, label, "alt", static_cast<int>(names.size()) - 1, 0});
        return static_cast<Alt>(names.size()) - 1;
    };
    std::map<std::pair<int, int>, Alt> a;  // (literal, bit)
    for (int i = 1; i <= n; ++i)
        for (int l : {i, -i})
            for (int b : {0, 1})
                a[{l, b}] = add_alt("a_" + detail::lit_tag(l) + "_" + std::to_string(b), "literal",
                                    "a(" + detail::lit_math(l) + "," + std::to_string(b) + ")");
    const Alt c = add_alt("c", "alternative", "c");
    const Alt u = add_alt("u", "alternative", "u");
    std::vector<Alt> w(n + 1), z(n + 1), y(m + 1), d(m + 1), dp(m + 1);
    for (int i = 1; i <= n; ++i) {
        w[i] = add_alt("w" + std::to_string(i), "alternative", "w" + std::to_string(i));
        z[i] = add_alt("z" + std::to_string(i), "alternative", "z" + std::to_string(i));
    }
    for (int j = 1; j <= m; ++j) {
        y[j] = add_alt("y" + std::to_string(j), "alternative", "y" + std::to_string(j));
        d[j] = add_alt("d" + std::to_string(j), "alternative", "d" + std::to_string(j));
        dp[j] = add_alt("dp" + std::to_string(j), "alternative", "d'" + std::to_string(j));
    }
    const int M = static_cast<int>(names.size());

    Profile p;
    p.alts = AlternativeSet(names);
    auto pref = [&](std::initializer_list<Alt> head) {
        Preference q;
        std::vector<char> seen(M, 0);
        for (Alt x : head) {
            q.order.push_back(x);
            seen[x] = 1;
        }
        for (Alt x = 0; x < M; ++x)
            if (!seen[x]) q.order.push_back(x);
        return q;
    };
    auto push = [&](const std::string& key, const Preference& q) {
        if (!key.empty()) {
            g.voter[key] = p.n();
            g.names.push_back({"voter", key, "voter", p.n(), 0});
        }
        p.prefs.push_back(q);
    };
    auto block = [&](const std::string& key, std::int64_t copies, const Preference& q) {
        int first = p.n();
        for (std::int64_t r = 0; r < copies; ++r) p.prefs.push_back(q);
        g.blocks[key] = {first, p.n()};
        g.names.push_back({"block", key, "voters", first, p.n()});
    };

    for (int i = 1; i <= n; ++i)
        for (int l : {i, -i})
            push("var " + detail::lit_math(l), pref({w[i], a[{l, 0}], a[{l, 1}], z[i]}));
    for (int j = 1; j <= m; ++j)
        for (int r = 0; r < 3; ++r) {
            int l = s.clauses[j - 1][r];
            auto occ = s.occurrences(l);
            int bit = occ[0] == j - 1 ? 0 : 1;
            push("clause " + std::to_string(j) + " slot " + std::to_string(r + 1),
                 pref({y[j], d[j], a[{l, bit}], dp[j]}));
        }
    push("c-voter", pref({c, d[1], d[2], d[3 <= m ? 3 : 1]}));
    block("IV", D + 2, pref({u, d[1], d[2], c}));
    for (int i = 1; i <= n / 2; ++i)
        block("V " + std::to_string(i), D + 1, pref({u, w[2 * i - 1], w[2 * i], d[1]}));
    for (int i = 1; i <= n; ++i) {
        block("VI " + std::to_string(i) + " one", D + 1, pref({u, a[{i, 1}], a[{-i, 1}], d[1]}));
        block("VI " + std::to_string(i) + " zero", D + 1, pref({u, a[{i, 0}], a[{-i, 0}], d[1]}));
    }
    for (int j = 1; j <= m / 2; ++j)
        block("VII " + std::to_string(j), D, pref({u, y[2 * j - 1], y[2 * j], d[1]}));

    const std::int64_t expect_prefs = 2LL * n + 3LL * m + 1 + (D + 2) + (n / 2) * (D + 1) + 2LL * n * (D + 1) + (m / 2) * D;
    if (M != 6 * n + 3 * m + 2 || p.n() != expect_prefs)
        throw InternalError("k-approval swap gadget has the wrong shape");

    g.instance = make_instance(std::move(p), c, VotingRule::k_approval(2), metric, metric == Metric::Swap ? 2 : 4, 0);
    g.instance.validate();
    return g;
}

// ---------------------------------------------------------------- k-approval, maxdisp, priced

inline GadgetInstance gen_kapproval_maxdisp_priced_gadget(const Sat3B2Instance& input, int k = 2,
                                                          std::int64_t filler_size = 0) {
    input.validate();
    if (k < 2) throw InvalidInput("this reduction needs k >= 2");
    GadgetInstance g;
    g.reduction = Reduction::KappMaxdispPriced;
    g.sat = input;
    g.k = k;
    const auto& s = g.sat;
    const int n = s.n(), m = s.m();

    std::vector<std::string> names;
    auto add_alt = [&](const std::string& token, const std::string& kind, const std::string& label) {
        names.push_back(token);
        g.names.push_back({kind, label, "alt", static_cast<int>(names.size()) - 1, 0});
        return static_cast<Alt>(names.size()) - 1;
    };
    const Alt c = add_alt("c", "alternative", "c");
    std::map<int, Alt> f, gg;
    std::vector<Alt> w(n + 1), wp(n + 1), y(m + 1);
    for (int i = 1; i <= n; ++i) {
        for (int l : {i, -i}) {
            f[l] = add_alt(std::string(l > 0 ? "a" : "na") + std::to_string(i), "literal", "f(" + detail::lit_math(l) + ")");
            gg[l] = add_alt(std::string(l > 0 ? "b" : "nb") + std::to_string(i), "literal", "g(" + detail::lit_math(l) + ")");
        }
        w[i] = add_alt("w" + std::to_string(i), "alternative", "w" + std::to_string(i));
        wp[i] = add_alt("wp" + std::to_string(i), "alternative", "w'" + std::to_string(i));
    }
    for (int j = 1; j <= m; ++j) y[j] = add_alt("y" + std::to_string(j), "alternative", "y" + std::to_string(j));
    const int named = static_cast<int>(names.size());
    // h(C_j, l): f(l) at the literal's first clause, g(l) at its second.
    auto h = [&](int j, int l) {
        auto occ = s.occurrences(l);
        return occ[0] == j ? f[l] : gg[l];
    };

    detail::FillerLayout lay(named, 10, k + 10);
    std::vector<std::int64_t> prices;
    std::vector<std::string> keys;
    auto prefix = [&](std::initializer_list<int> tail) {
        std::vector<int> t(k - 2, detail::kFiller);
        t.insert(t.end(), tail);
        return t;
    };
    auto add = [&](const std::string& key, const std::vector<int>& t, std::int64_t price) {
        keys.push_back(key);
        prices.push_back(price);
        lay.add(t);
    };
    for (int i = 1; i <= n; ++i)
        for (int l : {i, -i}) add("var " + detail::lit_math(l), prefix({w[i], wp[i], f[l], gg[l]}), 1);
    for (int j = 1; j <= m; ++j)
        for (int r = 0; r < 3; ++r)
            add("clause " + std::to_string(j) + " slot " + std::to_string(r + 1),
                prefix({detail::kFiller, y[j], h(j - 1, s.clauses[j - 1][r]), detail::kFiller}), 1);
    g.n1 = static_cast<std::int64_t>(prices.size());
    const std::int64_t p2price = 10LL * m * n;
    auto p2block = [&](const std::string& key, int copies, Alt x) {
        for (int r = 0; r < copies; ++r) add("", prefix({x, detail::kFiller}), p2price);
        g.blocks[key] = {static_cast<int>(prices.size()) - copies, static_cast<int>(prices.size())};
    };
    p2block("P2 c", 10, c);
    for (int i = 1; i <= n; ++i)
        for (Alt x : {f[i], f[-i], gg[i], gg[-i], w[i], wp[i]}) p2block("P2 " + names[x], 8, x);
    for (int j = 1; j <= m; ++j) p2block("P2 " + names[y[j]], 7, y[j]);
    g.n2 = static_cast<std::int64_t>(prices.size()) - g.n1;

    g.padding_floor = lay.floor();
    g.padding = filler_size > 0 ? filler_size : g.padding_floor;
    auto prefs = lay.materialize(g.padding);
    auto fn = detail::filler_names(static_cast<int>(g.padding));
    names.insert(names.end(), fn.begin(), fn.end());

    Profile p;
    p.alts = AlternativeSet(names);
    p.prefs = std::move(prefs);
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (!keys[i].empty()) {
            g.voter[keys[i]] = static_cast<int>(i);
            g.names.push_back({"voter", keys[i], "voter", static_cast<int>(i), 0});
        }
    for (const auto& [key, r] : g.blocks) g.names.push_back({"block", key, "voters", r.first, r.second});

    BriberyInstance in;
    in.profile = std::move(p);
    in.target = c;
    in.rule = VotingRule::k_approval(k);
    in.metric = Metric::MaxDisplacement;
    in.deltas.assign(in.profile.n(), 2);
    in.prices = std::move(prices);
    in.budget = static_cast<std::int64_t>(n) + m;
    in.validate();

    // Score pattern before bribery.
    auto sc = positional_scores(in.profile, in.rule.score_vector(in.m()));
    bool ok = sc[c] == 10;
    for (int i = 1; i <= n; ++i) {
        ok = ok && sc[w[i]] == 10 && sc[wp[i]] == 10;
        for (int l : {i, -i}) ok = ok && sc[f[l]] == 8 && sc[gg[l]] == 8;
    }
    for (int j = 1; j <= m; ++j) ok = ok && sc[y[j]] == 10;
    for (int a = named; a < in.m(); ++a) ok = ok && sc[a] <= 1;
    if (!ok) throw InternalError("k-approval maxdisp gadget score pattern is off");
    g.instance = std::move(in);
    return g;
}

// ---------------------------------------------------------------- Borda

struct BordaLayoutInfo {
    std::vector<std::int64_t> sigma;  // s(x) - s(c) over the emitted profile, per named alternative
};

namespace detail {

struct BordaNames {
    Alt c = 0;
    std::vector<Alt> z, y;
    std::map<int, Alt> f;
    int named = 0;
};

}  // namespace detail

// `metric` selects the variant: max displacement and swap use δ = 1, footrule δ = 2. filler_size <= 0
// picks the floor.
inline GadgetInstance gen_borda_gadget(const Sat3B2Instance& input, Metric metric = Metric::MaxDisplacement,
                                       std::int64_t filler_size = 0) {
    input.validate();
    GadgetInstance g;
    g.reduction = Reduction::Borda;
    g.sat = input;
    const auto& s = g.sat;
    const int n = s.n(), m = s.m();
    const bool md = metric == Metric::MaxDisplacement;

    std::vector<std::string> names;
    auto add_alt = [&](const std::string& token, const std::string& kind, const std::string& label) {
        names.push_back(token);
        g.names.push_back({kind, label, "alt", static_cast<int>(names.size()) - 1, 0});
        return static_cast<Alt>(names.size()) - 1;
    };
    detail::BordaNames nm;
    nm.c = add_alt("c", "alternative", "c");
    nm.z.assign(n + 1, -1);
    nm.y.assign(m + 1, -1);
    for (int i = 1; i <= n; ++i) {
        nm.z[i] = add_alt("z" + std::to_string(i), "alternative", "z" + std::to_string(i));
        nm.f[i] = add_alt("a" + std::to_string(i), "literal", "f(" + detail::lit_math(i) + ")");
        nm.f[-i] = add_alt("na" + std::to_string(i), "literal", "f(" + detail::lit_math(-i) + ")");
    }
    for (int j = 1; j <= m; ++j) nm.y[j] = add_alt("y" + std::to_string(j), "alternative", "y" + std::to_string(j));
    const int M = static_cast<int>(names.size());
    nm.named = M;
    const Alt c = nm.c;
    constexpr int F = detail::kFiller;

    // P1 and its score offsets relative to c (position differences; the filler count does not matter).
    detail::FillerLayout p1(M, 10, INT_MAX);
    std::vector<std::string> keys;
    for (int i = 1; i <= n; ++i)
        for (int l : {i, -i}) {
            keys.push_back("var " + detail::lit_math(l));
            p1.add({nm.z[i], nm.f[l], F, F, c});
        }
    for (int j = 1; j <= m; ++j)
        for (int r = 0; r < 3; ++r) {
            keys.push_back("clause " + std::to_string(j) + " slot " + std::to_string(r + 1));
            p1.add({nm.y[j], nm.f[s.clauses[j - 1][r]], F, c});
        }
    const std::int64_t N1 = static_cast<std::int64_t>(p1.size());
    std::vector<std::int64_t> sigma1(M, 0);
    for (std::size_t r = 0; r < p1.size(); ++r)
        for (Alt x = 0; x < M; ++x) sigma1[x] += p1.position(r, c) - p1.position(r, x);

    // Per rival x, one pair of P2 preferences whose combined effect is (1 + e) + 2 or 2N2-neutral; e
    // is a spacer of fillers that tunes x's offset exactly.
    auto t_of = [&](Alt x) {
        for (int i = 1; i <= n; ++i)
            if (x == nm.f[i] || x == nm.f[-i]) return 2;
        return 0;
    };
    std::vector<std::int64_t> spacer(M, -1);
    for (Alt x = 0; x < M; ++x) {
        if (x == c) continue;
        const std::int64_t r = md ? N1 - t_of(x) - sigma1[x] : 2LL * m - t_of(x) - sigma1[x];
        if (r < 0) throw InternalError("Borda gadget: rival " + names[x] + " already too strong in P1");
        if (r > 0) spacer[x] = r - 1;
    }
    // Full layout: P1 rows then the pairs.
    detail::FillerLayout lay(M, 10, INT_MAX);
    for (std::size_t r = 0; r < p1.size(); ++r) {
        if (static_cast<int>(r) < 2 * n) {
            int i = static_cast<int>(r) / 2 + 1;
            int l = r % 2 == 0 ? i : -i;
            lay.add({nm.z[i], nm.f[l], F, F, c});
        } else {
            int q = static_cast<int>(r) - 2 * n;
            int j = q / 3 + 1;
            lay.add({nm.y[j], nm.f[s.clauses[j - 1][q % 3]], F, c});
        }
    }
    std::vector<std::pair<Alt, int>> pair_rows;  // rival, type
    for (Alt x = 0; x < M; ++x) {
        if (spacer[x] < 0) continue;
        std::vector<Alt> bs;
        for (Alt b = 0; b < M; ++b)
            if (b != c && b != x) bs.push_back(b);
        // d0 d1 c b1 d2 b2 ... b_{M-2} d_{M-1} x
        std::vector<int> t1{F, F, c};
        for (std::size_t q = 0; q < bs.size(); ++q) {
            t1.push_back(bs[q]);
            t1.push_back(F);
        }
        t1.push_back(x);
        // x E.. d0 d1 b_{M-2} d2 ... b1 d_{M-1} d_M d_{M+1} d_{M+2} c
        std::vector<int> t2{x};
        for (std::int64_t e = 0; e < spacer[x]; ++e) t2.push_back(F);
        t2.push_back(F);
        t2.push_back(F);
        for (std::size_t q = bs.size(); q-- > 0;) {
            t2.push_back(bs[q]);
            t2.push_back(F);
        }
        t2.insert(t2.end(), {F, F, F, c});
        lay.add(t1);
        lay.add(t2);
        pair_rows.push_back({x, 1});
        pair_rows.push_back({x, 2});
    }
    const std::int64_t N2 = static_cast<std::int64_t>(pair_rows.size());
    g.n1 = N1;
    g.n2 = N2;
    g.padding_floor = lay.floor();
    g.padding = filler_size > 0 ? filler_size : g.padding_floor;
    auto prefs = lay.materialize(g.padding);
    if (!md) {
        // Swap/footrule variant: every rival in P2 starts one step further right.
        for (std::int64_t r = N1; r < N1 + N2; ++r) {
            auto& o = prefs[r].order;
            for (int pos = static_cast<int>(o.size()) - 2; pos >= 0; --pos)
                if (o[pos] < M && o[pos] != c) {
                    std::swap(o[pos], o[pos + 1]);
                    --pos;
                }
        }
    }
    auto fn = detail::filler_names(static_cast<int>(g.padding));
    names.insert(names.end(), fn.begin(), fn.end());
    Profile p;
    p.alts = AlternativeSet(names);
    p.prefs = std::move(prefs);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        g.voter[keys[i]] = static_cast<int>(i);
        g.names.push_back({"voter", keys[i], "voter", static_cast<int>(i), 0});
    }
    g.blocks["P2"] = {static_cast<int>(N1), static_cast<int>(N1 + N2)};
    g.names.push_back({"block", "P2", "voters", static_cast<int>(N1), static_cast<int>(N1 + N2)});

    g.instance = make_instance(std::move(p), c, VotingRule::borda(), metric, metric == Metric::Footrule ? 2 : 1, 0);
    g.instance.validate();

    // Score table before bribery: z, y at base; literals at base - 2; fillers below c.
    const std::int64_t base = md ? N1 + 2 * N2 : N2 + 2LL * m;
    auto sc = positional_scores(g.instance.profile, g.instance.rule.score_vector(g.instance.m()));
    for (Alt x = 0; x < g.instance.m(); ++x) {
        if (x == c) continue;
        std::int64_t sig = sc[x] - sc[c];
        bool ok = x >= M ? sig < 0 : sig == base - t_of(x);
        if (!ok)
            throw InternalError("Borda gadget: " + g.instance.profile.alts.name(x) + " has offset " + std::to_string(sig));
    }
    return g;
}

// Pre-bribery Borda offsets s(x) - s(c) the generator enforces for named rivals.
inline std::int64_t borda_expected_offset(const GadgetInstance& g, bool literal) {
    const bool md = g.instance.metric == Metric::MaxDisplacement;
    const std::int64_t base = md ? g.n1 + 2 * g.n2 : g.n2 + 2LL * g.sat.m();
    return base - (literal ? 2 : 0);
}

// ---------------------------------------------------------------- witnesses

struct GadgetWitness {
    Profile profile;
    bool satisfies = false;  // assignment satisfies the formula; the winner guarantee applies only then
    Verification check;
};

// `assignment[v-1]` is the value of variable v (0/1) on the generator's (possibly doubled) formula.
// A shorter assignment is repeated, matching the disjoint self-union.
inline GadgetWitness witness_from_assignment(const GadgetInstance& g, std::vector<int> assignment) {
    const auto& s = g.sat;
    const int n = s.n(), m = s.m();
    if (static_cast<int>(assignment.size()) * 2 == n) {
        auto half = assignment;
        assignment.insert(assignment.end(), half.begin(), half.end());
    }
    if (static_cast<int>(assignment.size()) != n)
        throw InvalidInput("assignment has " + std::to_string(assignment.size()) + " values, formula has " +
                           std::to_string(n) + " variables");
    for (int v : assignment)
        if (v != 0 && v != 1) throw InvalidInput("assignment values must be 0 or 1");
    auto truth = [&](int l) { return (assignment[std::abs(l) - 1] == 1) == (l > 0); };
    // Clause slot carrying the first true literal, or -1.
    auto chosen = [&](int j) {
        for (int r = 0; r < 3; ++r)
            if (truth(s.clauses[j][r])) return r;
        return -1;
    };

    GadgetWitness out;
    out.satisfies = s.satisfied_by(assignment);
    Profile q = g.instance.profile;
    const auto& alts = q.alts;
    auto vi = [&](const std::string& key) { return g.voter.at(key); };
    auto move = [&](int voter, const std::string& name, int by) {
        auto& p = q.prefs[voter];
        int from = detail::index_of(p, alts.index(name));
        detail::relocate(p, from, from + by);
    };
    auto swap_at = [&](int voter, int pos1) {  // 1-based: exchange positions pos1 and pos1+1
        auto& o = q.prefs[voter].order;
        std::swap(o[pos1 - 1], o[pos1]);
    };

    switch (g.reduction) {
        case Reduction::KappSwap: {
            for (int i = 1; i <= n; ++i) {
                int t = truth(i) ? i : -i;
                move(vi("var " + detail::lit_math(t)), "z" + std::to_string(i), -2);
                move(vi("var " + detail::lit_math(-t)), "w" + std::to_string(i), 2);
            }
            for (int j = 0; j < m; ++j) {
                int r = chosen(j);
                if (r >= 0)
                    move(vi("clause " + std::to_string(j + 1) + " slot " + std::to_string(r + 1)),
                         "y" + std::to_string(j + 1), 2);
            }
            for (const auto& [key, range] : g.blocks)
                for (int v = range.first; v < range.second; ++v) {
                    if (key == "IV") move(v, "c", -2);
                    else move(v, "u", 2);
                }
            break;
        }
        case Reduction::KappMaxdispPriced: {
            const int k = g.k;
            for (int i = 1; i <= n; ++i) {
                int f = truth(i) ? -i : i;  // the false literal's voter changes
                int v = vi("var " + detail::lit_math(f));
                // D w w' f g -> D f g w w'
                detail::relocate(q.prefs[v], k - 2, k + 1);
                detail::relocate(q.prefs[v], k - 2, k + 1);
            }
            for (int j = 0; j < m; ++j) {
                int r = chosen(j);
                if (r >= 0) swap_at(vi("clause " + std::to_string(j + 1) + " slot " + std::to_string(r + 1)), k);
            }
            break;
        }
        case Reduction::Borda: {
            const bool md = g.instance.metric == Metric::MaxDisplacement;
            for (int i = 1; i <= n; ++i) {
                int t = truth(i) ? i : -i;
                int vt = vi("var " + detail::lit_math(t)), vf = vi("var " + detail::lit_math(-t));
                // true:  z f d d' c -> z d f c d'  (swap: z d f d' c)
                // false: z f d d' c -> f z d c d'  (swap: f z d d' c)
                swap_at(vt, 2);
                swap_at(vf, 1);
                if (md) {
                    swap_at(vt, 4);
                    swap_at(vf, 4);
                }
            }
            for (int j = 0; j < m; ++j) {
                int r = chosen(j);
                for (int slot = 0; slot < 3; ++slot) {
                    int v = vi("clause " + std::to_string(j + 1) + " slot " + std::to_string(slot + 1));
                    if (slot == r) {
                        swap_at(v, 1);  // f y d c
                        if (md) swap_at(v, 3);
                    } else {
                        swap_at(v, 3);  // y f c d
                    }
                }
            }
            const int named = [&] {
                int cnt = 0;
                for (const auto& e : g.names)
                    if (e.target == "alt") ++cnt;
                return cnt;
            }();
            const Alt c = g.instance.target;
            auto [b0, b1] = g.blocks.at("P2");
            for (int v = b0; v < b1; ++v) {
                auto& o = q.prefs[v].order;
                int pc = detail::index_of(q.prefs[v], c);
                std::swap(o[pc - 1], o[pc]);
                if (md)
                    for (int pos = static_cast<int>(o.size()) - 2; pos >= 0; --pos)
                        if (o[pos] < named && o[pos] != c) {
                            std::swap(o[pos], o[pos + 1]);
                            --pos;
                        }
            }
            if (md) {
                // A true literal picked in fewer than two clauses ends below s(c)-1; giving back some of
                // its rightward steps in P2 lifts it to exactly s(c)-1.
                auto sc = positional_scores(q, g.instance.rule.score_vector(g.instance.m()));
                for (Alt x = 0; x < named; ++x) {
                    if (x == c) continue;
                    std::int64_t owed = sc[c] - 1 - sc[x];
                    for (int v = b0; v < b1 && owed > 0; ++v) {
                        int px = detail::index_of(q.prefs[v], x);
                        if (px > 0 && g.instance.profile.prefs[v].order[px - 1] == x) {
                            std::swap(q.prefs[v].order[px - 1], q.prefs[v].order[px]);
                            --owed;
                        }
                    }
                }
            }
            break;
        }
    }
    out.check = verify_witness(g.instance, q);
    if (out.satisfies && !out.check.ok)
        throw InternalError(std::string("witness for ") + reduction_name(g.reduction) + " rejected: " + out.check.reason);
    out.profile = std::move(q);
    return out;
}

}  // namespace ldcb
