#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ldcb/errors.hpp"

namespace ldcb {

using Alt = int;

class AlternativeSet {
public:
    AlternativeSet() = default;

    explicit AlternativeSet(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.empty()) throw InvalidInput("alternative set must be non-empty");
        index_.reserve(names_.size());
        for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
            const auto& s = names_[i];
            if (s.empty()) throw InvalidInput("empty alternative name");
            if (!index_.emplace(s, i).second) throw InvalidInput("duplicate alternative name '" + s + "'");
        }
    }

    // a0, a1, ... style names.
    static AlternativeSet numbered(int m, std::string_view prefix = "a") {
        std::vector<std::string> v;
        v.reserve(m);
        for (int i = 0; i < m; ++i) v.push_back(std::string(prefix) + std::to_string(i));
        return AlternativeSet(std::move(v));
    }

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(Alt a) const {
        check(a);
        return names_[a];
    }
    const std::vector<std::string>& names() const { return names_; }

    bool contains(std::string_view s) const { return index_.count(std::string(s)) != 0; }
    Alt index(std::string_view s) const {
        auto it = index_.find(std::string(s));
        if (it == index_.end()) throw InvalidInput("unknown alternative '" + std::string(s) + "'");
        return it->second;
    }

    void check(Alt a) const {
        if (a < 0 || a >= size()) throw InvalidInput("alternative index " + std::to_string(a) + " out of range");
    }

    friend bool operator==(const AlternativeSet& x, const AlternativeSet& y) { return x.names_ == y.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

// A total order, best first.
struct Preference {
    std::vector<Alt> order;

    Preference() = default;
    explicit Preference(std::vector<Alt> o) : order(std::move(o)) {}

    int size() const { return static_cast<int>(order.size()); }
    Alt at(int pos) const { return order.at(pos - 1); }

    // 1-based rank of every alternative.
    std::vector<int> positions() const {
        std::vector<int> p(order.size(), 0);
        for (int i = 0; i < size(); ++i) p[order[i]] = i + 1;
        return p;
    }

    bool is_permutation_of(int m) const {
        if (size() != m) return false;
        std::vector<char> seen(m, 0);
        for (Alt a : order) {
            if (a < 0 || a >= m || seen[a]) return false;
            seen[a] = 1;
        }
        return true;
    }

    static Preference identity(int m) {
        std::vector<Alt> o(m);
        std::iota(o.begin(), o.end(), 0);
        return Preference(std::move(o));
    }

    friend bool operator==(const Preference&, const Preference&) = default;
    friend auto operator<=>(const Preference& x, const Preference& y) { return x.order <=> y.order; }
};

inline int position(const Preference& p, Alt a) {
    for (int i = 0; i < p.size(); ++i)
        if (p.order[i] == a) return i + 1;
    throw InvalidInput("alternative " + std::to_string(a) + " not in preference");
}

struct Profile {
    AlternativeSet alts;
    std::vector<Preference> prefs;

    int n() const { return static_cast<int>(prefs.size()); }
    int m() const { return alts.size(); }

    void validate() const {
        if (prefs.empty()) throw InvalidInput("profile needs at least one preference");
        for (std::size_t i = 0; i < prefs.size(); ++i)
            if (!prefs[i].is_permutation_of(m()))
                throw InvalidInput("preference " + std::to_string(i) + " is not a permutation of the alternatives");
    }

    friend bool operator==(const Profile&, const Profile&) = default;
};

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    friend bool operator==(const Rational&, const Rational&) = default;
};

enum class RuleKind { Plurality, Veto, KApproval, Positional, Borda, Maximin, Copeland, Bucklin, SimplifiedBucklin };

struct VotingRule {
    RuleKind kind = RuleKind::Plurality;
    int k = 0;                         // k-approval
    std::vector<std::int64_t> alpha;   // explicit positional vector
    Rational copeland_alpha{1, 2};

    static VotingRule of(RuleKind kind) {
        VotingRule r;
        r.kind = kind;
        return r;
    }
    static VotingRule plurality() { return of(RuleKind::Plurality); }
    static VotingRule veto() { return of(RuleKind::Veto); }
    static VotingRule k_approval(int k) {
        auto r = of(RuleKind::KApproval);
        r.k = k;
        return r;
    }
    static VotingRule positional(std::vector<std::int64_t> a) {
        auto r = of(RuleKind::Positional);
        r.alpha = std::move(a);
        return r;
    }
    static VotingRule borda() { return of(RuleKind::Borda); }
    static VotingRule maximin() { return of(RuleKind::Maximin); }
    static VotingRule copeland(Rational a) {
        auto r = of(RuleKind::Copeland);
        r.copeland_alpha = a;
        return r;
    }
    static VotingRule bucklin() { return of(RuleKind::Bucklin); }
    static VotingRule simplified_bucklin() { return of(RuleKind::SimplifiedBucklin); }

    bool is_positional() const {
        return kind == RuleKind::Plurality || kind == RuleKind::Veto || kind == RuleKind::KApproval ||
               kind == RuleKind::Positional || kind == RuleKind::Borda;
    }
    bool is_pairwise() const { return kind == RuleKind::Maximin || kind == RuleKind::Copeland; }
    bool is_bucklin_family() const { return kind == RuleKind::Bucklin || kind == RuleKind::SimplifiedBucklin; }

    std::vector<std::int64_t> score_vector(int m) const {
        std::vector<std::int64_t> v(m, 0);
        switch (kind) {
            case RuleKind::Plurality: v[0] = 1; break;
            case RuleKind::Veto: std::fill(v.begin(), v.end() - 1, 1); break;
            case RuleKind::KApproval: std::fill(v.begin(), v.begin() + std::clamp(k, 0, m), 1); break;
            case RuleKind::Borda:
                for (int i = 0; i < m; ++i) v[i] = m - 1 - i;
                break;
            case RuleKind::Positional:
                if (static_cast<int>(alpha.size()) != m)
                    throw InvalidInput("score vector has length " + std::to_string(alpha.size()) + ", expected " +
                                       std::to_string(m));
                v = alpha;
                break;
            default: throw InvalidInput("rule has no score vector");
        }
        return v;
    }

    void validate(int m) const {
        if (m < 1) throw InvalidInput("need at least one alternative");
        switch (kind) {
            case RuleKind::KApproval:
                if (k < 1 || k > m - 1)
                    throw InvalidInput("k-approval needs 1 <= k <= m-1 (k=" + std::to_string(k) +
                                       ", m=" + std::to_string(m) + ")");
                break;
            case RuleKind::Veto:
                if (m < 2) throw InvalidInput("veto needs at least two alternatives");
                break;
            case RuleKind::Positional: {
                auto v = score_vector(m);
                for (int i = 0; i < m; ++i) {
                    if (v[i] < 0) throw InvalidInput("score vector entries must be non-negative");
                    if (i > 0 && v[i] > v[i - 1]) throw InvalidInput("score vector must be non-increasing");
                }
                if (m > 1 && v.front() <= v.back()) throw InvalidInput("score vector needs alpha_1 > alpha_m");
                break;
            }
            case RuleKind::Copeland:
                if (copeland_alpha.den <= 0 || copeland_alpha.num < 0 || copeland_alpha.num > copeland_alpha.den)
                    throw InvalidInput("copeland alpha must be a rational in [0,1]");
                break;
            default: break;
        }
    }

    friend bool operator==(const VotingRule&, const VotingRule&) = default;
};

struct WeightedMajorityGraph {
    int m = 0;
    std::vector<int> d;  // row-major, d[x*m+y] = N(x,y) - N(y,x)
    int operator()(Alt x, Alt y) const { return d[static_cast<std::size_t>(x) * m + y]; }
};

inline std::vector<std::int64_t> positional_scores(const Profile& p, const std::vector<std::int64_t>& alpha) {
    if (static_cast<int>(alpha.size()) != p.m())
        throw InvalidInput("score vector length " + std::to_string(alpha.size()) + " does not match m=" +
                           std::to_string(p.m()));
    std::vector<std::int64_t> s(p.m(), 0);
    for (const auto& pref : p.prefs)
        for (int i = 0; i < pref.size(); ++i) s[pref.order[i]] += alpha[i];
    return s;
}

inline std::vector<int> last_place_counts(const Profile& p) {
    std::vector<int> v(p.m(), 0);
    for (const auto& pref : p.prefs) ++v[pref.order.back()];
    return v;
}

// Margin between two alternatives without building the full graph.
inline int margin(const Profile& p, Alt x, Alt y) {
    int d = 0;
    for (const auto& pref : p.prefs) {
        for (Alt a : pref.order) {
            if (a == x) { ++d; break; }
            if (a == y) { --d; break; }
        }
    }
    return x == y ? 0 : d;
}

inline WeightedMajorityGraph weighted_majority_graph(const Profile& p) {
    const int m = p.m();
    WeightedMajorityGraph g{m, std::vector<int>(static_cast<std::size_t>(m) * m, 0)};
    for (const auto& pref : p.prefs) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                ++g.d[static_cast<std::size_t>(pref.order[i]) * m + pref.order[j]];
                --g.d[static_cast<std::size_t>(pref.order[j]) * m + pref.order[i]];
            }
    }
    return g;
}

// counts[a*m + l-1] = number of voters ranking a within the first l positions.
inline std::vector<int> level_counts(const Profile& p) {
    const int m = p.m();
    std::vector<int> c(static_cast<std::size_t>(m) * m, 0);
    for (const auto& pref : p.prefs)
        for (int i = 0; i < m; ++i)
            for (int l = i; l < m; ++l) ++c[static_cast<std::size_t>(pref.order[i]) * m + l];
    return c;
}

inline int majority_threshold(int n) { return n / 2 + 1; }

template <class T>
std::vector<Alt> argmax_set(const std::vector<T>& v) {
    std::vector<Alt> out;
    if (v.empty()) return out;
    T best = *std::max_element(v.begin(), v.end());
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (v[i] == best) out.push_back(i);
    return out;
}

inline std::vector<std::int64_t> maximin_scores(const WeightedMajorityGraph& g) {
    std::vector<std::int64_t> s(g.m, 0);
    for (int x = 0; x < g.m; ++x) {
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (int y = 0; y < g.m; ++y)
            if (y != x) best = std::min<std::int64_t>(best, g(x, y));
        s[x] = g.m == 1 ? 0 : best;
    }
    return s;
}

// Copeland scores scaled by the denominator of alpha: wins*den + ties*num.
inline std::vector<std::int64_t> copeland_scores(const WeightedMajorityGraph& g, Rational alpha) {
    std::vector<std::int64_t> s(g.m, 0);
    for (int x = 0; x < g.m; ++x)
        for (int y = 0; y < g.m; ++y) {
            if (x == y) continue;
            if (g(x, y) > 0) s[x] += alpha.den;
            else if (g(x, y) == 0) s[x] += alpha.num;
        }
    return s;
}

// Smallest level with a strict majority; counts as produced by level_counts (saturation above the
// threshold is harmless).
inline std::vector<int> simplified_bucklin_scores(const std::vector<int>& counts, int m, int n) {
    const int need = majority_threshold(n);
    std::vector<int> s(m, m);
    for (int a = 0; a < m; ++a)
        for (int l = 0; l < m; ++l)
            if (counts[static_cast<std::size_t>(a) * m + l] >= need) {
                s[a] = l + 1;
                break;
            }
    return s;
}

inline std::vector<int> simplified_bucklin_scores(const Profile& p) {
    return simplified_bucklin_scores(level_counts(p), p.m(), p.n());
}

inline std::vector<Alt> bucklin_family_winners(const std::vector<int>& counts, int m, int n, bool simplified) {
    auto s = simplified_bucklin_scores(counts, m, n);
    int k = *std::min_element(s.begin(), s.end());
    std::vector<Alt> low;
    for (int a = 0; a < m; ++a)
        if (s[a] == k) low.push_back(a);
    if (simplified) return low;
    int best = -1;
    for (int a = 0; a < m; ++a) best = std::max(best, counts[static_cast<std::size_t>(a) * m + k - 1]);
    std::vector<Alt> out;
    for (int a = 0; a < m; ++a)
        if (counts[static_cast<std::size_t>(a) * m + k - 1] == best) out.push_back(a);
    return out;
}

inline std::vector<Alt> winners(const Profile& p, const VotingRule& rule) {
    rule.validate(p.m());
    if (p.m() == 1) return {0};
    switch (rule.kind) {
        case RuleKind::Maximin: return argmax_set(maximin_scores(weighted_majority_graph(p)));
        case RuleKind::Copeland: return argmax_set(copeland_scores(weighted_majority_graph(p), rule.copeland_alpha));
        case RuleKind::Bucklin: return bucklin_family_winners(level_counts(p), p.m(), p.n(), false);
        case RuleKind::SimplifiedBucklin: return bucklin_family_winners(level_counts(p), p.m(), p.n(), true);
        default: return argmax_set(positional_scores(p, rule.score_vector(p.m())));
    }
}

inline bool is_unique_winner(const Profile& p, const VotingRule& rule, Alt c) {
    auto w = winners(p, rule);
    return w.size() == 1 && w[0] == c;
}

}  // namespace ldcb
