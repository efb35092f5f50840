#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ldcb/bribery.hpp"
#include "ldcb/election.hpp"
#include "ldcb/metrics.hpp"

namespace ldcb::testing {

inline std::string fixture(const std::string& name) {
    std::ifstream f(std::string(LDCB_FIXTURES) + "/" + name, std::ios::binary);
    if (!f) throw std::runtime_error("missing fixture " + name);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

inline Preference pref(std::initializer_list<int> order) { return Preference{std::vector<Alt>(order)}; }

// All m! permutations in lexicographic order.
inline std::vector<Preference> all_perms(int m) {
    std::vector<Preference> out;
    std::vector<Alt> v(m);
    std::iota(v.begin(), v.end(), 0);
    do out.push_back(Preference{v});
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

inline Preference random_pref(std::mt19937_64& rng, int m) {
    std::vector<Alt> v(m);
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(v.begin(), v.end(), rng);
    return Preference{v};
}

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Profile random_profile(std::mt19937_64& rng, int m, int n) {
    Profile p;
    p.alts = AlternativeSet::numbered(m);
    for (int i = 0; i < n; ++i) p.prefs.push_back(random_pref(rng, m));
    return p;
}

struct Ranges {
    int m_lo = 3, m_hi = 5;
    int n_lo = 2, n_hi = 5;
    std::vector<std::int64_t> deltas{0, 1, 2};  // per-voter choice
    int price_hi = 2;
    int budget_hi = 3;
    bool uniform_delta = false;
};

inline BriberyInstance random_instance(std::mt19937_64& rng, const Ranges& r, const VotingRule& rule, Metric metric,
                                       int m = 0) {
    if (m == 0) m = uniform(rng, r.m_lo, r.m_hi);
    const int n = uniform(rng, r.n_lo, r.n_hi);
    BriberyInstance in;
    in.profile = random_profile(rng, m, n);
    in.target = uniform(rng, 0, m - 1);
    in.rule = rule;
    in.metric = metric;
    const auto pick = [&] { return r.deltas[uniform(rng, 0, static_cast<int>(r.deltas.size()) - 1)]; };
    const std::int64_t common = pick();
    for (int i = 0; i < n; ++i) {
        in.deltas.push_back(r.uniform_delta ? common : pick());
        in.prices.push_back(uniform(rng, 0, r.price_hi));
    }
    in.budget = uniform(rng, 0, r.budget_hi);
    return in;
}

// Relabels alternatives by `perm` (old index -> new index), names included.
inline BriberyInstance relabel(const BriberyInstance& in, const std::vector<Alt>& perm) {
    BriberyInstance out = in;
    std::vector<std::string> names(in.m());
    for (Alt a = 0; a < in.m(); ++a) names[perm[a]] = in.profile.alts.name(a);
    out.profile.alts = AlternativeSet(names);
    for (auto& p : out.profile.prefs)
        for (auto& a : p.order) a = perm[a];
    out.target = perm[in.target];
    if (in.rule.kind == RuleKind::Positional) out.rule = in.rule;
    return out;
}

}  // namespace ldcb::testing
