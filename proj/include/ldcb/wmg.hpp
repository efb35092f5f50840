#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldcb/election.hpp"
#include "ldcb/errors.hpp"

namespace ldcb {

// Core alternatives are indices 0..core-1 (named b1..), fillers follow (named c1..).
struct WmgTarget {
    int core = 0;
    int fillers = 0;
    std::vector<int> z;  // core x core, row-major
    int K = 2;

    int at(int a, int b) const { return z[static_cast<std::size_t>(a) * core + b]; }

    std::int64_t total_abs() const {
        std::int64_t s = 0;
        for (int v : z) s += v < 0 ? -v : v;
        return s;
    }

    void validate() const {
        if (core < 1) throw InvalidInput("need at least one core alternative");
        if (K < 1) throw InvalidInput("spacing parameter K must be positive");
        if (z.size() != static_cast<std::size_t>(core) * core) throw InvalidInput("margin matrix has the wrong size");
        int parity = -1;
        for (int a = 0; a < core; ++a)
            for (int b = 0; b < core; ++b) {
                if (a == b) {
                    if (at(a, b) != 0) throw InvalidInput("margin matrix diagonal must be zero");
                    continue;
                }
                if (at(a, b) != -at(b, a)) throw InvalidInput("margins must be antisymmetric");
                int p = ((at(a, b) % 2) + 2) % 2;
                if (parity >= 0 && p != parity) throw InvalidInput("margins must all have the same parity");
                parity = p;
            }
        const std::int64_t need = 10LL * K * K * core * core * total_abs();
        if (fillers <= need)
            throw InvalidInput("need more than " + std::to_string(need) + " filler alternatives, got " +
                               std::to_string(fillers));
    }
};

inline int wmg_gap(int K) { return (K + 1) / 2; }

// Builds a profile whose majority margins on the core equal the target. Every preference has the
// shape [gap] b [gap] b ... b [gap] [remaining fillers], each gap made of fillers not used in a gap
// anywhere else.
inline Profile realize_wmg(const WmgTarget& t) {
    t.validate();
    const int l = t.core;
    const int gap = wmg_gap(t.K);
    std::vector<std::vector<int>> skeletons;  // core orders, one per preference

    bool odd = false;
    for (int a = 0; a < l && !odd; ++a)
        for (int b = 0; b < l; ++b)
            if (a != b && t.at(a, b) % 2 != 0) odd = true;

    std::vector<int> zp(t.z);
    if (odd) {
        std::vector<int> anchor(l);
        for (int i = 0; i < l; ++i) anchor[i] = i;
        skeletons.push_back(anchor);
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j)
                if (i != j) zp[static_cast<std::size_t>(i) * l + j] += i < j ? -1 : 1;
    }
    for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b) {
            int v = zp[static_cast<std::size_t>(a) * l + b];
            if (v <= 0) continue;
            std::vector<int> others;
            for (int x = 0; x < l; ++x)
                if (x != a && x != b) others.push_back(x);
            // a b o1 .. on   and   on .. o1 a b: only the pair (a,b) survives, twice.
            std::vector<int> fwd{a, b}, bwd(others.rbegin(), others.rend());
            fwd.insert(fwd.end(), others.begin(), others.end());
            bwd.push_back(a);
            bwd.push_back(b);
            for (int r = 0; r < v / 2; ++r) {
                skeletons.push_back(fwd);
                skeletons.push_back(bwd);
            }
        }
    while (skeletons.size() < 3) {
        std::vector<int> up(l);
        for (int i = 0; i < l; ++i) up[i] = i;
        skeletons.push_back(up);
        skeletons.emplace_back(up.rbegin(), up.rend());
    }

    const std::int64_t used = static_cast<std::int64_t>(skeletons.size()) * (l + 1) * gap;
    if (used > t.fillers)
        throw InvalidInput("construction needs " + std::to_string(used) + " fillers, only " +
                           std::to_string(t.fillers) + " available");

    std::vector<std::string> names;
    for (int i = 0; i < l; ++i) names.push_back("b" + std::to_string(i + 1));
    for (int i = 0; i < t.fillers; ++i) names.push_back("c" + std::to_string(i + 1));
    Profile p;
    p.alts = AlternativeSet(names);
    const int m = l + t.fillers;
    int next = l;
    for (const auto& sk : skeletons) {
        Preference pref;
        pref.order.reserve(m);
        std::vector<char> placed(m, 0);
        auto put = [&](int a) {
            pref.order.push_back(a);
            placed[a] = 1;
        };
        for (int g = 0; g < gap; ++g) put(next++);
        for (int b : sk) {
            put(b);
            for (int g = 0; g < gap; ++g) put(next++);
        }
        for (int a = l; a < m; ++a)
            if (!placed[a]) put(a);
        p.prefs.push_back(std::move(pref));
    }
    return p;
}

// Spacing conditions: every core alternative has ceil(K/2) fillers immediately on each side, and
// each filler sits at distance < K/2 from a core alternative in at most one preference.
inline bool wmg_spacing_ok(const Profile& p, int core, int K, std::string* why = nullptr) {
    const int m = p.m();
    const int half = (K + 1) / 2;
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    std::vector<int> close(m, 0);
    for (int i = 0; i < p.n(); ++i) {
        const auto& o = p.prefs[i].order;
        std::vector<char> near(m, 0);
        for (int j = 0; j < m; ++j) {
            if (o[j] >= core) continue;
            for (int d = 1; d <= half; ++d)
                for (int s : {j - d, j + d})
                    if (s < 0 || s >= m || o[s] < core)
                        return fail("core alternative " + p.alts.name(o[j]) + " lacks filler padding in preference " +
                                    std::to_string(i));
            // |offset| < K/2
            for (int d = 1; 2 * d < K; ++d)
                for (int s : {j - d, j + d})
                    if (s >= 0 && s < m) near[o[s]] = 1;
        }
        for (int a = core; a < m; ++a)
            if (near[a] && ++close[a] > 1)
                return fail("filler " + p.alts.name(a) + " is close to the core in two preferences");
    }
    return true;
}

}  // namespace ldcb
