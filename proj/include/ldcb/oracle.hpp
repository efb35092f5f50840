#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "ldcb/bribery.hpp"
#include "ldcb/election.hpp"
#include "ldcb/errors.hpp"
#include "ldcb/metrics.hpp"

namespace ldcb {

struct OracleBudget {
    std::size_t max_ball = 100'000;
    std::uint64_t max_nodes = 1'000'000;
    double time_s = 60.0;
    bool prune = true;

    void validate() const {
        if (max_ball == 0 || max_nodes == 0 || !(time_s > 0)) throw InvalidInput("oracle limits must be positive");
    }

    // Defaults overridden by ORACLE_MAX_NODES / ORACLE_TIME_S when set.
    static OracleBudget from_env() {
        OracleBudget b;
        if (const char* s = std::getenv("ORACLE_MAX_NODES")) b.max_nodes = std::stoull(s);
        if (const char* s = std::getenv("ORACLE_TIME_S")) b.time_s = std::stod(s);
        b.validate();
        return b;
    }
};

struct OracleStats {
    std::uint64_t nodes = 0;
    std::size_t peak_states = 0;
    std::uint64_t pruned = 0;
};

// Optimistic test for positional rules: `partial` holds scores so far, `c_max_rest` the most the
// target can still gain, `rival_min_rest[a]` the least each rival must still gain. False means no
// completion can make the target the unique winner.
inline bool score_upper_bound_prune(const std::vector<std::int64_t>& partial, std::int64_t c_max_rest,
                                    const std::vector<std::int64_t>& rival_min_rest, Alt c) {
    const std::int64_t best_c = partial[c] + c_max_rest;
    for (Alt a = 0; a < static_cast<Alt>(partial.size()); ++a)
        if (a != c && partial[a] + rival_min_rest[a] >= best_c) return false;
    return true;
}

namespace detail {

enum class StatKind { Positional, Pairwise, Levels };

inline StatKind stat_kind(const VotingRule& r) {
    if (r.is_pairwise()) return StatKind::Pairwise;
    if (r.is_bucklin_family()) return StatKind::Levels;
    return StatKind::Positional;
}

// What one preference adds to the running statistic of its rule.
inline std::vector<std::int64_t> contribution(const Preference& p, StatKind kind, const std::vector<std::int64_t>& alpha) {
    const int m = p.size();
    std::vector<std::int64_t> v;
    switch (kind) {
        case StatKind::Positional:
            v.assign(m, 0);
            for (int j = 0; j < m; ++j) v[p.order[j]] = alpha[j];
            break;
        case StatKind::Pairwise: {
            auto pos = p.positions();
            v.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
            for (int x = 0; x < m; ++x)
                for (int y = x + 1; y < m; ++y) v.push_back(pos[x] < pos[y] ? 1 : -1);
            break;
        }
        case StatKind::Levels:
            v.assign(static_cast<std::size_t>(m) * m, 0);
            for (int j = 0; j < m; ++j)
                for (int l = j; l < m; ++l) v[static_cast<std::size_t>(p.order[j]) * m + l] = 1;
            break;
    }
    return v;
}

struct VecHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull + (h >> 29);
        return h;
    }
};

struct Option {
    Preference pref;
    std::int64_t cost;
    std::vector<std::int64_t> add;
};

}  // namespace detail

// Exact search over the product of the voters' balls. Voters are processed one at a time; partial
// assignments reaching the same rule statistic are merged, keeping the cheapest and, among equal
// costs, the lexicographically smallest. Per voter, preferences with the same effect on the
// statistic are collapsed to one representative.
inline BriberyOutcome solve_exhaustive(const BriberyInstance& in, const OracleBudget& lim = {},
                                       OracleStats* stats = nullptr) {
    in.validate();
    lim.validate();
    const int n = in.n(), m = in.m();
    const Alt c = in.target;
    const auto start = std::chrono::steady_clock::now();
    if (m == 1) return accept_witness(in, in.profile);

    const auto kind = detail::stat_kind(in.rule);
    const auto alpha = kind == detail::StatKind::Positional ? in.rule.score_vector(m) : std::vector<std::int64_t>{};
    const bool simplified = in.rule.kind == RuleKind::SimplifiedBucklin;
    const int maj = majority_threshold(n);

    // Per-voter option lists.
    std::vector<std::vector<detail::Option>> opts(n);
    for (int i = 0; i < n; ++i) {
        const auto& orig = in.profile.prefs[i];
        const bool frozen = in.deltas[i] == 0 || in.prices[i] > in.budget;
        std::map<std::vector<std::int64_t>, std::size_t> cls;
        auto offer = [&](const Preference& q) {
            auto add = detail::contribution(q, kind, alpha);
            const bool is_orig = q == orig;
            auto [it, fresh] = cls.emplace(add, opts[i].size());
            if (fresh) {
                opts[i].push_back({q, is_orig ? 0 : in.prices[i], std::move(add)});
                return;
            }
            auto& o = opts[i][it->second];
            // Ball is visited in lexicographic order, so an earlier entry is already the lexmin.
            if (is_orig && in.prices[i] > 0) {
                o.pref = q;
                o.cost = 0;
            } else if (is_orig) {
                o.cost = 0;
            }
        };
        if (frozen) {
            offer(orig);
        } else {
            std::size_t seen = 0;
            for_each_in_ball(orig, in.metric, in.deltas[i], [&](const Preference& q) {
                if (++seen > lim.max_ball)
                    throw ResourceExceeded("ball", "voter " + std::to_string(i) + " has more than " +
                                                       std::to_string(lim.max_ball) + " preferences in range");
                offer(q);
            });
        }
    }

    // Most options first; ties by index.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return opts[a].size() > opts[b].size(); });

    // Suffix bounds for the positional prune.
    const bool use_prune = lim.prune && kind == detail::StatKind::Positional;
    std::vector<std::int64_t> c_max(n + 1, 0);
    std::vector<std::vector<std::int64_t>> rival_min(n + 1, std::vector<std::int64_t>(use_prune ? m : 0, 0));
    if (use_prune)
        for (int t = n - 1; t >= 0; --t) {
            std::int64_t cm = std::numeric_limits<std::int64_t>::min();
            std::vector<std::int64_t> rm(m, std::numeric_limits<std::int64_t>::max());
            for (const auto& o : opts[order[t]]) {
                cm = std::max(cm, o.add[c]);
                for (int a = 0; a < m; ++a) rm[a] = std::min(rm[a], o.add[a]);
            }
            c_max[t] = c_max[t + 1] + cm;
            for (int a = 0; a < m; ++a) rival_min[t][a] = rival_min[t + 1][a] + rm[a];
        }

    // Suffix bounds for the level prune: per voter, the most the target and the least each rival can
    // add to its top-l count.
    const bool use_levels = lim.prune && kind == detail::StatKind::Levels;
    std::vector<std::vector<std::int64_t>> lvl_max(n + 1), lvl_min(n + 1);
    if (use_levels) {
        const std::size_t len = static_cast<std::size_t>(m) * m;
        lvl_max[n].assign(len, 0);
        lvl_min[n].assign(len, 0);
        for (int t = n - 1; t >= 0; --t) {
            std::vector<std::int64_t> hi(len, 0), lo(len, 1);
            for (const auto& o : opts[order[t]])
                for (std::size_t j = 0; j < len; ++j) {
                    hi[j] = std::max(hi[j], o.add[j]);
                    lo[j] = std::min(lo[j], o.add[j]);
                }
            lvl_max[t] = lvl_max[t + 1];
            lvl_min[t] = lvl_min[t + 1];
            for (std::size_t j = 0; j < len; ++j) {
                lvl_max[t][j] += hi[j];
                lvl_min[t][j] += lo[j];
            }
        }
    }
    // Earliest level the target could still reach a majority at; a rival sure of a majority by then
    // (simplified) or strictly before (Bucklin) rules the target out.
    auto levels_hopeless = [&](const std::vector<std::int64_t>& st, int t) {
        int lc = 0;
        while (lc < m && st[static_cast<std::size_t>(c) * m + lc] + lvl_max[t][static_cast<std::size_t>(c) * m + lc] < maj) ++lc;
        if (lc == m) return true;
        const int upto = simplified ? lc : lc - 1;
        if (upto < 0) return false;
        for (Alt a = 0; a < m; ++a) {
            if (a == c) continue;
            const std::size_t j = static_cast<std::size_t>(a) * m + upto;
            if (st[j] + lvl_min[t][j] >= maj) return true;
        }
        return false;
    };

    struct Entry {
        std::int64_t cost;
        std::vector<int> pick;  // option index per voter, -1 while unassigned
    };
    // True when a's chosen preferences precede b's in voter-index order.
    auto lex_less = [&](const std::vector<int>& a, const std::vector<int>& b) {
        for (int i = 0; i < n; ++i) {
            if (a[i] == b[i] || a[i] < 0) continue;
            const auto& pa = opts[i][a[i]].pref;
            const auto& pb = opts[i][b[i]].pref;
            if (pa != pb) return pa < pb;
        }
        return false;
    };

    const std::size_t stat_len =
        kind == detail::StatKind::Positional ? m
        : kind == detail::StatKind::Pairwise ? static_cast<std::size_t>(m) * (m - 1) / 2
                                             : static_cast<std::size_t>(m) * m;
    using Layer = std::unordered_map<std::vector<std::int64_t>, Entry, detail::VecHash>;
    Layer cur;
    cur.emplace(std::vector<std::int64_t>(stat_len, 0), Entry{0, std::vector<int>(n, -1)});
    std::uint64_t nodes = 0, pruned = 0;
    std::size_t peak = 1;

    for (int t = 0; t < n; ++t) {
        const int i = order[t];
        Layer next;
        for (const auto& [st, e] : cur) {
            for (std::size_t k = 0; k < opts[i].size(); ++k) {
                const auto& o = opts[i][k];
                if (++nodes > lim.max_nodes)
                    throw ResourceExceeded("nodes", "search exceeded " + std::to_string(lim.max_nodes) + " nodes");
                if ((nodes & 0xfff) == 0) {
                    std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
                    if (el.count() > lim.time_s)
                        throw ResourceExceeded("time", "search exceeded " + std::to_string(lim.time_s) + " s");
                }
                const std::int64_t cost = e.cost + o.cost;
                if (cost > in.budget) continue;
                std::vector<std::int64_t> ns(st);
                for (std::size_t j = 0; j < stat_len; ++j) ns[j] += o.add[j];
                if (simplified)
                    for (auto& x : ns) x = std::min<std::int64_t>(x, maj);
                if ((use_prune && !score_upper_bound_prune(ns, c_max[t + 1], rival_min[t + 1], c)) ||
                    (use_levels && levels_hopeless(ns, t + 1))) {
                    ++pruned;
                    continue;
                }
                auto it = next.find(ns);
                if (it == next.end()) {
                    Entry ne{cost, e.pick};
                    ne.pick[i] = static_cast<int>(k);
                    next.emplace(std::move(ns), std::move(ne));
                } else if (cost <= it->second.cost) {
                    std::vector<int> pick = e.pick;
                    pick[i] = static_cast<int>(k);
                    if (cost < it->second.cost || lex_less(pick, it->second.pick)) it->second = Entry{cost, std::move(pick)};
                }
            }
        }
        cur = std::move(next);
        peak = std::max(peak, cur.size());
    }

    auto target_wins = [&](const std::vector<std::int64_t>& st) {
        std::vector<Alt> w;
        switch (kind) {
            case detail::StatKind::Positional: w = argmax_set(st); break;
            case detail::StatKind::Pairwise: {
                WeightedMajorityGraph g{m, std::vector<int>(static_cast<std::size_t>(m) * m, 0)};
                std::size_t j = 0;
                for (int x = 0; x < m; ++x)
                    for (int y = x + 1; y < m; ++y, ++j) {
                        g.d[static_cast<std::size_t>(x) * m + y] = static_cast<int>(st[j]);
                        g.d[static_cast<std::size_t>(y) * m + x] = -static_cast<int>(st[j]);
                    }
                w = in.rule.kind == RuleKind::Maximin ? argmax_set(maximin_scores(g))
                                                      : argmax_set(copeland_scores(g, in.rule.copeland_alpha));
                break;
            }
            case detail::StatKind::Levels: {
                std::vector<int> counts(st.begin(), st.end());
                w = bucklin_family_winners(counts, m, n, simplified);
                break;
            }
        }
        return w.size() == 1 && w[0] == c;
    };

    const Entry* best = nullptr;
    for (const auto& [st, e] : cur) {
        if (!target_wins(st)) continue;
        if (!best || e.cost < best->cost || (e.cost == best->cost && lex_less(e.pick, best->pick))) best = &e;
    }
    if (stats) *stats = {nodes, peak, pruned};
    if (!best) return {};
    Profile w = in.profile;
    for (int i = 0; i < n; ++i) w.prefs[i] = opts[i][best->pick[i]].pref;
    return accept_witness(in, std::move(w));
}

}  // namespace ldcb
