#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ldcb/bribery.hpp"
#include "ldcb/election.hpp"
#include "ldcb/errors.hpp"
#include "ldcb/flow.hpp"
#include "ldcb/metrics.hpp"

namespace ldcb {

// Alternatives that some preference within distance `delta` can put first, in preference order.
inline std::vector<Alt> top_reachable(const Preference& p, std::int64_t delta, Metric d) {
    if (delta < 0) throw InvalidInput("delta must be non-negative");
    std::int64_t w = d == Metric::Footrule ? delta / 2 + 1 : delta + 1;
    w = std::min<std::int64_t>(w, p.size());
    return {p.order.begin(), p.order.begin() + w};
}

// Same for the last position.
inline std::vector<Alt> bottom_reachable(const Preference& p, std::int64_t delta, Metric d) {
    if (delta < 0) throw InvalidInput("delta must be non-negative");
    std::int64_t w = d == Metric::Footrule ? delta / 2 + 1 : delta + 1;
    w = std::min<std::int64_t>(w, p.size());
    return {p.order.end() - w, p.order.end()};
}

inline Preference move_to_front(const Preference& p, Alt a) {
    Preference q;
    q.order.reserve(p.size());
    q.order.push_back(a);
    for (Alt b : p.order)
        if (b != a) q.order.push_back(b);
    return q;
}

inline Preference move_to_back(const Preference& p, Alt a) {
    Preference q;
    q.order.reserve(p.size());
    for (Alt b : p.order)
        if (b != a) q.order.push_back(b);
    q.order.push_back(a);
    return q;
}

// Top-k replacement: `out` leave the top k, `in` enter it. Survivors keep their order, the entrants
// follow them, then the leavers, then everything else. Keeps every displacement within the windows.
inline Preference exchange_top(const Preference& p, int k, const std::vector<Alt>& out, const std::vector<Alt>& in) {
    const int m = p.size();
    std::vector<char> is_out(m, 0), is_in(m, 0);
    for (Alt a : out) is_out[a] = 1;
    for (Alt a : in) is_in[a] = 1;
    Preference q;
    q.order.reserve(m);
    for (int j = 0; j < k; ++j)
        if (!is_out[p.order[j]]) q.order.push_back(p.order[j]);
    for (int j = k; j < m; ++j)
        if (is_in[p.order[j]]) q.order.push_back(p.order[j]);
    for (int j = 0; j < k; ++j)
        if (is_out[p.order[j]]) q.order.push_back(p.order[j]);
    for (int j = k; j < m; ++j)
        if (!is_in[p.order[j]]) q.order.push_back(p.order[j]);
    return q;
}

// A network for one guess plus the bookkeeping needed to turn its flow back into a profile.
struct GuessNetwork {
    enum Role : std::uint8_t { Structural, ToFront, ToBack, BoundarySwap, LeaveTop, EnterTop };
    std::string label;
    std::int64_t guess = 0;
    int level = 0;  // top-k boundary the network reasons about
    FlowNetwork net;
    std::int64_t value = 0;
    std::vector<Role> role;
    std::vector<int> voter;
    std::vector<Alt> alt;

    int edge(int from, int to, std::int64_t lb, std::int64_t cap, std::int64_t cost, Role r = Structural, int i = -1,
             Alt a = -1) {
        role.push_back(r);
        voter.push_back(i);
        alt.push_back(a);
        return net.add_edge(from, to, lb, cap, cost);
    }
};

inline Profile decode_flow(const Profile& original, const GuessNetwork& g, const std::vector<std::int64_t>& flow) {
    Profile w = original;
    std::vector<std::vector<Alt>> out(original.n()), in(original.n());
    for (std::size_t e = 0; e < g.role.size(); ++e) {
        if (flow[e] == 0 || g.role[e] == GuessNetwork::Structural) continue;
        int i = g.voter[e];
        switch (g.role[e]) {
            case GuessNetwork::ToFront: w.prefs[i] = move_to_front(original.prefs[i], g.alt[e]); break;
            case GuessNetwork::ToBack: w.prefs[i] = move_to_back(original.prefs[i], g.alt[e]); break;
            case GuessNetwork::BoundarySwap:
                std::swap(w.prefs[i].order[g.level - 1], w.prefs[i].order[g.level]);
                break;
            case GuessNetwork::LeaveTop: out[i].push_back(g.alt[e]); break;
            case GuessNetwork::EnterTop: in[i].push_back(g.alt[e]); break;
            default: break;
        }
    }
    for (int i = 0; i < original.n(); ++i)
        if (!out[i].empty()) w.prefs[i] = exchange_top(original.prefs[i], g.level, out[i], in[i]);
    return w;
}

struct SolveOptions {
    // 0 keeps guesses ascending; any other value shuffles them with this seed. The result must not
    // depend on it.
    std::uint64_t shuffle_seed = 0;
};

namespace detail {

inline void require_rule(const BriberyInstance& in, bool ok, const char* what) {
    in.validate();
    if (!ok) throw InvalidInput(std::string("solver expects ") + what);
}

inline std::vector<int> approval_scores(const Profile& p, int k) {
    std::vector<int> s(p.m(), 0);
    for (const auto& pref : p.prefs)
        for (int j = 0; j < k; ++j) ++s[pref.order[j]];
    return s;
}

// Solve every guess network, decode, verify, keep the cheapest (lowest guess on ties).
inline BriberyOutcome best_of(const BriberyInstance& in, std::vector<GuessNetwork> nets, const SolveOptions& opt,
                              bool verify_each = false) {
    if (opt.shuffle_seed != 0) {
        std::mt19937_64 rng(opt.shuffle_seed);
        std::shuffle(nets.begin(), nets.end(), rng);
    }
    struct Best {
        std::int64_t cost;
        std::int64_t guess;
        int level;
        Profile w;
    };
    std::optional<Best> best;
    for (const auto& g : nets) {
        auto r = min_cost_flow_with_demands(g.net, g.value);
        if (!r.feasible || r.cost > in.budget) continue;
        Profile w = decode_flow(in.profile, g, r.flow);
        auto v = verify_witness(in, w);
        if (!v.ok) {
            if (verify_each) continue;
            throw InternalError("flow witness rejected (" + g.label + "): " + v.reason);
        }
        // The verifier's price can undercut the flow's when an edge re-selects the incumbent.
        std::int64_t cost = v.cost;
        if (!best || std::tie(cost, g.level, g.guess) < std::tie(best->cost, best->level, best->guess))
            best = Best{cost, g.guess, g.level, std::move(w)};
    }
    if (!best) return {};
    return accept_witness(in, std::move(best->w));
}

}  // namespace detail

// ---------------------------------------------------------------- plurality and veto

inline bool is_plurality_like(const BriberyInstance& in) {
    return in.rule.kind == RuleKind::Plurality || (in.rule.kind == RuleKind::KApproval && in.rule.k == 1);
}
inline bool is_veto_like(const BriberyInstance& in) {
    return in.rule.kind == RuleKind::Veto || (in.rule.kind == RuleKind::KApproval && in.rule.k == in.m() - 1);
}

inline std::vector<GuessNetwork> plurality_networks(const BriberyInstance& in) {
    const int n = in.n(), m = in.m();
    const Alt c = in.target;
    int sc = 0;
    std::vector<int> q;
    for (int i = 0; i < n; ++i) {
        if (in.profile.prefs[i].order[0] == c) ++sc;
        else q.push_back(i);
    }
    std::vector<GuessNetwork> out;
    for (int l = std::max(sc, 1); l <= n; ++l) {
        GuessNetwork g;
        g.label = "plurality guess " + std::to_string(l);
        g.guess = l;
        g.level = 1;
        auto& net = g.net;
        net.source = net.add_node();
        net.sink = net.add_node();
        std::vector<int> v(m);
        for (int a = 0; a < m; ++a) v[a] = net.add_node();
        for (int i : q) {
            int u = net.add_node();
            g.edge(net.source, u, 0, 1, 0);
            const auto& pref = in.profile.prefs[i];
            for (Alt a : top_reachable(pref, in.deltas[i], in.metric)) {
                std::int64_t cost = a == pref.order[0] ? 0 : in.prices[i];
                g.edge(u, v[a], 0, 1, cost, GuessNetwork::ToFront, i, a);
            }
        }
        for (int a = 0; a < m; ++a) {
            if (a == c) g.edge(v[a], net.sink, l - sc, l - sc, 0);
            else g.edge(v[a], net.sink, 0, l - 1, 0);
        }
        g.value = static_cast<std::int64_t>(q.size());
        out.push_back(std::move(g));
    }
    return out;
}

inline BriberyOutcome solve_plurality(const BriberyInstance& in, const SolveOptions& opt = {}) {
    detail::require_rule(in, is_plurality_like(in), "plurality");
    return detail::best_of(in, plurality_networks(in), opt);
}

inline std::vector<GuessNetwork> veto_networks(const BriberyInstance& in) {
    const int n = in.n(), m = in.m();
    const Alt c = in.target;
    std::vector<GuessNetwork> out;
    for (int l = 0; l <= n; ++l) {
        if (static_cast<std::int64_t>(m - 1) * (l + 1) > n) break;
        GuessNetwork g;
        g.label = "veto guess " + std::to_string(l);
        g.guess = l;
        g.level = m - 1;
        auto& net = g.net;
        net.source = net.add_node();
        net.sink = net.add_node();
        std::vector<int> v(m);
        for (int a = 0; a < m; ++a) v[a] = net.add_node();
        for (int i = 0; i < n; ++i) {
            int u = net.add_node();
            g.edge(net.source, u, 0, 1, 0);
            const auto& pref = in.profile.prefs[i];
            for (Alt a : bottom_reachable(pref, in.deltas[i], in.metric)) {
                std::int64_t cost = a == pref.order.back() ? 0 : in.prices[i];
                g.edge(u, v[a], 0, 1, cost, GuessNetwork::ToBack, i, a);
            }
        }
        for (int a = 0; a < m; ++a) {
            if (a == c) g.edge(v[a], net.sink, 0, l, 0);
            else g.edge(v[a], net.sink, l + 1, n, 0);
        }
        g.value = n;
        out.push_back(std::move(g));
    }
    return out;
}

inline BriberyOutcome solve_veto(const BriberyInstance& in, const SolveOptions& opt = {}) {
    detail::require_rule(in, is_veto_like(in), "veto");
    if (in.m() == 1) return accept_witness(in, in.profile);
    return detail::best_of(in, veto_networks(in), opt);
}

// ---------------------------------------------------------------- k-approval, radius one

inline bool small_radius_ok(const BriberyInstance& in) {
    for (auto d : in.deltas)
        if (in.metric == Metric::Footrule ? d > 3 : d > 1) return false;
    return true;
}

namespace detail {

// The only approval-changing move inside a radius-one ball is exchanging positions k and k+1.
inline bool boundary_flip_allowed(const BriberyInstance& in, int i) {
    return in.metric == Metric::Footrule ? in.deltas[i] >= 2 : in.deltas[i] >= 1;
}

// Tokens: one unit per approval; a voter's flip moves one unit from the alternative at k to the one
// at k+1. `c_lo`/`c_hi` bound the target's final count, `rival_cap` everyone else's.
inline GuessNetwork token_network(const BriberyInstance& in, int k, std::int64_t c_lo, std::int64_t c_hi,
                                  std::int64_t rival_cap) {
    const int n = in.n(), m = in.m();
    GuessNetwork g;
    g.level = k;
    auto& net = g.net;
    net.source = net.add_node();
    net.sink = net.add_node();
    std::vector<int> v(m);
    for (int a = 0; a < m; ++a) v[a] = net.add_node();
    auto s = approval_scores(in.profile, k);
    for (int a = 0; a < m; ++a)
        if (s[a] > 0) g.edge(net.source, v[a], 0, s[a], 0);
    if (k < m)
        for (int i = 0; i < n; ++i) {
            if (!boundary_flip_allowed(in, i)) continue;
            const auto& pref = in.profile.prefs[i];
            g.edge(v[pref.order[k - 1]], v[pref.order[k]], 0, 1, in.prices[i], GuessNetwork::BoundarySwap, i, -1);
        }
    for (int a = 0; a < m; ++a) {
        if (a == in.target) g.edge(v[a], net.sink, c_lo, c_hi, 0);
        else g.edge(v[a], net.sink, 0, rival_cap, 0);
    }
    g.value = static_cast<std::int64_t>(n) * k;
    return g;
}

// Same token model for the max-displacement ball: per voter, any equal-size exchange between the
// last δ of the top k and the first δ below it.
inline GuessNetwork window_network(const BriberyInstance& in, int k, std::int64_t c_lo, std::int64_t c_hi,
                                   std::int64_t rival_cap) {
    const int n = in.n(), m = in.m();
    const std::int64_t delta = in.deltas.front();
    GuessNetwork g;
    g.level = k;
    auto& net = g.net;
    net.source = net.add_node();
    net.sink = net.add_node();
    std::vector<int> v(m);
    for (int a = 0; a < m; ++a) v[a] = net.add_node();
    auto s = approval_scores(in.profile, k);
    for (int a = 0; a < m; ++a)
        if (s[a] > 0) g.edge(net.source, v[a], 0, s[a], 0);
    if (k < m && delta > 0)
        for (int i = 0; i < n; ++i) {
            const auto& pref = in.profile.prefs[i];
            int u = net.add_node();
            int lo = static_cast<int>(std::max<std::int64_t>(1, k - delta + 1));
            int hi = static_cast<int>(std::min<std::int64_t>(m, k + delta));
            for (int pos = lo; pos <= k; ++pos)
                g.edge(v[pref.at(pos)], u, 0, 1, 0, GuessNetwork::LeaveTop, i, pref.at(pos));
            for (int pos = k + 1; pos <= hi; ++pos)
                g.edge(u, v[pref.at(pos)], 0, 1, 0, GuessNetwork::EnterTop, i, pref.at(pos));
        }
    for (int a = 0; a < m; ++a) {
        if (a == in.target) g.edge(v[a], net.sink, c_lo, c_hi, 0);
        else g.edge(v[a], net.sink, 0, rival_cap, 0);
    }
    g.value = static_cast<std::int64_t>(n) * k;
    return g;
}

}  // namespace detail

inline std::vector<GuessNetwork> kapproval_small_radius_networks(const BriberyInstance& in) {
    std::vector<GuessNetwork> out;
    for (int l = 1; l <= in.n(); ++l) {
        auto g = detail::token_network(in, in.rule.k, l, l, l - 1);
        g.guess = l;
        g.label = "k-approval guess " + std::to_string(l);
        out.push_back(std::move(g));
    }
    return out;
}

inline BriberyOutcome solve_kapproval_small_radius(const BriberyInstance& in, const SolveOptions& opt = {}) {
    detail::require_rule(in, in.rule.kind == RuleKind::KApproval, "k-approval");
    if (!small_radius_ok(in))
        throw UnsupportedParameters("k-approval flow needs delta <= 1 (swap, maxdisp) or delta <= 3 (footrule)");
    return detail::best_of(in, kapproval_small_radius_networks(in), opt);
}

// ---------------------------------------------------------------- k-approval, max displacement

inline std::vector<GuessNetwork> kapproval_maxdisp_networks(const BriberyInstance& in) {
    std::vector<GuessNetwork> out;
    for (int l = 1; l <= in.n(); ++l) {
        auto g = detail::window_network(in, in.rule.k, l, l, l - 1);
        g.guess = l;
        g.label = "k-approval maxdisp guess " + std::to_string(l);
        out.push_back(std::move(g));
    }
    return out;
}

inline BriberyOutcome solve_kapproval_maxdisp(const BriberyInstance& in, const SolveOptions& opt = {}) {
    detail::require_rule(in, in.rule.kind == RuleKind::KApproval && in.metric == Metric::MaxDisplacement,
                         "k-approval with max displacement");
    if (!in.is_ldcb_form())
        throw UnsupportedParameters("k-approval maxdisp flow needs one common delta and zero prices");
    return detail::best_of(in, kapproval_maxdisp_networks(in), opt);
}

// The raise-then-window network taken literally: c raised in every preference that can reach the top k,
// windows k-δ..k+δ, locked counts over positions 1..k-δ-1, YES iff the max flow saturates the source.
// Kept only to measure it against the oracle.
inline bool kapproval_maxdisp_literal_decision(const BriberyInstance& in) {
    in.validate();
    const int n = in.n(), m = in.m(), k = in.rule.k;
    const std::int64_t delta = in.deltas.front();
    const Alt x = in.target;
    std::vector<char> raised(n, 0);
    std::int64_t lx = 0;
    for (int i = 0; i < n; ++i)
        if (position(in.profile.prefs[i], x) <= k + delta) {
            raised[i] = 1;
            ++lx;
        }
    std::vector<std::int64_t> ly(m, 0);
    for (const auto& p : in.profile.prefs)
        for (std::int64_t pos = 1; pos <= k - delta - 1; ++pos) ++ly[p.at(static_cast<int>(pos))];
    for (Alt y = 0; y < m; ++y)
        if (y != x && ly[y] >= lx) return false;
    const std::int64_t dp = std::min<std::int64_t>(k, delta);
    FlowNetwork net;
    net.source = net.add_node();
    net.sink = net.add_node();
    std::vector<int> v(m, -1);
    for (Alt y = 0; y < m; ++y)
        if (y != x) v[y] = net.add_node();
    std::int64_t want = 0;
    for (int i = 0; i < n; ++i) {
        int u = net.add_node();
        std::int64_t cap = std::max<std::int64_t>(0, raised[i] ? dp - 1 : dp);
        want += cap;
        net.add_edge(net.source, u, 0, cap, 0);
        const auto& p = in.profile.prefs[i];
        std::int64_t lo = std::max<std::int64_t>(1, k - delta), hi = std::min<std::int64_t>(k + delta, m);
        for (std::int64_t pos = lo; pos <= hi; ++pos) {
            Alt y = p.at(static_cast<int>(pos));
            if (y != x) net.add_edge(u, v[y], 0, 1, 0);
        }
    }
    for (Alt y = 0; y < m; ++y)
        if (y != x) net.add_edge(v[y], net.sink, 0, lx - 1 - ly[y], 0);
    return max_flow(net) == want;
}

// ---------------------------------------------------------------- simplified Bucklin

// The target's score is some level k; only level-k counts matter for uniqueness there, so each
// level gets its own token network with the majority threshold.
inline std::vector<GuessNetwork> sbucklin_small_radius_networks(const BriberyInstance& in) {
    const int n = in.n(), maj = majority_threshold(n);
    std::vector<GuessNetwork> out;
    for (int k = 1; k <= in.m(); ++k) {
        auto g = detail::token_network(in, k, maj, n, maj - 1);
        g.guess = k;
        g.label = "simplified Bucklin level " + std::to_string(k);
        out.push_back(std::move(g));
    }
    return out;
}

inline BriberyOutcome solve_sbucklin_small_radius(const BriberyInstance& in, const SolveOptions& opt = {}) {
    detail::require_rule(in, in.rule.kind == RuleKind::SimplifiedBucklin, "simplified Bucklin");
    if (!small_radius_ok(in))
        throw UnsupportedParameters("simplified Bucklin flow needs delta <= 1 (swap, maxdisp) or delta <= 3 (footrule)");
    return detail::best_of(in, sbucklin_small_radius_networks(in), opt, true);
}

inline std::vector<GuessNetwork> sbucklin_maxdisp_networks(const BriberyInstance& in) {
    const int n = in.n(), maj = majority_threshold(n);
    std::vector<GuessNetwork> out;
    for (int k = 1; k <= in.m(); ++k) {
        auto g = detail::window_network(in, k, maj, n, maj - 1);
        g.guess = k;
        g.label = "simplified Bucklin maxdisp level " + std::to_string(k);
        out.push_back(std::move(g));
    }
    return out;
}

inline BriberyOutcome solve_sbucklin_maxdisp(const BriberyInstance& in, const SolveOptions& opt = {}) {
    detail::require_rule(in, in.rule.kind == RuleKind::SimplifiedBucklin && in.metric == Metric::MaxDisplacement,
                         "simplified Bucklin with max displacement");
    if (!in.is_ldcb_form())
        throw UnsupportedParameters("simplified Bucklin maxdisp flow needs one common delta and zero prices");
    return detail::best_of(in, sbucklin_maxdisp_networks(in), opt, true);
}

}  // namespace ldcb
