#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldcb/election.hpp"
#include "ldcb/errors.hpp"
#include "ldcb/metrics.hpp"

namespace ldcb {

struct BriberyInstance {
    Profile profile;
    Alt target = 0;
    std::vector<std::int64_t> deltas;
    std::vector<std::int64_t> prices;
    std::int64_t budget = 0;
    VotingRule rule;
    Metric metric = Metric::Swap;

    int n() const { return profile.n(); }
    int m() const { return profile.m(); }

    void validate() const {
        profile.validate();
        profile.alts.check(target);
        rule.validate(m());
        if (static_cast<int>(deltas.size()) != n()) throw InvalidInput("need one delta per voter");
        if (static_cast<int>(prices.size()) != n()) throw InvalidInput("need one price per voter");
        for (auto d : deltas)
            if (d < 0) throw InvalidInput("deltas must be non-negative");
        for (auto p : prices)
            if (p < 0) throw InvalidInput("prices must be non-negative");
        if (budget < 0) throw InvalidInput("budget must be non-negative");
    }

    bool uniform_delta() const {
        for (auto d : deltas)
            if (d != deltas.front()) return false;
        return true;
    }
    bool zero_prices() const {
        for (auto p : prices)
            if (p != 0) return false;
        return true;
    }
    // Unpriced form: one radius for everybody, nothing to pay.
    bool is_ldcb_form() const { return uniform_delta() && zero_prices(); }
    std::int64_t max_delta() const {
        std::int64_t d = 0;
        for (auto x : deltas) d = std::max(d, x);
        return d;
    }

    friend bool operator==(const BriberyInstance&, const BriberyInstance&) = default;
};

inline BriberyInstance make_instance(Profile p, Alt target, VotingRule rule, Metric metric, std::int64_t delta,
                                     std::int64_t budget = 0) {
    BriberyInstance in;
    const int n = p.n();
    in.profile = std::move(p);
    in.target = target;
    in.rule = std::move(rule);
    in.metric = metric;
    in.deltas.assign(n, delta);
    in.prices.assign(n, 0);
    in.budget = budget;
    return in;
}

struct BriberyOutcome {
    bool yes = false;
    std::optional<Profile> witness;
    std::vector<int> bribed;
    std::int64_t total_price = 0;
};

struct Verification {
    bool ok = false;
    std::string reason;
    std::vector<int> bribed;
    std::int64_t cost = 0;
};

// The four witness conditions: same shape, radius per changed voter, price within budget, and the
// target as sole winner.
inline Verification verify_witness(const BriberyInstance& in, const Profile& w) {
    Verification v;
    if (!(w.alts == in.profile.alts)) {
        v.reason = "witness uses a different alternative set";
        return v;
    }
    if (w.n() != in.n()) {
        v.reason = "witness has " + std::to_string(w.n()) + " voters, expected " + std::to_string(in.n());
        return v;
    }
    for (int i = 0; i < w.n(); ++i) {
        if (!w.prefs[i].is_permutation_of(in.m())) {
            v.reason = "witness preference " + std::to_string(i) + " is not a permutation";
            return v;
        }
        if (w.prefs[i] == in.profile.prefs[i]) continue;
        v.bribed.push_back(i);
        v.cost += in.prices[i];
        auto d = distance(in.metric, in.profile.prefs[i], w.prefs[i]);
        if (d > in.deltas[i]) {
            v.reason = "voter " + std::to_string(i) + " moved distance " + std::to_string(d) + " > " +
                       std::to_string(in.deltas[i]);
            return v;
        }
    }
    if (v.cost > in.budget) {
        v.reason = "cost " + std::to_string(v.cost) + " exceeds budget " + std::to_string(in.budget);
        return v;
    }
    if (!is_unique_winner(w, in.rule, in.target)) {
        v.reason = "target is not the unique winner";
        return v;
    }
    v.ok = true;
    return v;
}

// Builds a YES outcome; every solver funnels its witness through here.
inline BriberyOutcome accept_witness(const BriberyInstance& in, Profile w) {
    auto v = verify_witness(in, w);
    if (!v.ok) throw InternalError("solver produced an invalid witness: " + v.reason);
    BriberyOutcome out;
    out.yes = true;
    out.bribed = v.bribed;
    out.total_price = v.cost;
    out.witness = std::move(w);
    return out;
}

}  // namespace ldcb
