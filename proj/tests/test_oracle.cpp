#include <catch_amalgamated.hpp>

#include "ldcb/io.hpp"
#include "ldcb/oracle.hpp"
#include "support.hpp"

using namespace ldcb;
using ldcb::testing::pref;

namespace {

const std::vector<VotingRule>& rules() {
    static const std::vector<VotingRule> r{VotingRule::plurality(),     VotingRule::veto(),
                                           VotingRule::k_approval(2),   VotingRule::borda(),
                                           VotingRule::maximin(),       VotingRule::copeland({1, 2}),
                                           VotingRule::copeland({0, 1}), VotingRule::bucklin(),
                                           VotingRule::simplified_bucklin()};
    return r;
}

BriberyInstance random_any(std::mt19937_64& rng, int m_hi = 4, int n_hi = 4) {
    testing::Ranges rg;
    rg.m_lo = 3;
    rg.m_hi = m_hi;
    rg.n_lo = 1;
    rg.n_hi = n_hi;
    const auto& rs = rules();
    const auto& rule = rs[testing::uniform(rng, 0, static_cast<int>(rs.size()) - 1)];
    return testing::random_instance(rng, rg, rule, kAllMetrics[testing::uniform(rng, 0, 2)]);
}

}  // namespace

TEST_CASE("zero radius means the current winner decides") {
    std::mt19937_64 rng(1);
    for (int it = 0; it < 200; ++it) {
        auto in = random_any(rng, 5, 5);
        std::fill(in.deltas.begin(), in.deltas.end(), 0);
        auto r = solve_exhaustive(in);
        REQUIRE(r.yes == is_unique_winner(in.profile, in.rule, in.target));
        if (r.yes) REQUIRE(r.bribed.empty());
    }
}

TEST_CASE("plurality fixture: cost one, lexicographically smallest witness") {
    auto in = parse_instance(testing::fixture("plurality_example.elb"));
    auto r = solve_exhaustive(in);
    REQUIRE(r.yes);
    CHECK(r.total_price == 1);
    CHECK(r.bribed == std::vector<int>{1});
    // Alternatives are c a b in that order.
    CHECK(r.witness->prefs[1] == pref({0, 1, 2}));
    CHECK(verify_witness(in, *r.witness).ok);
}

TEST_CASE("a zero budget freezes every paid voter") {
    std::mt19937_64 rng(2);
    for (int it = 0; it < 150; ++it) {
        auto in = random_any(rng);
        in.budget = 0;
        auto frozen = in;
        for (int i = 0; i < in.n(); ++i)
            if (in.prices[i] > 0) frozen.deltas[i] = 0;
        REQUIRE(solve_exhaustive(in).yes == solve_exhaustive(frozen).yes);
    }
}

TEST_CASE("pruning never changes the decision or the cost") {
    std::mt19937_64 rng(3);
    OracleBudget off;
    off.prune = false;
    for (int it = 0; it < 200; ++it) {
        auto in = random_any(rng);
        auto a = solve_exhaustive(in), b = solve_exhaustive(in, off);
        REQUIRE(a.yes == b.yes);
        if (a.yes) {
            REQUIRE(a.total_price == b.total_price);
            REQUIRE(a.witness == b.witness);
        }
    }
}

TEST_CASE("decisions are invariant under voter order and alternative names") {
    std::mt19937_64 rng(4);
    for (int it = 0; it < 150; ++it) {
        auto in = random_any(rng);
        const auto base = solve_exhaustive(in);

        std::vector<int> order(in.n());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        auto perm = in;
        for (int i = 0; i < in.n(); ++i) {
            perm.profile.prefs[i] = in.profile.prefs[order[i]];
            perm.deltas[i] = in.deltas[order[i]];
            perm.prices[i] = in.prices[order[i]];
        }
        auto pr = solve_exhaustive(perm);
        REQUIRE(pr.yes == base.yes);
        if (pr.yes) REQUIRE(pr.total_price == base.total_price);

        std::vector<Alt> relab(in.m());
        std::iota(relab.begin(), relab.end(), 0);
        std::shuffle(relab.begin(), relab.end(), rng);
        auto rl = solve_exhaustive(testing::relabel(in, relab));
        REQUIRE(rl.yes == base.yes);
        if (rl.yes) REQUIRE(rl.total_price == base.total_price);
    }
}

TEST_CASE("more radius or more budget never hurts") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 150; ++it) {
        auto in = random_any(rng);
        auto base = solve_exhaustive(in);
        auto wider = in;
        for (auto& d : wider.deltas) d += testing::uniform(rng, 0, 1);
        auto richer = in;
        richer.budget += testing::uniform(rng, 0, 3);
        auto w = solve_exhaustive(wider), r = solve_exhaustive(richer);
        if (base.yes) {
            REQUIRE(w.yes);
            REQUIRE(w.total_price <= base.total_price);
            REQUIRE(r.yes);
            REQUIRE(r.total_price == base.total_price);
        }
    }
}

TEST_CASE("every YES witness is valid and no cheaper witness exists") {
    std::mt19937_64 rng(6);
    for (int it = 0; it < 120; ++it) {
        auto in = random_any(rng, 4, 3);
        auto r = solve_exhaustive(in);
        // Brute force over the product of balls.
        std::vector<std::vector<Preference>> balls;
        for (int i = 0; i < in.n(); ++i) balls.push_back(ball(in.profile.prefs[i], in.metric, in.deltas[i]));
        std::optional<std::int64_t> best;
        std::vector<std::size_t> idx(in.n(), 0);
        while (true) {
            Profile w = in.profile;
            for (int i = 0; i < in.n(); ++i) w.prefs[i] = balls[i][idx[i]];
            auto v = verify_witness(in, w);
            if (v.ok && (!best || v.cost < *best)) best = v.cost;
            int i = 0;
            while (i < in.n() && ++idx[i] == balls[i].size()) idx[i++] = 0;
            if (i == in.n()) break;
        }
        REQUIRE(r.yes == best.has_value());
        if (r.yes) {
            REQUIRE(verify_witness(in, *r.witness).ok);
            REQUIRE(r.total_price == *best);
        }
    }
}

TEST_CASE("resource limits fire with the limit that was hit") {
    std::mt19937_64 rng(7);
    auto p = testing::random_profile(rng, 8, 6);
    auto in = make_instance(p, 0, VotingRule::borda(), Metric::MaxDisplacement, 7, 0);
    OracleBudget small_ball;
    small_ball.max_ball = 50;
    try {
        solve_exhaustive(in, small_ball);
        FAIL("expected the ball limit");
    } catch (const ResourceExceeded& e) {
        CHECK(e.limit == "ball");
    }
    in.deltas.assign(in.n(), 2);
    OracleBudget few_nodes;
    few_nodes.max_nodes = 10;
    try {
        solve_exhaustive(in, few_nodes);
        FAIL("expected the node limit");
    } catch (const ResourceExceeded& e) {
        CHECK(e.limit == "nodes");
    }
    OracleBudget bad;
    bad.max_nodes = 0;
    CHECK_THROWS_AS(solve_exhaustive(in, bad), InvalidInput);
}

TEST_CASE("statistics are reported") {
    auto in = parse_instance(testing::fixture("plurality_example.elb"));
    OracleStats st;
    solve_exhaustive(in, {}, &st);
    CHECK(st.nodes > 0);
    CHECK(st.peak_states > 0);
}

TEST_CASE("score bound prune") {
    // Nothing left to assign: same as a strict maximum.
    CHECK(score_upper_bound_prune({3, 1, 2}, 0, {0, 0, 0}, 0));
    CHECK_FALSE(score_upper_bound_prune({2, 2, 0}, 0, {0, 0, 0}, 0));
    // Plurality, n = 3: a already holds all three votes, c cannot catch up.
    CHECK_FALSE(score_upper_bound_prune({0, 3, 0}, 0, {0, 0, 0}, 0));
    // One voter left who could still top c.
    CHECK(score_upper_bound_prune({1, 1, 0}, 1, {0, 0, 0}, 0));
    CHECK_FALSE(score_upper_bound_prune({1, 1, 0}, 1, {0, 1, 0}, 0));
}

TEST_CASE("the level bound agrees with the unpruned search for both Bucklin variants") {
    std::mt19937_64 rng(8);
    OracleBudget off;
    off.prune = false;
    testing::Ranges rg;
    rg.m_hi = 4;
    rg.n_hi = 5;
    rg.deltas = {0, 1, 2, 3};
    std::uint64_t pruned = 0;
    for (int it = 0; it < 200; ++it) {
        const auto rule = it % 2 ? VotingRule::bucklin() : VotingRule::simplified_bucklin();
        auto in = testing::random_instance(rng, rg, rule, kAllMetrics[it % 3]);
        OracleStats st;
        auto a = solve_exhaustive(in, {}, &st), b = solve_exhaustive(in, off);
        pruned += st.pruned;
        REQUIRE(a.yes == b.yes);
        if (a.yes) {
            REQUIRE(a.total_price == b.total_price);
            REQUIRE(a.witness == b.witness);
        }
    }
    CHECK(pruned > 0);
}
