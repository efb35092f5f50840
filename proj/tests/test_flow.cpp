#include <catch_amalgamated.hpp>

#include <optional>

#include "ldcb/flow.hpp"
#include "support.hpp"

using namespace ldcb;

namespace {

FlowNetwork net_with(int nodes, std::initializer_list<FlowEdge> edges) {
    FlowNetwork n;
    n.nodes = nodes;
    n.source = 0;
    n.sink = 1;
    for (const auto& e : edges) n.edges.push_back(e);
    return n;
}

// Cheapest integral flow of the given value by enumerating every edge assignment.
std::optional<std::int64_t> brute_min_cost(const FlowNetwork& net, std::int64_t value) {
    const std::size_t E = net.edges.size();
    std::vector<std::int64_t> f(E);
    for (std::size_t i = 0; i < E; ++i) f[i] = net.edges[i].lb;
    std::optional<std::int64_t> best;
    while (true) {
        std::vector<std::int64_t> bal(net.nodes, 0);
        std::int64_t cost = 0;
        for (std::size_t i = 0; i < E; ++i) {
            bal[net.edges[i].from] -= f[i];
            bal[net.edges[i].to] += f[i];
            cost += f[i] * net.edges[i].cost;
        }
        bool ok = true;
        for (int v = 0; v < net.nodes; ++v)
            ok = ok && bal[v] == (v == net.source ? -value : v == net.sink ? value : 0);
        if (ok && (!best || cost < *best)) best = cost;
        std::size_t i = 0;
        while (i < E && f[i] == net.edges[i].cap) f[i] = net.edges[i].lb, ++i;
        if (i == E) break;
        ++f[i];
    }
    return best;
}

// Feasibility through the excess transformation, solved with plain max flow.
bool feasible_by_max_flow(const FlowNetwork& net, std::int64_t value) {
    FlowNetwork h;
    h.nodes = net.nodes + 2;
    h.source = net.nodes;
    h.sink = net.nodes + 1;
    std::vector<std::int64_t> ex(net.nodes, 0);
    for (const auto& e : net.edges) {
        h.add_edge(e.from, e.to, 0, e.cap - e.lb, 0);
        ex[e.to] += e.lb;
        ex[e.from] -= e.lb;
    }
    ex[net.source] += value;
    ex[net.sink] -= value;
    std::int64_t need = 0;
    for (int v = 0; v < net.nodes; ++v) {
        if (ex[v] > 0) h.add_edge(h.source, v, 0, ex[v], 0), need += ex[v];
        if (ex[v] < 0) h.add_edge(v, h.sink, 0, -ex[v], 0);
    }
    if (need == 0) return true;
    return max_flow(h) == need;
}

}  // namespace

TEST_CASE("min cost flow on hand examples") {
    auto r = min_cost_flow_with_demands(net_with(2, {{0, 1, 0, 1, 5}}), 1);
    CHECK(r.feasible);
    CHECK(r.cost == 5);
    CHECK_FALSE(min_cost_flow_with_demands(net_with(2, {{0, 1, 2, 3, 1}}), 1).feasible);
    r = min_cost_flow_with_demands(net_with(2, {{0, 1, 0, 1, 1}, {0, 1, 0, 1, 3}}), 2);
    CHECK(r.feasible);
    CHECK(r.cost == 4);
    // Diamond: the lower bound forces the expensive edge.
    auto d = net_with(3, {{0, 2, 0, 2, 0}, {2, 1, 1, 1, 10}, {2, 1, 0, 1, 1}});
    r = min_cost_flow_with_demands(d, 2);
    CHECK(r.feasible);
    CHECK(r.cost == 11);
    CHECK(check_flow(d, 2, r).empty());
    CHECK(min_cost_flow_with_demands(d, 1).cost == 10);
    CHECK_FALSE(min_cost_flow_with_demands(d, 3).feasible);
}

TEST_CASE("zero-value flow with lower bounds needs a circulation") {
    auto c = net_with(3, {{0, 2, 1, 1, 2}, {2, 0, 0, 1, 3}});
    auto r = min_cost_flow_with_demands(c, 0);
    REQUIRE(r.feasible);
    CHECK(r.cost == 5);
    CHECK(r.flow == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("max flow on hand examples") {
    CHECK(max_flow(net_with(2, {{0, 1, 0, 7, 0}})) == 7);
    CHECK(max_flow(net_with(3, {{0, 2, 0, 3, 0}, {2, 1, 0, 2, 0}})) == 2);
    // 2x2 complete bipartite, unit capacities: nodes 2,3 left, 4,5 right.
    CHECK(max_flow(net_with(6, {{0, 2, 0, 1, 0},
                                {0, 3, 0, 1, 0},
                                {2, 4, 0, 1, 0},
                                {2, 5, 0, 1, 0},
                                {3, 4, 0, 1, 0},
                                {3, 5, 0, 1, 0},
                                {4, 1, 0, 1, 0},
                                {5, 1, 0, 1, 0}})) == 2);
    CHECK_THROWS_AS(max_flow(net_with(2, {{0, 1, 1, 2, 0}})), InvalidInput);
}

TEST_CASE("malformed networks are rejected") {
    CHECK_THROWS_AS(min_cost_flow_with_demands(net_with(2, {{0, 1, 3, 2, 0}}), 0), InvalidInput);
    CHECK_THROWS_AS(min_cost_flow_with_demands(net_with(2, {{0, 5, 0, 2, 0}}), 0), InvalidInput);
    CHECK_THROWS_AS(min_cost_flow_with_demands(net_with(2, {{1, 1, 0, 2, 0}}), 0), InvalidInput);
    CHECK_THROWS_AS(min_cost_flow_with_demands(net_with(2, {{0, 1, 0, 2, -1}}), 0), InvalidInput);
    CHECK_THROWS_AS(min_cost_flow_with_demands(net_with(2, {{0, 1, 0, 2, 0}}), -1), InvalidInput);
}

TEST_CASE("random networks: optimal cost, valid flows, feasibility agrees with max flow") {
    std::mt19937_64 rng(2024);
    int feasible_seen = 0;
    for (int it = 0; it < 1500; ++it) {
        const int nodes = testing::uniform(rng, 2, 5);
        const int E = testing::uniform(rng, 1, 8);
        FlowNetwork net;
        net.nodes = nodes;
        net.source = 0;
        net.sink = 1;
        for (int e = 0; e < E; ++e) {
            int u = testing::uniform(rng, 0, nodes - 1), v = testing::uniform(rng, 0, nodes - 2);
            if (v >= u) ++v;
            int cap = testing::uniform(rng, 0, 3);
            int lb = testing::uniform(rng, 0, 3) == 0 ? testing::uniform(rng, 0, cap) : 0;
            net.add_edge(u, v, lb, cap, testing::uniform(rng, 0, 5));
        }
        const std::int64_t value = testing::uniform(rng, 0, 4);
        auto r = min_cost_flow_with_demands(net, value);
        auto want = brute_min_cost(net, value);
        REQUIRE(r.feasible == want.has_value());
        REQUIRE(r.feasible == feasible_by_max_flow(net, value));
        if (r.feasible) {
            ++feasible_seen;
            REQUIRE(r.cost == *want);
            REQUIRE(check_flow(net, value, r).empty());
        }
    }
    CHECK(feasible_seen > 200);
}

TEST_CASE("flow output is deterministic and the dump is line based") {
    auto d = net_with(3, {{0, 2, 0, 2, 0}, {2, 1, 0, 1, 1}, {2, 1, 0, 1, 1}});
    auto r1 = min_cost_flow_with_demands(d, 1), r2 = min_cost_flow_with_demands(d, 1);
    CHECK(r1.flow == r2.flow);
    // Equal-cost parallel edges: the lower edge index carries the unit.
    CHECK(r1.flow == std::vector<std::int64_t>{1, 1, 0});
    CHECK(d.dump() == "network 3 0 1\nedge 0 2 0 2 0\nedge 2 1 0 1 1\nedge 2 1 0 1 1\n");
}

TEST_CASE("checked arithmetic refuses overflow") {
    CHECK_THROWS(checked::add(std::numeric_limits<std::int64_t>::max(), 1));
    CHECK_THROWS(checked::mul(std::int64_t{1} << 40, std::int64_t{1} << 40));
    CHECK(checked::mul(-3, 4) == -12);
}
