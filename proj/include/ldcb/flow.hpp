#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ldcb/errors.hpp"

namespace ldcb {

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("64-bit overflow in flow arithmetic");
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("64-bit overflow in flow arithmetic");
    return r;
}

}  // namespace checked

struct FlowEdge {
    int from = 0;
    int to = 0;
    std::int64_t lb = 0;
    std::int64_t cap = 0;
    std::int64_t cost = 0;
};

struct FlowNetwork {
    int nodes = 0;
    int source = 0;
    int sink = 0;
    std::vector<FlowEdge> edges;

    int add_node() { return nodes++; }

    int add_edge(int from, int to, std::int64_t lb, std::int64_t cap, std::int64_t cost) {
        edges.push_back({from, to, lb, cap, cost});
        return static_cast<int>(edges.size()) - 1;
    }

    void validate() const {
        auto bad = [](const std::string& s) { throw InvalidInput("malformed flow network: " + s); };
        if (nodes < 2) bad("needs at least two nodes");
        if (source < 0 || source >= nodes || sink < 0 || sink >= nodes || source == sink) bad("bad source/sink");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& e = edges[i];
            std::string tag = "edge " + std::to_string(i);
            if (e.from < 0 || e.from >= nodes || e.to < 0 || e.to >= nodes) bad(tag + " has a bad endpoint");
            if (e.from == e.to) bad(tag + " is a self-loop");
            if (e.lb < 0 || e.cap < 0 || e.cost < 0) bad(tag + " has a negative parameter");
            if (e.lb > e.cap) bad(tag + " has lower bound above capacity");
        }
    }

    // One `edge <from> <to> <lb> <cap> <cost>` line per edge after a header line.
    std::string dump() const {
        std::ostringstream os;
        os << "network " << nodes << " " << source << " " << sink << "\n";
        for (const auto& e : edges) os << "edge " << e.from << " " << e.to << " " << e.lb << " " << e.cap << " " << e.cost << "\n";
        return os.str();
    }
};

struct FlowResult {
    bool feasible = false;
    std::int64_t cost = 0;
    std::vector<std::int64_t> flow;
};

namespace detail {

class Residual {
public:
    struct Arc {
        int to;
        std::int64_t cap;
        std::int64_t cost;
        int rev;
        int id;  // insertion index; ties in path selection go to the lowest id
    };

    explicit Residual(int n) : g_(n) {}

    int add(int u, int v, std::int64_t cap, std::int64_t cost) {
        int id = next_id_++;
        g_[u].push_back({v, cap, cost, static_cast<int>(g_[v].size()), id});
        g_[v].push_back({u, 0, -cost, static_cast<int>(g_[u].size()) - 1, id});
        handles_.emplace_back(u, static_cast<int>(g_[u].size()) - 1);
        return id;
    }

    std::int64_t flow_on(int id) const {
        auto [u, k] = handles_[id];
        const Arc& a = g_[u][k];
        return g_[a.to][a.rev].cap;
    }

    // Successive shortest paths with Johnson potentials. Returns (flow, cost).
    std::pair<std::int64_t, std::int64_t> min_cost_flow(int s, int t, std::int64_t limit) {
        const int n = static_cast<int>(g_.size());
        const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
        std::vector<std::int64_t> h(n, 0), dist(n);
        std::vector<int> pv(n), pe(n), pid(n);
        std::vector<char> done(n);
        std::int64_t flow = 0, cost = 0;
        while (flow < limit) {
            std::fill(dist.begin(), dist.end(), inf);
            std::fill(pid.begin(), pid.end(), std::numeric_limits<int>::max());
            std::fill(done.begin(), done.end(), 0);
            using Item = std::tuple<std::int64_t, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            dist[s] = 0;
            pq.emplace(0, s);
            while (!pq.empty()) {
                auto [d, u] = pq.top();
                pq.pop();
                if (d != dist[u] || done[u]) continue;
                done[u] = 1;
                for (int k = 0; k < static_cast<int>(g_[u].size()); ++k) {
                    const Arc& a = g_[u][k];
                    if (a.cap <= 0) continue;
                    std::int64_t nd = d + a.cost + h[u] - h[a.to];
                    if (nd < dist[a.to] || (nd == dist[a.to] && a.id < pid[a.to] && !done[a.to])) {
                        bool improved = nd < dist[a.to];
                        dist[a.to] = nd;
                        pv[a.to] = u;
                        pe[a.to] = k;
                        pid[a.to] = a.id;
                        if (improved) pq.emplace(nd, a.to);
                    }
                }
            }
            if (dist[t] >= inf) break;
            for (int v = 0; v < n; ++v)
                if (dist[v] < inf) h[v] += dist[v];
            std::int64_t push = limit - flow;
            for (int v = t; v != s; v = pv[v]) push = std::min(push, g_[pv[v]][pe[v]].cap);
            for (int v = t; v != s; v = pv[v]) {
                Arc& a = g_[pv[v]][pe[v]];
                a.cap -= push;
                g_[v][a.rev].cap += push;
                cost = checked::add(cost, checked::mul(push, a.cost));
            }
            flow += push;
        }
        return {flow, cost};
    }

    std::int64_t max_flow(int s, int t) {
        const int n = static_cast<int>(g_.size());
        std::int64_t total = 0;
        std::vector<int> level(n), it(n);
        auto bfs = [&] {
            std::fill(level.begin(), level.end(), -1);
            std::queue<int> q;
            level[s] = 0;
            q.push(s);
            while (!q.empty()) {
                int u = q.front();
                q.pop();
                for (const Arc& a : g_[u])
                    if (a.cap > 0 && level[a.to] < 0) {
                        level[a.to] = level[u] + 1;
                        q.push(a.to);
                    }
            }
            return level[t] >= 0;
        };
        auto dfs = [&](auto&& self, int u, std::int64_t f) -> std::int64_t {
            if (u == t) return f;
            for (int& k = it[u]; k < static_cast<int>(g_[u].size()); ++k) {
                Arc& a = g_[u][k];
                if (a.cap <= 0 || level[a.to] != level[u] + 1) continue;
                std::int64_t got = self(self, a.to, std::min(f, a.cap));
                if (got > 0) {
                    a.cap -= got;
                    g_[a.to][a.rev].cap += got;
                    return got;
                }
            }
            return 0;
        };
        while (bfs()) {
            std::fill(it.begin(), it.end(), 0);
            while (std::int64_t f = dfs(dfs, s, std::numeric_limits<std::int64_t>::max())) total = checked::add(total, f);
        }
        return total;
    }

private:
    std::vector<std::vector<Arc>> g_;
    std::vector<std::pair<int, int>> handles_;
    int next_id_ = 0;
};

}  // namespace detail

// Minimum-cost integral flow of exactly `value` units from source to sink respecting every lower
// bound. Lower bounds are removed by the usual excess transformation; the required value enters as
// extra supply at the source and demand at the sink.
inline FlowResult min_cost_flow_with_demands(const FlowNetwork& net, std::int64_t value) {
    net.validate();
    if (value < 0) throw InvalidInput("required flow value must be non-negative");
    const int n = net.nodes;
    const int ss = n, tt = n + 1;
    detail::Residual res(n + 2);
    std::vector<std::int64_t> excess(n, 0);
    std::int64_t base = 0;
    std::vector<int> ids(net.edges.size());
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
        const auto& e = net.edges[i];
        ids[i] = res.add(e.from, e.to, e.cap - e.lb, e.cost);
        excess[e.to] = checked::add(excess[e.to], e.lb);
        excess[e.from] = checked::add(excess[e.from], -e.lb);
        base = checked::add(base, checked::mul(e.lb, e.cost));
    }
    excess[net.source] = checked::add(excess[net.source], value);
    excess[net.sink] = checked::add(excess[net.sink], -value);
    std::int64_t demand = 0;
    for (int v = 0; v < n; ++v) {
        if (excess[v] > 0) {
            res.add(ss, v, excess[v], 0);
            demand = checked::add(demand, excess[v]);
        } else if (excess[v] < 0) {
            res.add(v, tt, -excess[v], 0);
        }
    }
    auto [pushed, cost] = res.min_cost_flow(ss, tt, demand);
    FlowResult out;
    if (pushed < demand) return out;
    out.feasible = true;
    out.cost = checked::add(base, cost);
    out.flow.resize(net.edges.size());
    for (std::size_t i = 0; i < net.edges.size(); ++i) out.flow[i] = net.edges[i].lb + res.flow_on(ids[i]);
    return out;
}

inline std::int64_t max_flow(const FlowNetwork& net) {
    net.validate();
    detail::Residual res(net.nodes);
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
        const auto& e = net.edges[i];
        if (e.lb != 0) throw InvalidInput("max_flow: edge " + std::to_string(i) + " has a nonzero lower bound");
        res.add(e.from, e.to, e.cap, 0);
    }
    return res.max_flow(net.source, net.sink);
}

// Independent check of a returned flow: bounds, conservation, value and reported cost. Empty string
// when valid.
inline std::string check_flow(const FlowNetwork& net, std::int64_t value, const FlowResult& r) {
    if (!r.feasible) return {};
    if (r.flow.size() != net.edges.size()) return "flow vector has the wrong length";
    std::vector<std::int64_t> bal(net.nodes, 0);
    std::int64_t cost = 0;
    for (std::size_t i = 0; i < net.edges.size(); ++i) {
        const auto& e = net.edges[i];
        std::int64_t f = r.flow[i];
        if (f < e.lb || f > e.cap) return "edge " + std::to_string(i) + " violates its bounds";
        bal[e.from] -= f;
        bal[e.to] += f;
        cost += f * e.cost;
    }
    for (int v = 0; v < net.nodes; ++v) {
        std::int64_t want = v == net.source ? -value : v == net.sink ? value : 0;
        if (bal[v] != want) return "conservation fails at node " + std::to_string(v);
    }
    if (cost != r.cost) return "reported cost does not match the flow";
    return {};
}

}  // namespace ldcb
