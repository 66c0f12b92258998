#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uavecon/power.hpp"

namespace uavecon {

enum class Scheme { Partition, Cyclic };

struct PatrolParams {
    double total_edge_length = 1.0;   // L, full cell perimeter
    double depopulated_length = 0.0;  // unserved arc within [0, L)
    int uav_count = 1;
    double service_delay = 1.0;       // D, the revisit-time requirement
    double equipment_cost = 0.0;      // c, per UAV
    PowerModel power = PowerModel::constant(1.0);

    void validate() const {
        if (!(total_edge_length > 0.0) || depopulated_length < 0.0 ||
            depopulated_length >= total_edge_length) {
            throw std::invalid_argument("PatrolParams: need 0 <= deltaL < L");
        }
        if (uav_count < 1 || !(service_delay > 0.0) || equipment_cost < 0.0) {
            throw std::invalid_argument("PatrolParams: bad n, D or c");
        }
    }
};

/// Worst revisit time when each UAV bounces inside its own segment of the
/// served edge: 2(L - deltaL) / (n v).
inline double partition_delay(const PatrolParams& p, double v) {
    p.validate();
    if (!(v > 0.0)) throw std::invalid_argument("partition_delay: v > 0");
    return 2.0 * (p.total_edge_length - p.depopulated_length) /
           (p.uav_count * v);
}

/// Revisit time when the UAVs circulate in an evenly spaced convoy: L / (n v).
inline double cyclic_delay(const PatrolParams& p, double v) {
    p.validate();
    if (!(v > 0.0)) throw std::invalid_argument("cyclic_delay: v > 0");
    return p.total_edge_length / (p.uav_count * v);
}

/// Speed that makes the scheme meet the service-delay requirement exactly.
inline double required_speed(Scheme scheme, const PatrolParams& p) {
    p.validate();
    if (scheme == Scheme::Partition) {
        return 2.0 * (p.total_edge_length - p.depopulated_length) /
               (p.uav_count * p.service_delay);
    }
    return p.total_edge_length / (p.uav_count * p.service_delay);
}

/// Total fleet cost c*n + sum of per-UAV power at the required speed.
inline double scheme_cost(Scheme scheme, const PatrolParams& p) {
    p.validate();
    const double v = required_speed(scheme, p);
    return p.equipment_cost * p.uav_count + p.uav_count * p.power(v);
}

struct SchemeComparison {
    Scheme best = Scheme::Cyclic;
    double partition_cost = 0.0;
    double cyclic_cost = 0.0;
};

/// Cheaper of the two single-cell schemes; an exact tie goes to Cyclic.
inline SchemeComparison compare_schemes(const PatrolParams& p) {
    SchemeComparison cmp;
    cmp.partition_cost = scheme_cost(Scheme::Partition, p);
    cmp.cyclic_cost = scheme_cost(Scheme::Cyclic, p);
    cmp.best = cmp.partition_cost < cmp.cyclic_cost ? Scheme::Partition
                                                    : Scheme::Cyclic;
    return cmp;
}

struct CellGraph {
    struct Vertex {
        double x = 0.0;
        double y = 0.0;
    };
    struct Edge {
        std::size_t u = 0;
        std::size_t v = 0;
        double length = 1.0;
    };

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;  // undirected; parallel edges allowed
    std::size_t depot = 0;

    void validate() const {
        if (vertices.empty()) {
            throw std::invalid_argument("CellGraph: no vertices");
        }
        if (depot >= vertices.size()) {
            throw std::invalid_argument("CellGraph: depot out of range");
        }
        for (const auto& e : edges) {
            if (e.u >= vertices.size() || e.v >= vertices.size() ||
                !(e.length > 0.0)) {
                throw std::invalid_argument("CellGraph: bad edge");
            }
        }
    }

    std::size_t degree(std::size_t vertex) const {
        std::size_t d = 0;
        for (const auto& e : edges) {
            if (e.u == vertex) ++d;
            if (e.v == vertex) ++d;
        }
        return d;
    }

    double total_edge_length() const {
        double total = 0.0;
        for (const auto& e : edges) total += e.length;
        return total;
    }

    bool connected() const {
        if (vertices.empty()) return false;
        std::vector<std::vector<std::size_t>> adj(vertices.size());
        for (const auto& e : edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        std::vector<bool> seen(vertices.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }
};

/// One directed traversal of a physical edge inside a walk.
struct TourStep {
    std::size_t edge = 0;
    std::size_t from = 0;
    std::size_t to = 0;
};

/// Closed walk in a CellGraph. cpp_tour outputs cover every edge; k-split
/// routes cover their share of one.
struct Tour {
    std::vector<TourStep> steps;
    double length = 0.0;
};

/// Hexagonal lattice of rows x cols cells with the given side length. Cells in
/// a row share their vertical border edge; adjacent rows are offset half a
/// cell and share slanted edges. Coinciding corners are merged (1e-9 quantum).
inline CellGraph build_cell_graph(int rows, int cols, double side) {
    if (rows < 1 || cols < 1 || !(side > 0.0)) {
        throw std::invalid_argument("build_cell_graph: bad dimensions");
    }
    CellGraph g;
    std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> vertex_ids;
    const auto vertex_at = [&](double x, double y) {
        const auto key = std::make_pair(std::llround(x / 1e-9),
                                        std::llround(y / 1e-9));
        const auto [it, inserted] = vertex_ids.try_emplace(key, g.vertices.size());
        if (inserted) g.vertices.push_back({x, y});
        return it->second;
    };

    const double sq3h = std::sqrt(3.0) / 2.0;
    // Pointy-top hexagon corners, counterclockwise from the lower-right.
    const double offsets[6][2] = {{sq3h, -0.5}, {sq3h, 0.5},   {0.0, 1.0},
                                  {-sq3h, 0.5}, {-sq3h, -0.5}, {0.0, -1.0}};

    std::map<std::pair<std::size_t, std::size_t>, bool> edge_seen;
    for (int row = 0; row < rows; ++row) {
        for (int col = 0; col < cols; ++col) {
            const double cx = std::sqrt(3.0) * side * (col + 0.5 * (row & 1));
            const double cy = 1.5 * side * row;
            std::size_t corner[6];
            for (int k = 0; k < 6; ++k) {
                corner[k] = vertex_at(cx + side * offsets[k][0],
                                      cy + side * offsets[k][1]);
            }
            for (int k = 0; k < 6; ++k) {
                const std::size_t u = corner[k];
                const std::size_t v = corner[(k + 1) % 6];
                const auto key = std::minmax(u, v);
                if (!edge_seen.emplace(key, true).second) continue;
                g.edges.push_back({u, v, side});
            }
        }
    }

    g.depot = 0;
    for (std::size_t i = 1; i < g.vertices.size(); ++i) {
        const auto& a = g.vertices[i];
        const auto& b = g.vertices[g.depot];
        if (a.x < b.x || (a.x == b.x && a.y < b.y)) g.depot = i;
    }
    return g;
}

namespace detail {

struct ShortestPaths {
    std::vector<double> distance;
    std::vector<std::size_t> parent_edge;  // edge used to reach each vertex
};

inline ShortestPaths dijkstra(const CellGraph& g, std::size_t source) {
    const double inf = std::numeric_limits<double>::infinity();
    ShortestPaths sp{std::vector<double>(g.vertices.size(), inf),
                     std::vector<std::size_t>(g.vertices.size(), SIZE_MAX)};
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(
        g.vertices.size());  // (neighbor, edge id)
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        adj[g.edges[e].u].emplace_back(g.edges[e].v, e);
        adj[g.edges[e].v].emplace_back(g.edges[e].u, e);
    }
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    sp.distance[source] = 0.0;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        if (d > sp.distance[v]) continue;
        for (const auto& [w, e] : adj[v]) {
            const double nd = d + g.edges[e].length;
            if (nd < sp.distance[w]) {
                sp.distance[w] = nd;
                sp.parent_edge[w] = e;
                queue.emplace(nd, w);
            }
        }
    }
    return sp;
}

/// Edge ids of the shortest path source -> target, in walk order.
inline std::vector<std::size_t> extract_path(const CellGraph& g,
                                             const ShortestPaths& sp,
                                             std::size_t source,
                                             std::size_t target) {
    std::vector<std::size_t> path;
    std::size_t v = target;
    while (v != source) {
        const std::size_t e = sp.parent_edge[v];
        path.push_back(e);
        v = g.edges[e].u == v ? g.edges[e].v : g.edges[e].u;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

/// Exact minimum-weight perfect matching on pairwise distances, via subset DP.
inline std::vector<std::pair<std::size_t, std::size_t>> min_weight_matching(
    const std::vector<std::vector<double>>& dist) {
    const std::size_t k = dist.size();
    const std::size_t full = (std::size_t{1} << k) - 1;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dp(full + 1, inf);
    std::vector<std::pair<std::size_t, std::size_t>> choice(full + 1);
    dp[0] = 0.0;
    for (std::size_t mask = 1; mask <= full; ++mask) {
        std::size_t i = 0;
        while (!(mask & (std::size_t{1} << i))) ++i;
        for (std::size_t j = i + 1; j < k; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            const std::size_t rest =
                mask ^ (std::size_t{1} << i) ^ (std::size_t{1} << j);
            if (dp[rest] + dist[i][j] < dp[mask]) {
                dp[mask] = dp[rest] + dist[i][j];
                choice[mask] = {i, j};
            }
        }
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t mask = full;
    while (mask) {
        pairs.push_back(choice[mask]);
        mask ^= (std::size_t{1} << choice[mask].first) ^
                (std::size_t{1} << choice[mask].second);
    }
    return pairs;
}

struct Arc {
    std::size_t edge;
    std::size_t u;
    std::size_t v;
};

/// Hierholzer circuit over a connected even-degree multigraph of arcs.
inline std::vector<TourStep> euler_circuit(const CellGraph& g,
                                           const std::vector<Arc>& arcs,
                                           std::size_t start) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(
        g.vertices.size());  // (arc id, other endpoint)
    for (std::size_t a = 0; a < arcs.size(); ++a) {
        adj[arcs[a].u].emplace_back(a, arcs[a].v);
        adj[arcs[a].v].emplace_back(a, arcs[a].u);
    }
    std::vector<std::size_t> next(g.vertices.size(), 0);
    std::vector<bool> used(arcs.size(), false);

    struct Frame {
        std::size_t vertex;
        std::size_t via_arc;  // SIZE_MAX for the start frame
    };
    std::vector<Frame> stack{{start, SIZE_MAX}};
    std::vector<Frame> circuit;
    while (!stack.empty()) {
        const std::size_t v = stack.back().vertex;
        auto& cursor = next[v];
        while (cursor < adj[v].size() && used[adj[v][cursor].first]) ++cursor;
        if (cursor < adj[v].size()) {
            const auto [arc, w] = adj[v][cursor];
            used[arc] = true;
            stack.push_back({w, arc});
        } else {
            circuit.push_back(stack.back());
            stack.pop_back();
        }
    }
    std::reverse(circuit.begin(), circuit.end());

    std::vector<TourStep> steps;
    for (std::size_t i = 1; i < circuit.size(); ++i) {
        steps.push_back({arcs[circuit[i].via_arc].edge, circuit[i - 1].vertex,
                         circuit[i].vertex});
    }
    return steps;
}

}  // namespace detail

/// Shortest closed walk traversing every edge at least once (Chinese Postman):
/// duplicate a minimum matching of odd-degree vertices along shortest paths,
/// then extract an Euler circuit from the depot.
inline Tour cpp_tour(const CellGraph& g) {
    g.validate();
    if (!g.connected()) {
        throw std::invalid_argument("cpp_tour: graph must be connected");
    }

    std::vector<std::size_t> odd;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        if (g.degree(v) % 2 == 1) odd.push_back(v);
    }
    if (odd.size() > 16) {
        throw std::invalid_argument("cpp_tour: more than 16 odd vertices");
    }

    std::vector<detail::Arc> arcs;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        arcs.push_back({e, g.edges[e].u, g.edges[e].v});
    }

    if (!odd.empty()) {
        std::vector<detail::ShortestPaths> sp;
        sp.reserve(odd.size());
        for (std::size_t v : odd) sp.push_back(detail::dijkstra(g, v));
        std::vector<std::vector<double>> dist(odd.size(),
                                              std::vector<double>(odd.size()));
        for (std::size_t i = 0; i < odd.size(); ++i) {
            for (std::size_t j = 0; j < odd.size(); ++j) {
                dist[i][j] = sp[i].distance[odd[j]];
            }
        }
        for (const auto& [i, j] : detail::min_weight_matching(dist)) {
            for (std::size_t e : detail::extract_path(g, sp[i], odd[i], odd[j])) {
                arcs.push_back({e, g.edges[e].u, g.edges[e].v});
            }
        }
    }

    Tour tour;
    tour.steps = detail::euler_circuit(g, arcs, g.depot);
    for (const auto& s : tour.steps) tour.length += g.edges[s.edge].length;
    return tour;
}

/// Multi-cell patrol cost when n UAVs share a closed tour: the convoy speed
/// must be tour.length / (n D), so the cost is c*n + n*g(that speed).
inline double multicell_cost(const Tour& tour, const PatrolParams& p) {
    p.validate();
    const double v = tour.length / (p.uav_count * p.service_delay);
    return p.equipment_cost * p.uav_count + p.uav_count * p.power(v);
}

struct SplitTours {
    std::vector<Tour> routes;
    double max_route_length = 0.0;
};

/// Cuts a closed tour at the walk vertices nearest to the fractions j/k of its
/// arc length and closes every piece through the depot with shortest paths.
/// The segments jointly traverse exactly the tour's edge multiset.
inline SplitTours split_k_tours(const Tour& tour, const CellGraph& g, int k) {
    g.validate();
    const std::size_t m = tour.steps.size();
    if (k < 1 || static_cast<std::size_t>(k) > m) {
        throw std::invalid_argument("split_k_tours: need 1 <= k <= edge count");
    }

    SplitTours result;
    if (k == 1) {
        result.routes.push_back(tour);
        result.max_route_length = tour.length;
        return result;
    }

    std::vector<double> arc(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        arc[i + 1] = arc[i] + g.edges[tour.steps[i].edge].length;
    }

    // Splitting walk positions, strictly increasing, nearest to j*length/k.
    std::vector<std::size_t> cuts{0};
    for (int j = 1; j < k; ++j) {
        const double target = tour.length * j / k;
        const std::size_t lo = cuts.back() + 1;
        const std::size_t hi = m - (k - 1 - j) - 1;
        std::size_t best = lo;
        for (std::size_t p = lo; p <= hi; ++p) {
            if (std::abs(arc[p] - target) < std::abs(arc[best] - target)) best = p;
        }
        cuts.push_back(best);
    }
    cuts.push_back(m);

    const detail::ShortestPaths from_depot = detail::dijkstra(g, tour.steps[0].from);
    const std::size_t depot = tour.steps[0].from;
    const auto closure = [&](std::size_t vertex, bool to_depot) {
        std::vector<TourStep> steps;
        std::vector<std::size_t> edges =
            detail::extract_path(g, from_depot, depot, vertex);
        std::size_t at = depot;
        for (std::size_t e : edges) {
            const std::size_t other =
                g.edges[e].u == at ? g.edges[e].v : g.edges[e].u;
            steps.push_back({e, at, other});
            at = other;
        }
        if (to_depot) {
            std::reverse(steps.begin(), steps.end());
            for (auto& s : steps) std::swap(s.from, s.to);
        }
        return steps;
    };

    for (int j = 0; j < k; ++j) {
        Tour route;
        const std::size_t begin = cuts[j];
        const std::size_t end = cuts[j + 1];
        for (const auto& s : closure(tour.steps[begin].from, false)) {
            route.steps.push_back(s);
        }
        for (std::size_t i = begin; i < end; ++i) {
            route.steps.push_back(tour.steps[i]);
        }
        for (const auto& s : closure(tour.steps[end - 1].to, true)) {
            route.steps.push_back(s);
        }
        for (const auto& s : route.steps) route.length += g.edges[s.edge].length;
        result.max_route_length = std::max(result.max_route_length, route.length);
        result.routes.push_back(std::move(route));
    }
    return result;
}

}  // namespace uavecon
