#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace phkm {

struct FlowArc {
    std::size_t from = 0;  ///< supply index
    std::size_t to = 0;    ///< demand index
    double amount = 0.0;
};

struct TransportResult {
    double cost = 0.0;
    std::vector<FlowArc> arcs;
};

/// Exact solver for the balanced transportation problem on a dense bipartite
/// cost matrix, via successive shortest augmenting paths with node potentials
/// (Dijkstra on reduced costs).  Costs must be non-negative and the total
/// supply must equal the total demand.
inline TransportResult solve_transport(const std::vector<double>& supply,
                                       const std::vector<double>& demand,
                                       const std::vector<std::vector<double>>& cost) {
    const std::size_t m = supply.size();
    const std::size_t n = demand.size();
    if (cost.size() != m) throw std::invalid_argument("solve_transport: cost rows != supplies");
    for (const auto& row : cost)
        if (row.size() != n) throw std::invalid_argument("solve_transport: cost cols != demands");

    double total_supply = 0.0, total_demand = 0.0;
    for (double s : supply) {
        if (!(s >= 0.0)) throw std::invalid_argument("solve_transport: negative supply");
        total_supply += s;
    }
    for (double d : demand) {
        if (!(d >= 0.0)) throw std::invalid_argument("solve_transport: negative demand");
        total_demand += d;
    }
    for (const auto& row : cost)
        for (double c : row)
            if (!(c >= 0.0) || !std::isfinite(c))
                throw std::invalid_argument("solve_transport: costs must be finite and >= 0");
    const double scale = std::max({1.0, total_supply, total_demand});
    if (std::abs(total_supply - total_demand) > 1e-9 * scale)
        throw std::invalid_argument("solve_transport: supply and demand are not balanced");

    TransportResult result;
    if (m == 0 || n == 0 || total_supply <= 0.0) return result;

    const double inf = std::numeric_limits<double>::infinity();
    const std::size_t V = m + n;  // nodes: sources 0..m-1, sinks m..m+n-1

    std::vector<double> rem_supply = supply;
    std::vector<double> rem_demand = demand;
    std::vector<std::vector<double>> flow(m, std::vector<double>(n, 0.0));
    std::vector<double> pi(V, 0.0);
    std::vector<double> dist(V);
    std::vector<std::size_t> parent(V);
    std::vector<char> done(V);

    // Repeated subtraction leaves ulp-sized residues in rem_supply/rem_demand,
    // so termination must tolerate the same slack the balance check accepts.
    const double flow_tol = 1e-9 * scale;
    const auto remaining = [&rem_supply]() {
        double total = 0.0;
        for (double s : rem_supply) total += s;
        return total;
    };

    const std::size_t max_rounds = 64 * (V + 2) + 1024;
    std::size_t rounds = 0;
    while (remaining() > flow_tol) {
        if (++rounds > max_rounds)
            throw std::runtime_error("solve_transport: augmentation did not converge");

        // Dijkstra from all sources with remaining supply, on reduced costs.
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(done.begin(), done.end(), 0);
        for (std::size_t i = 0; i < m; ++i)
            if (rem_supply[i] > 0.0) {
                dist[i] = 0.0;
                parent[i] = i;
            }
        for (;;) {
            std::size_t u = V;
            double best = inf;
            for (std::size_t v = 0; v < V; ++v)
                if (!done[v] && dist[v] < best) {
                    best = dist[v];
                    u = v;
                }
            if (u == V) break;
            done[u] = 1;
            if (u < m) {
                for (std::size_t j = 0; j < n; ++j) {
                    const std::size_t v = m + j;
                    if (done[v]) continue;
                    double rc = cost[u][j] + pi[u] - pi[v];
                    if (rc < 0.0) rc = 0.0;
                    if (dist[u] + rc < dist[v]) {
                        dist[v] = dist[u] + rc;
                        parent[v] = u;
                    }
                }
            } else {
                const std::size_t j = u - m;
                for (std::size_t i = 0; i < m; ++i) {
                    if (done[i] || flow[i][j] <= 0.0) continue;
                    double rc = -cost[i][j] + pi[u] - pi[i];
                    if (rc < 0.0) rc = 0.0;
                    if (dist[u] + rc < dist[i]) {
                        dist[i] = dist[u] + rc;
                        parent[i] = u;
                    }
                }
            }
        }

        // Cheapest reachable sink with unmet demand.
        std::size_t sink = V;
        double best = inf;
        for (std::size_t j = 0; j < n; ++j)
            if (rem_demand[j] > 0.0 && dist[m + j] < best) {
                best = dist[m + j];
                sink = m + j;
            }
        if (sink == V) break;  // demand exhausted; leftover supply is rounding slack

        // Bottleneck along the path back to its source.
        double delta = rem_demand[sink - m];
        for (std::size_t v = sink; v >= m || parent[v] != v;) {
            const std::size_t p = parent[v];
            if (v >= m) {  // forward arc p -> v
                // no capacity bound
            } else {  // backward arc: undoing flow[v_row][p_col]
                delta = std::min(delta, flow[v][p - m]);
            }
            v = p;
            if (v < m && parent[v] == v) {
                delta = std::min(delta, rem_supply[v]);
                break;
            }
        }

        // Apply the augmentation.
        for (std::size_t v = sink; v >= m || parent[v] != v;) {
            const std::size_t p = parent[v];
            if (v >= m)
                flow[p][v - m] += delta;
            else
                flow[v][p - m] -= delta;
            v = p;
            if (v < m && parent[v] == v) {
                rem_supply[v] -= delta;
                break;
            }
        }
        rem_demand[sink - m] -= delta;

        // Johnson potential update keeps reduced costs non-negative.
        const double d_sink = dist[sink];
        for (std::size_t v = 0; v < V; ++v) pi[v] += std::min(dist[v], d_sink);
    }

    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (flow[i][j] > 0.0) {
                result.arcs.push_back({i, j, flow[i][j]});
                result.cost += cost[i][j] * flow[i][j];
            }
    return result;
}

}  // namespace phkm
