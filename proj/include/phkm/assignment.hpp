#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace phkm {

struct AssignmentResult {
    std::vector<std::size_t> row_to_col;  ///< row i is matched to column row_to_col[i]
    double cost = 0.0;
};

/// Minimum-cost perfect matching of a square cost matrix (Hungarian algorithm
/// with potentials, O(n^3)).  Deterministic: ties are resolved by scan order.
inline AssignmentResult solve_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    if (n == 0) return {};
    for (const auto& row : cost) {
        if (row.size() != n) throw std::invalid_argument("solve_assignment: matrix not square");
        for (double c : row)
            if (!std::isfinite(c)) throw std::invalid_argument("solve_assignment: non-finite cost");
    }

    const double inf = std::numeric_limits<double>::infinity();
    // 1-indexed with a dummy slot 0, as in the classic potentials formulation.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0);  // match[j]: row currently assigned to column j
    std::vector<std::size_t> way(n + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::vector<double> min_slack(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < min_slack[j]) {
                    min_slack[j] = cur;
                    way[j] = j0;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    AssignmentResult result;
    result.row_to_col.assign(n, 0);
    for (std::size_t j = 1; j <= n; ++j) result.row_to_col[match[j] - 1] = j - 1;
    for (std::size_t i = 0; i < n; ++i) result.cost += cost[i][result.row_to_col[i]];
    return result;
}

}  // namespace phkm
