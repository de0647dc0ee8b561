#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "phkm/assignment.hpp"
#include "phkm/measure.hpp"
#include "phkm/persistence.hpp"
#include "phkm/transport.hpp"

namespace phkm {

/// Index value marking the diagonal in a transport plan pair.
inline constexpr std::ptrdiff_t kDiagonal = -1;

/// One pairing of an optimal plan: source/target are indices into the
/// respective point or atom lists, kDiagonal for the diagonal.
struct PlanPair {
    std::ptrdiff_t source = kDiagonal;
    std::ptrdiff_t target = kDiagonal;
    double mass = 0.0;
};

struct TransportPlan {
    double p = 2.0;
    double q = 2.0;
    double cost = 0.0;  ///< distance value, i.e. (sum of mass-weighted costs)^(1/p)
    std::vector<PlanPair> pairs;
};

namespace detail {

inline void check_pq(double p, double q) {
    if (!(p >= 1.0) || std::isinf(p) || std::isnan(p))
        throw std::invalid_argument("metric order p must be finite and >= 1");
    if (!(q >= 1.0) || std::isnan(q))
        throw std::invalid_argument("ground norm q must be >= 1 (may be infinite)");
}

inline double q_norm_distance(double ab, double ad, double bb, double bd, double q) {
    const double dx = std::abs(ab - bb);
    const double dy = std::abs(ad - bd);
    if (std::isinf(q)) return std::max(dx, dy);
    if (q == 1.0) return dx + dy;
    if (q == 2.0) return std::sqrt(dx * dx + dy * dy);
    return std::pow(std::pow(dx, q) + std::pow(dy, q), 1.0 / q);
}

/// q-norm distance from (birth, death) to its nearest diagonal point, the
/// midpoint projection: (death - birth) * 2^(1/q - 1).
inline double diagonal_gap(double birth, double death, double q) {
    const double pers = death - birth;
    if (std::isinf(q)) return 0.5 * pers;
    return pers * std::pow(2.0, 1.0 / q - 1.0);
}

inline double power_p(double x, double p) {
    if (p == 1.0) return x;
    if (p == 2.0) return x * x;
    return std::pow(x, p);
}

/// Strict weak order on diagrams (size, then lexicographic point values) used
/// to pick a canonical argument orientation, so the distance is exactly
/// symmetric instead of symmetric up to summation order.
inline bool diagram_precedes(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    if (a.points.size() != b.points.size()) return a.points.size() < b.points.size();
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        if (a.points[i].birth != b.points[i].birth) return a.points[i].birth < b.points[i].birth;
        if (a.points[i].death != b.points[i].death) return a.points[i].death < b.points[i].death;
    }
    return false;
}

}  // namespace detail

/// Optimal partial-matching plan realising the p-Wasserstein distance with
/// ground norm q between two diagrams.  Every point is matched, counting
/// multiplicity, either to a point of the other diagram or to the diagonal.
inline TransportPlan wasserstein_plan(const PersistenceDiagram& a, const PersistenceDiagram& b,
                                      double p = 2.0, double q = 2.0) {
    detail::check_pq(p, q);
    if (a.dimension != b.dimension)
        throw std::invalid_argument("wasserstein: homological dimensions differ");
    if (detail::diagram_precedes(b, a)) {
        TransportPlan plan = wasserstein_plan(b, a, p, q);
        for (PlanPair& pair : plan.pairs) std::swap(pair.source, pair.target);
        return plan;
    }

    const std::size_t n1 = a.points.size();
    const std::size_t n2 = b.points.size();
    TransportPlan plan;
    plan.p = p;
    plan.q = q;
    if (n1 == 0 && n2 == 0) return plan;

    const std::size_t n = n1 + n2;
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n1; ++i) {
        const DiagramPoint& pa = a.points[i];
        for (std::size_t j = 0; j < n2; ++j) {
            const DiagramPoint& pb = b.points[j];
            cost[i][j] = detail::power_p(
                detail::q_norm_distance(pa.birth, pa.death, pb.birth, pb.death, q), p);
        }
        const double gap = detail::power_p(detail::diagonal_gap(pa.birth, pa.death, q), p);
        for (std::size_t j = n2; j < n; ++j) cost[i][j] = gap;
    }
    for (std::size_t j = 0; j < n2; ++j) {
        const DiagramPoint& pb = b.points[j];
        const double gap = detail::power_p(detail::diagonal_gap(pb.birth, pb.death, q), p);
        for (std::size_t i = n1; i < n; ++i) cost[i][j] = gap;
    }

    const AssignmentResult assignment = solve_assignment(cost);
    // Reprice in a canonical order (a-points ascending, then unmatched
    // b-points ascending) so the value does not depend on which interchangeable
    // dummy row picked up which diagonal match.
    std::vector<std::size_t> col_to_row(n, n);
    for (std::size_t i = 0; i < n; ++i) col_to_row[assignment.row_to_col[i]] = i;
    double total = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
        const std::size_t j = assignment.row_to_col[i];
        PlanPair pair;
        pair.source = static_cast<std::ptrdiff_t>(i);
        pair.target = j < n2 ? static_cast<std::ptrdiff_t>(j) : kDiagonal;
        pair.mass = 1.0;
        plan.pairs.push_back(pair);
        total += cost[i][j];
    }
    for (std::size_t j = 0; j < n2; ++j) {
        if (col_to_row[j] < n1) continue;  // matched to a real point above
        plan.pairs.push_back({kDiagonal, static_cast<std::ptrdiff_t>(j), 1.0});
        total += cost[col_to_row[j]][j];
    }
    plan.cost = std::pow(total, 1.0 / p);
    return plan;
}

/// p-Wasserstein distance with ground norm q between persistence diagrams.
inline double wasserstein(const PersistenceDiagram& a, const PersistenceDiagram& b,
                          double p = 2.0, double q = 2.0) {
    return wasserstein_plan(a, b, p, q).cost;
}

/// Optimal-transport plan between persistence measures under the diagonal-
/// augmented formulation: each side gains a diagonal sink absorbing the other
/// side's total mass, making the problem balanced.
inline TransportPlan ot_plan(const PersistenceMeasure& a, const PersistenceMeasure& b,
                             double p = 2.0, double q = 2.0) {
    detail::check_pq(p, q);
    if (a.dimension != b.dimension)
        throw std::invalid_argument("ot_distance: homological dimensions differ");

    const std::size_t m = a.atoms.size();
    const std::size_t n = b.atoms.size();
    TransportPlan plan;
    plan.p = p;
    plan.q = q;
    if (m == 0 && n == 0) return plan;

    const double mass_a = a.total_mass();
    const double mass_b = b.total_mass();

    std::vector<double> supply(m + 1, 0.0);
    std::vector<double> demand(n + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) supply[i] = a.atoms[i].mass;
    supply[m] = mass_b;
    for (std::size_t j = 0; j < n; ++j) demand[j] = b.atoms[j].mass;
    demand[n] = mass_a;

    std::vector<std::vector<double>> cost(m + 1, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        const MeasureAtom& pa = a.atoms[i];
        for (std::size_t j = 0; j < n; ++j) {
            const MeasureAtom& pb = b.atoms[j];
            cost[i][j] = detail::power_p(
                detail::q_norm_distance(pa.birth, pa.death, pb.birth, pb.death, q), p);
        }
        cost[i][n] = detail::power_p(detail::diagonal_gap(pa.birth, pa.death, q), p);
    }
    for (std::size_t j = 0; j < n; ++j)
        cost[m][j] = detail::power_p(detail::diagonal_gap(b.atoms[j].birth, b.atoms[j].death, q), p);
    cost[m][n] = 0.0;

    const TransportResult flow = solve_transport(supply, demand, cost);
    for (const FlowArc& arc : flow.arcs) {
        if (arc.from == m && arc.to == n) continue;
        PlanPair pair;
        pair.source = arc.from < m ? static_cast<std::ptrdiff_t>(arc.from) : kDiagonal;
        pair.target = arc.to < n ? static_cast<std::ptrdiff_t>(arc.to) : kDiagonal;
        pair.mass = arc.amount;
        plan.pairs.push_back(pair);
    }
    plan.cost = std::pow(flow.cost, 1.0 / p);
    return plan;
}

/// Optimal-transport distance OT_p (ground norm q) between persistence
/// measures.  Coincides with the p-Wasserstein diagram distance on measures
/// obtained from diagrams.
inline double ot_distance(const PersistenceMeasure& a, const PersistenceMeasure& b,
                          double p = 2.0, double q = 2.0) {
    return ot_plan(a, b, p, q).cost;
}

}  // namespace phkm
