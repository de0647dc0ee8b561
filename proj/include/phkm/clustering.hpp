#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "phkm/means.hpp"
#include "phkm/measure.hpp"
#include "phkm/metrics.hpp"
#include "phkm/persistence.hpp"
#include "phkm/random.hpp"

namespace phkm {

/// Representation space of persistence diagrams under the 2-Wasserstein
/// metric, with Frechet means as centroids.
struct DiagramSpace {
    using Point = PersistenceDiagram;
    FrechetOptions mean_options;

    double squared_distance(const Point& a, const Point& b) const {
        const double w = wasserstein(a, b, 2.0, 2.0);
        return w * w;
    }

    /// Cluster mean, warm-started from the current centroid so that the
    /// update step never increases the within-cluster cost.
    Point mean(const std::vector<Point>& members, const Point* warm) const {
        if (warm != nullptr) return frechet_mean_from(*warm, members, mean_options).mean;
        return frechet_mean(members, mean_options).mean;
    }

    Point perturb(const Point& centroid, double scale, Rng& rng) const {
        Point out = centroid;
        double spread = 0.0;
        for (const auto& p : out.points) spread = std::max(spread, p.death - p.birth);
        if (spread <= 0.0) spread = 1.0;
        const double s = scale * spread;
        for (auto& p : out.points) {
            p.birth += rng.normal(0.0, s);
            p.death += rng.normal(0.0, s);
        }
        out.normalize();
        return out;
    }
};

/// Representation space of persistence measures under the OT_2 metric, with
/// arithmetic means as centroids.
struct MeasureSpace {
    using Point = PersistenceMeasure;

    double squared_distance(const Point& a, const Point& b) const {
        const double d = ot_distance(a, b, 2.0, 2.0);
        return d * d;
    }

    Point mean(const std::vector<Point>& members, const Point* /*warm*/) const {
        return mean_measure(members);
    }

    Point perturb(const Point& centroid, double scale, Rng& rng) const {
        Point out = centroid;
        double spread = 0.0;
        for (const auto& a : out.atoms) spread = std::max(spread, a.death - a.birth);
        if (spread <= 0.0) spread = 1.0;
        const double s = scale * spread;
        for (auto& a : out.atoms) {
            a.birth += rng.normal(0.0, s);
            a.death += rng.normal(0.0, s);
            a.mass *= std::max(0.0, 1.0 + rng.normal(0.0, scale));
        }
        out.normalize();
        return out;
    }
};

/// Euclidean space of fixed-length embedding vectors.
struct VectorSpace {
    using Point = std::vector<double>;

    double squared_distance(const Point& a, const Point& b) const {
        if (a.size() != b.size())
            throw std::invalid_argument("VectorSpace: dimension mismatch");
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
        return s;
    }

    Point mean(const std::vector<Point>& members, const Point* /*warm*/) const {
        if (members.empty()) throw std::invalid_argument("VectorSpace: empty cluster");
        Point out(members.front().size(), 0.0);
        for (const auto& m : members) {
            if (m.size() != out.size())
                throw std::invalid_argument("VectorSpace: dimension mismatch");
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += m[i];
        }
        const double inv = 1.0 / static_cast<double>(members.size());
        for (double& x : out) x *= inv;
        return out;
    }

    Point perturb(const Point& centroid, double scale, Rng& rng) const {
        Point out = centroid;
        double spread = 0.0;
        for (double x : out) spread = std::max(spread, std::abs(x));
        if (spread <= 0.0) spread = 1.0;
        for (double& x : out) x += rng.normal(0.0, scale * spread);
        return out;
    }
};

struct KMeansOptions {
    std::size_t k = 2;
    std::uint64_t seed = 0;
    int max_iter = 50;
};

template <class Space>
struct KMeansResult {
    using Point = typename Space::Point;

    std::vector<std::size_t> labels;
    std::vector<Point> centroids;
    double cost = 0.0;                ///< final within-cluster sum of squared distances
    std::vector<double> cost_trace;   ///< cost after each update step (non-increasing)
    /// (cost after assignment, cost after centroid update) for every iteration
    std::vector<std::pair<double, double>> step_trace;
    int iterations = 0;
    bool converged = false;
    int repairs = 0;       ///< empty-cluster reseed events
    int guard_events = 0;  ///< centroid updates rejected for not improving the cost
    std::uint64_t seed = 0;
};

namespace detail {

/// k-means++ seeding: the first centre is uniform, later centres are data
/// points drawn with probability proportional to the squared distance to the
/// nearest centre chosen so far.
template <class Space>
std::vector<std::size_t> kmeanspp_indices(const Space& space,
                                          const std::vector<typename Space::Point>& data,
                                          std::size_t k, Rng& rng) {
    const std::size_t n = data.size();
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    chosen.push_back(static_cast<std::size_t>(rng.integer(n)));

    std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
    std::vector<char> is_chosen(n, 0);
    is_chosen[chosen[0]] = 1;
    while (chosen.size() < k) {
        const std::size_t latest = chosen.back();
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            min_d2[j] = std::min(min_d2[j], space.squared_distance(data[j], data[latest]));
            total += min_d2[j];
        }
        std::size_t next;
        if (total > 0.0) {
            next = rng.weighted_index(min_d2);
        } else {
            next = 0;
            while (next < n && is_chosen[next]) ++next;
            if (next == n) next = rng.integer(n);
        }
        chosen.push_back(next);
        is_chosen[next] = 1;
    }
    return chosen;
}

}  // namespace detail

/// Lloyd-style alternating k-means in a general metric space with means.
///
/// Assignment breaks ties towards the lowest cluster index and the loop stops
/// as soon as an assignment pass leaves the labels unchanged.  Centroid
/// updates are guarded: a new mean is only accepted if it does not increase
/// the within-cluster cost, so the cost trace is non-increasing.  Empty
/// clusters are repaired by reseeding them with the data point farthest from
/// its current centroid.
template <class Space>
KMeansResult<Space> kmeans(const Space& space, const std::vector<typename Space::Point>& data,
                           const KMeansOptions& options) {
    using Point = typename Space::Point;
    const std::size_t n = data.size();
    if (n == 0) throw std::invalid_argument("kmeans: no data");
    if (options.k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
    if (options.k > n) throw std::invalid_argument("kmeans: k exceeds number of points");
    if (options.max_iter < 1) throw std::invalid_argument("kmeans: max_iter must be >= 1");

    const std::size_t k = options.k;
    Rng rng(options.seed);

    KMeansResult<Space> result;
    result.seed = options.seed;
    result.labels.assign(n, 0);

    std::vector<std::size_t> seeds = detail::kmeanspp_indices(space, data, k, rng);
    result.centroids.clear();
    result.centroids.reserve(k);
    for (std::size_t i : seeds) result.centroids.push_back(data[i]);

    std::vector<std::size_t> prev_labels;
    std::vector<double> assign_d2(n, 0.0);

    for (int it = 0; it < options.max_iter; ++it) {
        // Assignment step.
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t best = 0;
            double best_d2 = space.squared_distance(data[j], result.centroids[0]);
            for (std::size_t i = 1; i < k; ++i) {
                const double d2 = space.squared_distance(data[j], result.centroids[i]);
                if (d2 < best_d2) {
                    best_d2 = d2;
                    best = i;
                }
            }
            result.labels[j] = best;
            assign_d2[j] = best_d2;
        }

        if (!prev_labels.empty() && prev_labels == result.labels) {
            result.converged = true;
            break;
        }
        prev_labels = result.labels;
        ++result.iterations;

        // Repair empty clusters with the globally farthest point.
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t j = 0; j < n; ++j) ++counts[result.labels[j]];
        for (std::size_t i = 0; i < k; ++i) {
            if (counts[i] > 0) continue;
            std::size_t far = n;
            double far_d2 = 0.0;  // only steal points at positive distance, else
                                  // duplicate-heavy data makes repair ping-pong
            for (std::size_t j = 0; j < n; ++j) {
                if (counts[result.labels[j]] <= 1) continue;  // do not empty another cluster
                if (assign_d2[j] > far_d2) {
                    far_d2 = assign_d2[j];
                    far = j;
                }
            }
            if (far == n) continue;  // nothing movable (k == n or duplicates)
            --counts[result.labels[far]];
            result.labels[far] = i;
            counts[i] = 1;
            result.centroids[i] = data[far];
            assign_d2[far] = 0.0;
            ++result.repairs;
            prev_labels.clear();  // force another pass
        }

        double cost_assign = 0.0;
        for (std::size_t j = 0; j < n; ++j) cost_assign += assign_d2[j];

        // Update step, one guarded mean per cluster.
        double cost_update = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<Point> members;
            std::vector<std::size_t> member_idx;
            for (std::size_t j = 0; j < n; ++j)
                if (result.labels[j] == i) {
                    members.push_back(data[j]);
                    member_idx.push_back(j);
                }
            if (members.empty()) continue;

            double cost_old = 0.0;
            for (std::size_t j : member_idx) cost_old += assign_d2[j];

            Point candidate = space.mean(members, &result.centroids[i]);
            double cost_new = 0.0;
            for (const Point& mpt : members)
                cost_new += space.squared_distance(mpt, candidate);

            if (cost_new <= cost_old) {
                result.centroids[i] = std::move(candidate);
                cost_update += cost_new;
            } else {
                ++result.guard_events;
                cost_update += cost_old;
            }
        }

        result.cost_trace.push_back(cost_update);
        result.step_trace.emplace_back(cost_assign, cost_update);
        result.cost = cost_update;
    }

    if (result.cost_trace.empty()) {
        // k >= 1 and max_iter >= 1 guarantee at least one pass, but guard anyway.
        double c = 0.0;
        for (std::size_t j = 0; j < n; ++j) c += assign_d2[j];
        result.cost = c;
    }
    return result;
}

/// Best of several independent k-means runs (lowest final cost wins; ties go
/// to the earliest restart).  Restart r uses seed mix_seed(options.seed, r).
template <class Space>
KMeansResult<Space> kmeans_restarts(const Space& space,
                                    const std::vector<typename Space::Point>& data,
                                    const KMeansOptions& options, int restarts,
                                    std::vector<double>* restart_costs = nullptr) {
    if (restarts < 1) throw std::invalid_argument("kmeans_restarts: restarts must be >= 1");
    KMeansResult<Space> best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        KMeansOptions run = options;
        run.seed = mix_seed(options.seed, static_cast<std::uint64_t>(r));
        KMeansResult<Space> candidate = kmeans(space, data, run);
        if (restart_costs != nullptr) restart_costs->push_back(candidate.cost);
        if (candidate.cost < best_cost) {
            best_cost = candidate.cost;
            best = std::move(candidate);
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Partial optimality (KKT) verification, following the classical treatment of
// k-means as a constrained programme over assignment weights.
// ---------------------------------------------------------------------------

struct KKTClusterCheck {
    std::size_t cluster = 0;
    std::size_t members = 0;
    double rerun_improvement = 0.0;          ///< cost drop from re-running the mean
    double best_perturbation_improvement = 0.0;  ///< best cost drop over random probes
};

struct KKTReport {
    bool assignment_optimal = false;
    bool centroid_optimal = false;
    double max_assignment_violation = 0.0;
    double max_centroid_improvement = 0.0;
    std::vector<double> multipliers;  ///< one per data point: -min_i dist^2(x_j, z_i)
    std::vector<KKTClusterCheck> clusters;

    bool partial_optimal() const { return assignment_optimal && centroid_optimal; }
};

struct PerturbationBudget {
    int count = 16;
    double relative_scale = 0.05;
    std::uint64_t seed = 0;
    double tol = 1e-7;
};

/// Checks the two halves of partial optimality at a clustering state:
/// (i) every point is assigned to a closest centroid, and (ii) no centroid
/// can be improved, probed by re-running the cluster mean and by random
/// perturbations.
template <class Space>
KKTReport verify_partial_optimality(const Space& space,
                                    const std::vector<typename Space::Point>& data,
                                    const std::vector<std::size_t>& labels,
                                    const std::vector<typename Space::Point>& centroids,
                                    const PerturbationBudget& budget = {}) {
    using Point = typename Space::Point;
    const std::size_t n = data.size();
    const std::size_t k = centroids.size();
    if (labels.size() != n) throw std::invalid_argument("verify_partial_optimality: label size");
    if (k == 0) throw std::invalid_argument("verify_partial_optimality: no centroids");
    for (std::size_t j = 0; j < n; ++j)
        if (labels[j] >= k) throw std::invalid_argument("verify_partial_optimality: bad label");
    if (budget.count < 0 || !(budget.relative_scale >= 0.0) || !(budget.tol >= 0.0))
        throw std::invalid_argument("verify_partial_optimality: bad budget");

    KKTReport report;
    report.multipliers.assign(n, 0.0);

    // Condition (i): assignment stability.
    std::vector<std::vector<double>> d2(k, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d2[i][j] = space.squared_distance(data[j], centroids[i]);
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double mind = d2[0][j];
        for (std::size_t i = 1; i < k; ++i) mind = std::min(mind, d2[i][j]);
        report.multipliers[j] = -mind;
        worst = std::max(worst, d2[labels[j]][j] - mind);
    }
    report.max_assignment_violation = worst;
    report.assignment_optimal = worst <= budget.tol;

    // Condition (ii): centroid stability under re-running the mean and under
    // random perturbation probes.
    Rng rng(budget.seed);
    double max_improvement = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Point> members;
        for (std::size_t j = 0; j < n; ++j)
            if (labels[j] == i) members.push_back(data[j]);

        KKTClusterCheck check;
        check.cluster = i;
        check.members = members.size();
        if (!members.empty()) {
            double cost_now = 0.0;
            for (const Point& mpt : members)
                cost_now += space.squared_distance(mpt, centroids[i]);

            const Point rerun = space.mean(members, &centroids[i]);
            double cost_rerun = 0.0;
            for (const Point& mpt : members)
                cost_rerun += space.squared_distance(mpt, rerun);
            check.rerun_improvement = cost_now - cost_rerun;

            for (int t = 0; t < budget.count; ++t) {
                const Point probe = space.perturb(centroids[i], budget.relative_scale, rng);
                double cost_probe = 0.0;
                for (const Point& mpt : members)
                    cost_probe += space.squared_distance(mpt, probe);
                check.best_perturbation_improvement =
                    std::max(check.best_perturbation_improvement, cost_now - cost_probe);
            }
        }
        max_improvement = std::max(
            max_improvement,
            std::max(check.rerun_improvement, check.best_perturbation_improvement));
        report.clusters.push_back(check);
    }
    report.max_centroid_improvement = max_improvement;
    report.centroid_optimal = max_improvement <= budget.tol;
    return report;
}

/// Directional derivative of the k-means objective in the assignment
/// variables: for F(W) = sum_ij w_ij dist^2(x_j, z_i) the derivative along a
/// feasible direction v is sum_ij v_ij dist^2(x_j, z_i).  Feasibility at an
/// assignment w requires column sums of v to vanish and v_ij >= 0 wherever
/// w_ij == 0; infeasible directions are rejected.
template <class Space>
double directional_derivative(const Space& space,
                              const std::vector<typename Space::Point>& data,
                              const std::vector<typename Space::Point>& centroids,
                              const std::vector<std::vector<double>>& omega,
                              const std::vector<std::vector<double>>& direction) {
    const std::size_t k = centroids.size();
    const std::size_t n = data.size();
    if (omega.size() != k || direction.size() != k)
        throw std::invalid_argument("directional_derivative: row count mismatch");
    for (std::size_t i = 0; i < k; ++i)
        if (omega[i].size() != n || direction[i].size() != n)
            throw std::invalid_argument("directional_derivative: column count mismatch");

    constexpr double feas_tol = 1e-12;
    for (std::size_t j = 0; j < n; ++j) {
        double colsum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            colsum += direction[i][j];
            if (omega[i][j] == 0.0 && direction[i][j] < -feas_tol)
                throw std::invalid_argument(
                    "directional_derivative: direction leaves the feasible cone");
        }
        if (std::abs(colsum) > feas_tol)
            throw std::invalid_argument("directional_derivative: column sums must vanish");
    }

    double value = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (direction[i][j] != 0.0)
                value += direction[i][j] * space.squared_distance(data[j], centroids[i]);
    return value;
}

}  // namespace phkm
