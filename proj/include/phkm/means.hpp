#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "phkm/metrics.hpp"
#include "phkm/persistence.hpp"

namespace phkm {

/// Sum of squared 2-Wasserstein distances from a candidate diagram to a
/// family of diagrams (the Frechet functional being minimised).
inline double frechet_function(const PersistenceDiagram& candidate,
                               const std::vector<PersistenceDiagram>& diagrams) {
    double total = 0.0;
    for (const auto& d : diagrams) {
        const double w = wasserstein(candidate, d, 2.0, 2.0);
        total += w * w;
    }
    return total;
}

struct FrechetOptions {
    double tol = 1e-9;  ///< stop when one iteration improves F by no more than this
    int max_iter = 100;
};

struct FrechetResult {
    PersistenceDiagram mean;
    double value = 0.0;          ///< final value of the Frechet functional
    std::vector<double> trace;   ///< F at the start and after every iteration
    int iterations = 0;
    bool converged = false;
};

/// One alternating step: re-match the candidate against every diagram, then
/// move each candidate point to the weighted combination of its matched
/// partners, where a diagonal partner contributes the projection of the old
/// candidate point.  This never increases the Frechet functional.
namespace detail {

inline PersistenceDiagram frechet_update(const PersistenceDiagram& candidate,
                                         const std::vector<PersistenceDiagram>& diagrams) {
    const std::size_t nc = candidate.points.size();
    std::vector<double> sum_birth(nc, 0.0), sum_death(nc, 0.0);

    for (const auto& d : diagrams) {
        const TransportPlan plan = wasserstein_plan(candidate, d, 2.0, 2.0);
        for (const PlanPair& pair : plan.pairs) {
            if (pair.source == kDiagonal) continue;  // input point sent to the diagonal
            const std::size_t c = static_cast<std::size_t>(pair.source);
            if (pair.target == kDiagonal) {
                const DiagramPoint& y = candidate.points[c];
                const double mid = 0.5 * (y.birth + y.death);
                sum_birth[c] += mid;
                sum_death[c] += mid;
            } else {
                const DiagramPoint& x = d.points[static_cast<std::size_t>(pair.target)];
                sum_birth[c] += x.birth;
                sum_death[c] += x.death;
            }
        }
    }

    PersistenceDiagram next;
    next.dimension = candidate.dimension;
    const double inv = 1.0 / static_cast<double>(diagrams.size());
    next.points.reserve(nc);
    for (std::size_t c = 0; c < nc; ++c)
        next.points.push_back({sum_birth[c] * inv, sum_death[c] * inv});
    next.normalize();
    return next;
}

}  // namespace detail

/// Frechet mean of persistence diagrams under the squared 2-Wasserstein
/// metric, by the alternating match/update algorithm, started from an
/// explicit initial candidate.
inline FrechetResult frechet_mean_from(const PersistenceDiagram& init,
                                       const std::vector<PersistenceDiagram>& diagrams,
                                       const FrechetOptions& options = {}) {
    if (diagrams.empty()) throw std::invalid_argument("frechet_mean: no input diagrams");
    if (!(options.tol >= 0.0)) throw std::invalid_argument("frechet_mean: tol must be >= 0");
    if (options.max_iter < 1) throw std::invalid_argument("frechet_mean: max_iter must be >= 1");
    for (const auto& d : diagrams)
        if (d.dimension != init.dimension)
            throw std::invalid_argument("frechet_mean: homological dimensions differ");

    FrechetResult result;
    result.mean = init;
    result.mean.normalize();
    result.value = frechet_function(result.mean, diagrams);
    result.trace.push_back(result.value);

    for (int it = 0; it < options.max_iter; ++it) {
        PersistenceDiagram next = detail::frechet_update(result.mean, diagrams);
        const double value = frechet_function(next, diagrams);
        ++result.iterations;
        if (value <= result.value) {
            result.mean = std::move(next);
            const double gain = result.value - value;
            result.value = value;
            result.trace.push_back(value);
            if (gain <= options.tol) {
                result.converged = true;
                break;
            }
        } else {
            // No admissible improvement; the candidate is a fixed point.
            result.trace.push_back(result.value);
            result.converged = true;
            break;
        }
    }
    return result;
}

/// Frechet mean started from the input diagram with the lowest functional
/// value (ties: first such input).
inline FrechetResult frechet_mean(const std::vector<PersistenceDiagram>& diagrams,
                                  const FrechetOptions& options = {}) {
    if (diagrams.empty()) throw std::invalid_argument("frechet_mean: no input diagrams");
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < diagrams.size(); ++i) {
        const double v = frechet_function(diagrams[i], diagrams);
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    return frechet_mean_from(diagrams[best], diagrams, options);
}

}  // namespace phkm
