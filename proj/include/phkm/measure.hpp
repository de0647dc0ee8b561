#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "phkm/persistence.hpp"

namespace phkm {

/// Weighted off-diagonal atom of a persistence measure.
struct MeasureAtom {
    double birth = 0.0;
    double death = 0.0;
    double mass = 0.0;

    double persistence() const { return death - birth; }
};

inline bool atom_position_less(const MeasureAtom& a, const MeasureAtom& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
}

/// A finite non-negative measure supported off the diagonal, i.e. a weighted
/// persistence diagram.  Atoms are kept sorted by position with coincident
/// atoms merged.
struct PersistenceMeasure {
    int dimension = 0;
    std::vector<MeasureAtom> atoms;

    std::size_t size() const { return atoms.size(); }

    double total_mass() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.mass;
        return s;
    }

    /// Sorts atoms, merges coincident positions, and drops atoms with
    /// non-positive mass or non-positive persistence.
    void normalize() {
        std::sort(atoms.begin(), atoms.end(), atom_position_less);
        std::vector<MeasureAtom> merged;
        merged.reserve(atoms.size());
        for (const auto& a : atoms) {
            if (!merged.empty() && merged.back().birth == a.birth &&
                merged.back().death == a.death) {
                merged.back().mass += a.mass;
            } else {
                merged.push_back(a);
            }
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const MeasureAtom& a) {
                                        return !(a.mass > 0.0) || !(a.death > a.birth);
                                    }),
                     merged.end());
        atoms = std::move(merged);
    }
};

/// Interprets a diagram as a measure: unit mass per point, multiplicities
/// merged into atom masses.
inline PersistenceMeasure diagram_to_measure(const PersistenceDiagram& dgm) {
    PersistenceMeasure mu;
    mu.dimension = dgm.dimension;
    mu.atoms.reserve(dgm.points.size());
    for (const auto& p : dgm.points) mu.atoms.push_back({p.birth, p.death, 1.0});
    mu.normalize();
    return mu;
}

/// Arithmetic mean of persistence measures: the union of all atoms, each with
/// 1/N of its mass.  All inputs must share the homological dimension.
inline PersistenceMeasure mean_measure(const std::vector<PersistenceMeasure>& measures) {
    if (measures.empty()) throw std::invalid_argument("mean_measure: no inputs");
    PersistenceMeasure out;
    out.dimension = measures.front().dimension;
    const double inv = 1.0 / static_cast<double>(measures.size());
    for (const auto& mu : measures) {
        if (mu.dimension != out.dimension)
            throw std::invalid_argument("mean_measure: mixed homological dimensions");
        for (const auto& a : mu.atoms) out.atoms.push_back({a.birth, a.death, a.mass * inv});
    }
    out.normalize();
    return out;
}

}  // namespace phkm
