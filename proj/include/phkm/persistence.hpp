#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "phkm/filtration.hpp"

namespace phkm {

/// A point (birth, death) of a persistence diagram, death > birth.
struct DiagramPoint {
    double birth = 0.0;
    double death = 0.0;

    double persistence() const { return death - birth; }
    bool operator==(const DiagramPoint& o) const {
        return birth == o.birth && death == o.death;
    }
};

inline bool operator<(const DiagramPoint& a, const DiagramPoint& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
}

/// Persistence diagram in one homological dimension.  Points are kept sorted
/// lexicographically by (birth, death); repeated points encode multiplicity.
struct PersistenceDiagram {
    int dimension = 0;
    std::vector<DiagramPoint> points;

    std::size_t size() const { return points.size(); }

    /// Sorts points and drops entries with non-positive persistence.
    void normalize() {
        points.erase(std::remove_if(points.begin(), points.end(),
                                    [](const DiagramPoint& p) { return !(p.death > p.birth); }),
                     points.end());
        std::sort(points.begin(), points.end());
    }

    double total_persistence() const {
        double s = 0.0;
        for (const auto& p : points) s += p.death - p.birth;
        return s;
    }
};

namespace detail {

/// Symmetric difference of two sorted index vectors (GF(2) column addition).
inline void symmetric_difference(std::vector<std::uint32_t>& col,
                                 const std::vector<std::uint32_t>& other,
                                 std::vector<std::uint32_t>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                  std::back_inserter(scratch));
    col.swap(scratch);
}

}  // namespace detail

/// Persistent homology of a filtered complex in degrees 0..max_degree,
/// computed by column reduction of the boundary matrices over GF(2) with the
/// clearing optimisation (dimensions processed from high to low).
///
/// Essential classes are reported with death equal to the filtration's
/// max_scale; points with non-positive persistence are dropped.  The complex
/// must contain simplices of dimension max_degree+1 so that deaths in the top
/// requested degree are correct.
inline std::vector<PersistenceDiagram> compute_persistence(const FilteredComplex& fc,
                                                           int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("compute_persistence: max_degree < 0");
    if (fc.max_dim < max_degree + 1)
        throw std::invalid_argument(
            "compute_persistence: complex dimension must exceed requested degree");
    const std::size_t m = fc.simplices.size();
    if (m == 0) throw std::invalid_argument("compute_persistence: empty complex");

    // Global simplex indices grouped by dimension, in filtration order.
    std::vector<std::vector<std::uint32_t>> by_dim(fc.max_dim + 1);
    for (std::size_t i = 0; i < m; ++i)
        by_dim[fc.simplices[i].dim].push_back(static_cast<std::uint32_t>(i));

    // Lexicographic lookup tables per dimension for face indices.
    auto lex_less = [&](std::uint32_t a, std::uint32_t b) {
        const Simplex& sa = fc.simplices[a];
        const Simplex& sb = fc.simplices[b];
        return std::lexicographical_compare(sa.vertices.begin(), sa.vertices.begin() + sa.dim + 1,
                                            sb.vertices.begin(), sb.vertices.begin() + sb.dim + 1);
    };
    std::vector<std::vector<std::uint32_t>> lex_by_dim(fc.max_dim + 1);
    for (int d = 0; d <= fc.max_dim; ++d) {
        lex_by_dim[d] = by_dim[d];
        std::sort(lex_by_dim[d].begin(), lex_by_dim[d].end(), lex_less);
    }

    Simplex face_key;
    auto face_index = [&](const Simplex& s, int drop) -> std::uint32_t {
        face_key.dim = static_cast<std::uint8_t>(s.dim - 1);
        int k = 0;
        for (int i = 0; i <= s.dim; ++i)
            if (i != drop) face_key.vertices[k++] = s.vertices[i];
        const auto& table = lex_by_dim[s.dim - 1];
        auto it = std::lower_bound(table.begin(), table.end(), 0u,
                                   [&](std::uint32_t a, std::uint32_t) {
                                       const Simplex& sa = fc.simplices[a];
                                       return std::lexicographical_compare(
                                           sa.vertices.begin(), sa.vertices.begin() + sa.dim + 1,
                                           face_key.vertices.begin(),
                                           face_key.vertices.begin() + face_key.dim + 1);
                                   });
        return *it;
    };

    std::vector<PersistenceDiagram> diagrams(max_degree + 1);
    for (int q = 0; q <= max_degree; ++q) diagrams[q].dimension = q;

    // paired[i]: simplex i participates in a finite pair (as birth or death).
    std::vector<char> paired(m, 0);
    // cleared[i]: column i is known to reduce to zero (pivot of a higher column).
    std::vector<char> cleared(m, 0);
    // zero_column[i]: column i reduced to zero (a birth simplex).
    std::vector<char> zero_column(m, 0);

    const int top = std::min(fc.max_dim, max_degree + 1);
    std::vector<std::int64_t> pivot_owner(m, -1);
    std::vector<std::uint32_t> scratch;

    for (int d = top; d >= 1; --d) {
        std::fill(pivot_owner.begin(), pivot_owner.end(), std::int64_t{-1});
        std::vector<std::vector<std::uint32_t>> columns(by_dim[d].size());

        for (std::size_t ci = 0; ci < by_dim[d].size(); ++ci) {
            const std::uint32_t j = by_dim[d][ci];
            if (cleared[j]) continue;
            const Simplex& s = fc.simplices[j];

            std::vector<std::uint32_t>& col = columns[ci];
            col.reserve(d + 1);
            for (int drop = 0; drop <= d; ++drop) col.push_back(face_index(s, drop));
            std::sort(col.begin(), col.end());

            while (!col.empty()) {
                const std::uint32_t pivot = col.back();
                const std::int64_t owner = pivot_owner[pivot];
                if (owner < 0) break;
                detail::symmetric_difference(col, columns[static_cast<std::size_t>(owner)],
                                             scratch);
            }

            if (col.empty()) {
                zero_column[j] = 1;
            } else {
                const std::uint32_t pivot = col.back();
                pivot_owner[pivot] = static_cast<std::int64_t>(ci);
                cleared[pivot] = 1;
                const double birth = fc.simplices[pivot].value;
                const double death = s.value;
                paired[j] = 1;
                paired[pivot] = 1;
                if (d - 1 <= max_degree && death > birth)
                    diagrams[d - 1].points.push_back({birth, death});
            }
        }
    }

    // Essential classes: birth simplices never hit by a higher-dimensional
    // pivot.  A dimension-q simplex is a birth if its own column reduced to
    // zero (vertices always do).  Truncate deaths at max_scale.
    for (int q = 0; q <= max_degree; ++q) {
        for (std::uint32_t i : by_dim[q]) {
            const bool birth_simplex = (q == 0) || zero_column[i] || cleared[i];
            if (birth_simplex && !paired[i]) {
                const double birth = fc.simplices[i].value;
                if (fc.max_scale > birth)
                    diagrams[q].points.push_back({birth, fc.max_scale});
            }
        }
    }

    for (auto& dgm : diagrams) dgm.normalize();
    return diagrams;
}

/// Convenience wrapper: Vietoris-Rips persistence of a point cloud in degrees
/// 0..max_degree at the given scale cap.
inline std::vector<PersistenceDiagram> rips_persistence(const PointCloud& pc, double max_scale,
                                                        int max_degree) {
    FilteredComplex fc = build_vr_filtration(pc, max_scale, max_degree + 1);
    return compute_persistence(fc, max_degree);
}

}  // namespace phkm
