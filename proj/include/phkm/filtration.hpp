#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "phkm/point_cloud.hpp"

namespace phkm {

inline constexpr int kMaxComplexDim = 7;

/// A simplex in a filtered complex.  Vertices are stored in ascending order;
/// only the first dim+1 entries are meaningful.
struct Simplex {
    std::array<std::uint32_t, kMaxComplexDim + 1> vertices{};
    double value = 0.0;
    std::uint8_t dim = 0;

    bool operator==(const Simplex& o) const {
        if (dim != o.dim || value != o.value) return false;
        for (int i = 0; i <= dim; ++i)
            if (vertices[i] != o.vertices[i]) return false;
        return true;
    }
};

/// Filtration order: by value, then dimension, then lexicographic vertices.
/// Every face of a simplex precedes it in this order.
inline bool filtration_less(const Simplex& a, const Simplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.dim != b.dim) return a.dim < b.dim;
    return std::lexicographical_compare(a.vertices.begin(), a.vertices.begin() + a.dim + 1,
                                        b.vertices.begin(), b.vertices.begin() + b.dim + 1);
}

struct FilteredComplex {
    std::vector<Simplex> simplices;  ///< sorted by filtration_less
    std::size_t vertex_count = 0;
    int max_dim = 0;
    double max_scale = 0.0;
};

namespace detail {

/// Bit-set adjacency row for the neighbourhood graph.
class NeighborSets {
public:
    NeighborSets(std::size_t n) : n_(n), blocks_((n + 63) / 64), bits_(n * blocks_, 0) {}

    void add(std::size_t i, std::size_t j) {
        bits_[i * blocks_ + j / 64] |= std::uint64_t{1} << (j % 64);
        bits_[j * blocks_ + i / 64] |= std::uint64_t{1} << (i % 64);
    }

    bool contains(std::size_t i, std::size_t j) const {
        return (bits_[i * blocks_ + j / 64] >> (j % 64)) & 1u;
    }

    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * blocks_; }
    std::size_t blocks() const { return blocks_; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::size_t blocks_;
    std::vector<std::uint64_t> bits_;
};

inline void expand_cofaces(const NeighborSets& adj, const std::vector<double>& dist,
                           std::size_t n, int max_dim, Simplex& current,
                           std::vector<std::uint64_t>& candidates,
                           std::vector<Simplex>& out) {
    if (current.dim >= max_dim) return;
    const std::size_t blocks = adj.blocks();
    // Iterate candidate vertices (common neighbours above the last vertex).
    for (std::size_t blk = 0; blk < blocks; ++blk) {
        std::uint64_t word = candidates[blk];
        while (word) {
            const int bit = std::countr_zero(word);
            word &= word - 1;
            const std::uint32_t w = static_cast<std::uint32_t>(blk * 64 + bit);
            Simplex next = current;
            next.dim = static_cast<std::uint8_t>(current.dim + 1);
            next.vertices[next.dim] = w;
            for (int i = 0; i <= current.dim; ++i) {
                double d = dist[current.vertices[i] * n + w];
                if (d > next.value) next.value = d;
            }
            out.push_back(next);
            if (next.dim < max_dim) {
                std::vector<std::uint64_t> next_cands(blocks);
                const std::uint64_t* row = adj.row(w);
                // Restrict to neighbours of w with index > w.
                for (std::size_t b = 0; b < blocks; ++b) next_cands[b] = candidates[b] & row[b];
                const std::size_t wb = w / 64;
                next_cands[wb] &= ~((std::uint64_t{2} << (w % 64)) - 1);
                for (std::size_t b = 0; b < wb; ++b) next_cands[b] = 0;
                expand_cofaces(adj, dist, n, max_dim, next, next_cands, out);
            }
        }
    }
}

}  // namespace detail

/// Builds the Vietoris-Rips filtration of a point cloud: all simplices on at
/// most max_dim+1 vertices whose vertex-set diameter is at most max_scale.
/// The value of a simplex is its diameter (0 for vertices).
inline FilteredComplex build_vr_filtration(const PointCloud& pc, double max_scale, int max_dim) {
    if (pc.size() == 0) throw std::invalid_argument("build_vr_filtration: empty point cloud");
    if (!(max_scale >= 0.0))
        throw std::invalid_argument("build_vr_filtration: max_scale must be >= 0");
    if (max_dim < 0 || max_dim > kMaxComplexDim)
        throw std::invalid_argument("build_vr_filtration: max_dim out of range");

    const std::size_t n = pc.size();
    const std::vector<double> dist = distance_matrix(pc);

    detail::NeighborSets adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dist[i * n + j] <= max_scale) adj.add(i, j);

    FilteredComplex fc;
    fc.vertex_count = n;
    fc.max_dim = max_dim;
    fc.max_scale = max_scale;

    for (std::size_t v = 0; v < n; ++v) {
        Simplex s;
        s.dim = 0;
        s.value = 0.0;
        s.vertices[0] = static_cast<std::uint32_t>(v);
        fc.simplices.push_back(s);
        if (max_dim > 0) {
            std::vector<std::uint64_t> cands(adj.blocks());
            const std::uint64_t* row = adj.row(v);
            for (std::size_t b = 0; b < adj.blocks(); ++b) cands[b] = row[b];
            const std::size_t vb = v / 64;
            cands[vb] &= ~((std::uint64_t{2} << (v % 64)) - 1);
            for (std::size_t b = 0; b < vb; ++b) cands[b] = 0;
            detail::expand_cofaces(adj, dist, n, max_dim, s, cands, fc.simplices);
        }
    }

    std::sort(fc.simplices.begin(), fc.simplices.end(), filtration_less);
    return fc;
}

}  // namespace phkm
