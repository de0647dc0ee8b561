#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace phkm {

/// A finite set of points in R^dim, stored row-major.
struct PointCloud {
    std::size_t dim = 0;
    std::vector<double> coords;  ///< size() * dim entries, point i at [i*dim, (i+1)*dim)
    std::string label;           ///< optional shape/class tag
    std::uint64_t seed = 0;      ///< seed used to generate the cloud, if sampled

    PointCloud() = default;
    PointCloud(std::size_t dimension, std::size_t count)
        : dim(dimension), coords(dimension * count, 0.0) {
        if (dimension == 0) throw std::invalid_argument("PointCloud: dim must be positive");
    }

    std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }

    double* point(std::size_t i) { return coords.data() + i * dim; }
    const double* point(std::size_t i) const { return coords.data() + i * dim; }

    double& at(std::size_t i, std::size_t j) { return coords[i * dim + j]; }
    double at(std::size_t i, std::size_t j) const { return coords[i * dim + j]; }

    void push_back(const std::vector<double>& p) {
        if (p.size() != dim) throw std::invalid_argument("PointCloud: point has wrong dimension");
        coords.insert(coords.end(), p.begin(), p.end());
    }
};

inline double squared_distance(const PointCloud& pc, std::size_t i, std::size_t j) {
    double s = 0.0;
    const double* a = pc.point(i);
    const double* b = pc.point(j);
    for (std::size_t d = 0; d < pc.dim; ++d) {
        double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

inline double euclidean_distance(const PointCloud& pc, std::size_t i, std::size_t j) {
    return std::sqrt(squared_distance(pc, i, j));
}

/// Dense symmetric pairwise-distance matrix of a point cloud.
inline std::vector<double> distance_matrix(const PointCloud& pc) {
    const std::size_t n = pc.size();
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d = euclidean_distance(pc, i, j);
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    return dist;
}

}  // namespace phkm
