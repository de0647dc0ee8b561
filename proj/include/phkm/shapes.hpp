#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "phkm/point_cloud.hpp"
#include "phkm/random.hpp"

namespace phkm {

/// n points sampled uniformly from the circle of the given radius in R^2,
/// centred at the origin.
inline PointCloud sample_circle(std::size_t n, double radius, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_circle: n must be positive");
    if (!(radius > 0.0)) throw std::invalid_argument("sample_circle: radius must be positive");
    Rng rng(seed);
    PointCloud pc(2, n);
    for (std::size_t i = 0; i < n; ++i) {
        double theta = rng.uniform(0.0, 2.0 * Rng::pi());
        pc.at(i, 0) = radius * std::cos(theta);
        pc.at(i, 1) = radius * std::sin(theta);
    }
    pc.label = "circle";
    pc.seed = seed;
    return pc;
}

/// n points sampled uniformly from the 2-sphere of the given radius in R^3.
/// Normalised Gaussian vectors give the rotation-invariant distribution.
inline PointCloud sample_sphere(std::size_t n, double radius, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_sphere: n must be positive");
    if (!(radius > 0.0)) throw std::invalid_argument("sample_sphere: radius must be positive");
    Rng rng(seed);
    PointCloud pc(3, n);
    for (std::size_t i = 0; i < n; ++i) {
        double x, y, z, norm;
        do {
            x = rng.normal();
            y = rng.normal();
            z = rng.normal();
            norm = std::sqrt(x * x + y * y + z * z);
        } while (norm < 1e-12);
        pc.at(i, 0) = radius * x / norm;
        pc.at(i, 1) = radius * y / norm;
        pc.at(i, 2) = radius * z / norm;
    }
    pc.label = "sphere";
    pc.seed = seed;
    return pc;
}

/// n points sampled uniformly (w.r.t. surface area) from the torus with major
/// radius R and minor radius r, axis along z.
///
/// The area element is proportional to R + r*cos(u), so the tube angle u is
/// drawn by rejection against that density; the axial angle v is uniform.
inline PointCloud sample_torus(std::size_t n, double R, double r, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_torus: n must be positive");
    if (!(r > 0.0) || !(R > r))
        throw std::invalid_argument("sample_torus: requires 0 < r < R");
    Rng rng(seed);
    PointCloud pc(3, n);
    for (std::size_t i = 0; i < n; ++i) {
        double u;
        for (;;) {
            u = rng.uniform(0.0, 2.0 * Rng::pi());
            double accept = (R + r * std::cos(u)) / (R + r);
            if (rng.uniform() < accept) break;
        }
        double v = rng.uniform(0.0, 2.0 * Rng::pi());
        double w = R + r * std::cos(u);
        pc.at(i, 0) = w * std::cos(v);
        pc.at(i, 1) = w * std::sin(v);
        pc.at(i, 2) = r * std::sin(u);
    }
    pc.label = "torus";
    pc.seed = seed;
    return pc;
}

/// Perturbs every coordinate independently by a uniform draw from
/// [-scale, scale].  scale == 0 returns the cloud unchanged.
inline PointCloud add_uniform_noise(const PointCloud& pc, double scale, std::uint64_t seed) {
    if (scale < 0.0) throw std::invalid_argument("add_uniform_noise: scale must be >= 0");
    PointCloud out = pc;
    if (scale == 0.0) return out;
    Rng rng(seed);
    for (double& c : out.coords) c += rng.uniform(-scale, scale);
    return out;
}

}  // namespace phkm
