#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "phkm/persistence.hpp"
#include "phkm/random.hpp"

namespace phkm {

/// Betti curve of a diagram sampled on a uniform grid of `samples` values
/// from t_min to t_max inclusive: entry g counts points with
/// birth <= t_g < death.
inline std::vector<double> betti_curve(const PersistenceDiagram& dgm, double t_min, double t_max,
                                       std::size_t samples) {
    if (samples < 2) throw std::invalid_argument("betti_curve: need at least 2 samples");
    if (!(t_max > t_min)) throw std::invalid_argument("betti_curve: t_max must exceed t_min");
    std::vector<double> out(samples, 0.0);
    const double step = (t_max - t_min) / static_cast<double>(samples - 1);
    for (std::size_t g = 0; g < samples; ++g) {
        const double t = t_min + step * static_cast<double>(g);
        double count = 0.0;
        for (const auto& p : dgm.points)
            if (p.birth <= t && t < p.death) count += 1.0;
        out[g] = count;
    }
    return out;
}

/// Persistence landscape: levels 1..k sampled on a uniform grid, flattened
/// level-major (level l occupies entries [l*samples, (l+1)*samples)).
/// The level-l value at t is the l-th largest of the tent functions
/// max(0, min(t - birth, death - t)).
inline std::vector<double> persistence_landscape(const PersistenceDiagram& dgm, std::size_t levels,
                                                 double t_min, double t_max,
                                                 std::size_t samples) {
    if (levels < 1) throw std::invalid_argument("persistence_landscape: need at least 1 level");
    if (samples < 2) throw std::invalid_argument("persistence_landscape: need at least 2 samples");
    if (!(t_max > t_min))
        throw std::invalid_argument("persistence_landscape: t_max must exceed t_min");

    std::vector<double> out(levels * samples, 0.0);
    const double step = (t_max - t_min) / static_cast<double>(samples - 1);
    std::vector<double> tents;
    tents.reserve(dgm.points.size());
    for (std::size_t g = 0; g < samples; ++g) {
        const double t = t_min + step * static_cast<double>(g);
        tents.clear();
        for (const auto& p : dgm.points) {
            const double v = std::min(t - p.birth, p.death - t);
            if (v > 0.0) tents.push_back(v);
        }
        std::sort(tents.begin(), tents.end(), std::greater<double>());
        const std::size_t top = std::min(levels, tents.size());
        for (std::size_t l = 0; l < top; ++l) out[l * samples + g] = tents[l];
    }
    return out;
}

struct ImageOptions {
    std::size_t resolution = 20;  ///< pixels per axis
    double sigma = 0.1;           ///< Gaussian bandwidth in (birth, persistence) coordinates
    double birth_min = 0.0;
    double birth_max = 1.0;
    double pers_min = 0.0;
    double pers_max = 1.0;
};

/// Persistence image: diagram points are mapped to (birth, persistence),
/// weighted by the linear ramp clamp(persistence / pers_max, 0, 1), and
/// smoothed with an isotropic Gaussian.  Pixel (r, c) covers the r-th birth
/// interval and c-th persistence interval and stores the midpoint-rule
/// integral of the weighted density; the result is flattened row-major with
/// birth as the row axis.
inline std::vector<double> persistence_image(const PersistenceDiagram& dgm,
                                             const ImageOptions& opt) {
    if (opt.resolution < 1) throw std::invalid_argument("persistence_image: empty resolution");
    if (!(opt.sigma > 0.0)) throw std::invalid_argument("persistence_image: sigma must be > 0");
    if (!(opt.birth_max > opt.birth_min) || !(opt.pers_max > opt.pers_min))
        throw std::invalid_argument("persistence_image: degenerate ranges");

    const std::size_t res = opt.resolution;
    const double db = (opt.birth_max - opt.birth_min) / static_cast<double>(res);
    const double dp = (opt.pers_max - opt.pers_min) / static_cast<double>(res);
    const double area = db * dp;
    const double norm = 1.0 / (2.0 * Rng::pi() * opt.sigma * opt.sigma);
    const double inv2s2 = 1.0 / (2.0 * opt.sigma * opt.sigma);

    std::vector<double> out(res * res, 0.0);
    for (const auto& point : dgm.points) {
        const double b = point.birth;
        const double pers = point.death - point.birth;
        const double weight = std::clamp(pers / opt.pers_max, 0.0, 1.0);
        if (weight <= 0.0) continue;
        for (std::size_t r = 0; r < res; ++r) {
            const double bc = opt.birth_min + db * (static_cast<double>(r) + 0.5);
            const double xb = bc - b;
            for (std::size_t c = 0; c < res; ++c) {
                const double pc = opt.pers_min + dp * (static_cast<double>(c) + 0.5);
                const double xp = pc - pers;
                out[r * res + c] +=
                    weight * norm * std::exp(-(xb * xb + xp * xp) * inv2s2) * area;
            }
        }
    }
    return out;
}

enum class EmbeddingKind { betti_curve, landscape, image };

inline std::string to_string(EmbeddingKind kind) {
    switch (kind) {
        case EmbeddingKind::betti_curve: return "betti";
        case EmbeddingKind::landscape: return "landscape";
        case EmbeddingKind::image: return "image";
    }
    throw std::logic_error("unknown embedding kind");
}

inline EmbeddingKind embedding_kind_from_string(const std::string& s) {
    if (s == "betti") return EmbeddingKind::betti_curve;
    if (s == "landscape") return EmbeddingKind::landscape;
    if (s == "image") return EmbeddingKind::image;
    throw std::invalid_argument("unknown embedding kind: " + s);
}

struct EmbeddingOptions {
    EmbeddingKind kind = EmbeddingKind::betti_curve;
    std::size_t samples = 100;  ///< grid samples for curves, resolution for images
    std::size_t levels = 5;     ///< landscape levels
    double t_min = 0.0;
    double t_max = 1.0;
    double sigma = 0.1;      ///< image bandwidth
    double pers_max = 1.0;   ///< image persistence range (pers_min is 0)
};

/// Fixed-length vectorisation of a diagram according to the chosen embedding.
inline std::vector<double> vectorize_diagram(const PersistenceDiagram& dgm,
                                             const EmbeddingOptions& opt) {
    switch (opt.kind) {
        case EmbeddingKind::betti_curve:
            return betti_curve(dgm, opt.t_min, opt.t_max, opt.samples);
        case EmbeddingKind::landscape:
            return persistence_landscape(dgm, opt.levels, opt.t_min, opt.t_max, opt.samples);
        case EmbeddingKind::image: {
            ImageOptions img;
            img.resolution = opt.samples;
            img.sigma = opt.sigma;
            img.birth_min = opt.t_min;
            img.birth_max = opt.t_max;
            img.pers_min = 0.0;
            img.pers_max = opt.pers_max;
            return persistence_image(dgm, img);
        }
    }
    throw std::logic_error("unknown embedding kind");
}

/// Grid ranges that cover every diagram in a family: t_min is the smallest
/// birth (floored at 0 for non-negative filtrations), t_max the largest death.
inline void fit_embedding_ranges(const std::vector<PersistenceDiagram>& diagrams,
                                 EmbeddingOptions& opt) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    double pers_hi = 0.0;
    for (const auto& d : diagrams)
        for (const auto& p : d.points) {
            lo = std::min(lo, p.birth);
            hi = std::max(hi, p.death);
            pers_hi = std::max(pers_hi, p.death - p.birth);
        }
    if (!(hi > lo)) {  // no points anywhere: keep a unit window
        lo = 0.0;
        hi = 1.0;
        pers_hi = 1.0;
    }
    opt.t_min = lo;
    opt.t_max = hi;
    opt.pers_max = pers_hi > 0.0 ? pers_hi : 1.0;
    if (opt.kind == EmbeddingKind::image && opt.sigma <= 0.0)
        opt.sigma = 0.05 * (hi - lo);
}

}  // namespace phkm
