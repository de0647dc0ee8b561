#pragma once

#include <chrono>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "phkm/clustering.hpp"
#include "phkm/embeddings.hpp"
#include "phkm/evaluation.hpp"
#include "phkm/io.hpp"
#include "phkm/measure.hpp"
#include "phkm/parallel.hpp"
#include "phkm/persistence.hpp"
#include "phkm/shapes.hpp"

namespace phkm {

/// Drops diagram points with persistence below the threshold.  Used to keep
/// transport problems small by discarding topological noise.
inline PersistenceDiagram prune_diagram(const PersistenceDiagram& dgm, double min_persistence) {
    if (min_persistence < 0.0) throw std::invalid_argument("prune_diagram: negative threshold");
    PersistenceDiagram out;
    out.dimension = dgm.dimension;
    for (const auto& p : dgm.points)
        if (p.death - p.birth >= min_persistence) out.points.push_back(p);
    out.normalize();
    return out;
}

/// Benchmark configuration: synthetic shape classes are sampled, perturbed at
/// each noise scale, summarised by persistent homology, and clustered under
/// every requested representation.
struct ExperimentConfig {
    std::vector<std::string> classes = {"circle", "sphere", "torus"};
    int per_class = 10;
    int points = 200;
    double circle_radius = 10.0;
    double sphere_radius = 10.0;
    double torus_major = 10.0;
    double torus_minor = 5.0;
    std::vector<double> noise_scales = {0.0};
    std::vector<std::string> representations = {"pd", "pm", "betti", "landscape", "image"};
    int homology_degree = 1;
    double max_scale = 12.0;
    double prune = 0.0;  ///< minimum persistence kept in the diagrams
    std::size_t k = 0;   ///< clusters; 0 means "number of classes"
    int restarts = 5;
    int repetitions = 1;
    int max_iter = 50;
    std::uint64_t seed = 0;
    std::size_t grid = 100;              ///< curve/landscape samples
    std::size_t levels = 5;              ///< landscape levels
    std::size_t image_resolution = 20;   ///< persistence-image pixels per axis
    double image_sigma = 0.0;            ///< 0 means "5% of the grid window"
    unsigned threads = 0;                ///< 0 means PHKM_THREADS / hardware
};

struct ExperimentCell {
    double noise = 0.0;
    std::string representation;
    std::vector<double> scores;  ///< one adjusted Rand index per repetition
    SummaryStats stats;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<ExperimentCell> cells;
    double wall_seconds = 0.0;
};

inline PointCloud make_shape_cloud(const std::string& shape, const ExperimentConfig& cfg,
                                   std::uint64_t seed) {
    if (shape == "circle")
        return sample_circle(static_cast<std::size_t>(cfg.points), cfg.circle_radius, seed);
    if (shape == "sphere")
        return sample_sphere(static_cast<std::size_t>(cfg.points), cfg.sphere_radius, seed);
    if (shape == "torus")
        return sample_torus(static_cast<std::size_t>(cfg.points), cfg.torus_major,
                            cfg.torus_minor, seed);
    throw std::invalid_argument("unknown shape class: " + shape);
}

inline void validate_experiment_config(const ExperimentConfig& cfg) {
    if (cfg.classes.empty()) throw std::invalid_argument("experiment: no classes");
    for (const auto& c : cfg.classes)
        if (c != "circle" && c != "sphere" && c != "torus")
            throw std::invalid_argument("experiment: unknown class " + c);
    if (cfg.per_class < 1) throw std::invalid_argument("experiment: per_class must be >= 1");
    if (cfg.points < 2) throw std::invalid_argument("experiment: points must be >= 2");
    if (cfg.noise_scales.empty()) throw std::invalid_argument("experiment: no noise scales");
    for (double s : cfg.noise_scales)
        if (s < 0.0) throw std::invalid_argument("experiment: negative noise scale");
    if (cfg.representations.empty())
        throw std::invalid_argument("experiment: no representations");
    for (const auto& r : cfg.representations)
        if (r != "pd" && r != "pm" && r != "betti" && r != "landscape" && r != "image")
            throw std::invalid_argument("experiment: unknown representation " + r);
    if (!(cfg.max_scale > 0.0)) throw std::invalid_argument("experiment: max_scale must be > 0");
    if (cfg.homology_degree < 0)
        throw std::invalid_argument("experiment: homology_degree must be >= 0");
    if (cfg.repetitions < 1) throw std::invalid_argument("experiment: repetitions must be >= 1");
    if (cfg.restarts < 1) throw std::invalid_argument("experiment: restarts must be >= 1");
    const std::size_t n = cfg.classes.size() * static_cast<std::size_t>(cfg.per_class);
    const std::size_t k = cfg.k == 0 ? cfg.classes.size() : cfg.k;
    if (k < 1 || k > n) throw std::invalid_argument("experiment: k out of range");
}

namespace detail {

inline double cluster_representation(const std::string& rep,
                                     const std::vector<PersistenceDiagram>& diagrams,
                                     const std::vector<int>& truth,
                                     const ExperimentConfig& cfg, std::uint64_t seed) {
    const std::size_t k = cfg.k == 0 ? cfg.classes.size() : cfg.k;
    KMeansOptions opt;
    opt.k = k;
    opt.seed = seed;
    opt.max_iter = cfg.max_iter;

    std::vector<std::size_t> labels;
    if (rep == "pd") {
        DiagramSpace space;
        labels = kmeans_restarts(space, diagrams, opt, cfg.restarts).labels;
    } else if (rep == "pm") {
        std::vector<PersistenceMeasure> measures;
        measures.reserve(diagrams.size());
        for (const auto& d : diagrams) measures.push_back(diagram_to_measure(d));
        MeasureSpace space;
        labels = kmeans_restarts(space, measures, opt, cfg.restarts).labels;
    } else {
        EmbeddingOptions eopt;
        eopt.kind = embedding_kind_from_string(rep == "betti" ? "betti" : rep);
        eopt.samples = eopt.kind == EmbeddingKind::image ? cfg.image_resolution : cfg.grid;
        eopt.levels = cfg.levels;
        eopt.sigma = cfg.image_sigma;
        fit_embedding_ranges(diagrams, eopt);
        if (eopt.kind == EmbeddingKind::image && cfg.image_sigma > 0.0)
            eopt.sigma = cfg.image_sigma;
        std::vector<std::vector<double>> vectors;
        vectors.reserve(diagrams.size());
        for (const auto& d : diagrams) vectors.push_back(vectorize_diagram(d, eopt));
        VectorSpace space;
        labels = kmeans_restarts(space, vectors, opt, cfg.restarts).labels;
    }

    std::vector<int> pred(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) pred[i] = static_cast<int>(labels[i]);
    return adjusted_rand_index(pred, truth);
}

}  // namespace detail

/// Runs the full benchmark: for every noise scale and repetition, sample the
/// dataset, compute degree-`homology_degree` persistence diagrams, and
/// cluster each requested representation with k-means.  Returns the adjusted
/// Rand index of every run, summarised per (noise, representation) cell.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    validate_experiment_config(cfg);
    const auto t0 = std::chrono::steady_clock::now();

    ExperimentReport report;
    report.config = cfg;
    for (double noise : cfg.noise_scales)
        for (const auto& rep : cfg.representations) {
            ExperimentCell cell;
            cell.noise = noise;
            cell.representation = rep;
            report.cells.push_back(cell);
        }

    const std::size_t n_clouds = cfg.classes.size() * static_cast<std::size_t>(cfg.per_class);
    std::vector<int> truth;
    truth.reserve(n_clouds);
    for (std::size_t c = 0; c < cfg.classes.size(); ++c)
        for (int m = 0; m < cfg.per_class; ++m) truth.push_back(static_cast<int>(c));

    for (std::size_t a = 0; a < cfg.noise_scales.size(); ++a) {
        const double noise = cfg.noise_scales[a];
        for (int repeat = 0; repeat < cfg.repetitions; ++repeat) {
            const std::uint64_t data_seed =
                mix_seed(cfg.seed, a, static_cast<std::uint64_t>(repeat));

            std::vector<PointCloud> clouds(n_clouds);
            {
                std::size_t idx = 0;
                for (std::size_t c = 0; c < cfg.classes.size(); ++c)
                    for (int m = 0; m < cfg.per_class; ++m, ++idx) {
                        const std::uint64_t cloud_seed =
                            mix_seed(data_seed, c, static_cast<std::uint64_t>(m));
                        clouds[idx] = make_shape_cloud(cfg.classes[c], cfg, cloud_seed);
                        if (noise > 0.0)
                            clouds[idx] = add_uniform_noise(clouds[idx], noise,
                                                            mix_seed(cloud_seed, 7777));
                    }
            }

            std::vector<PersistenceDiagram> diagrams(n_clouds);
            parallel_for(
                n_clouds,
                [&](std::size_t i) {
                    auto all = rips_persistence(clouds[i], cfg.max_scale, cfg.homology_degree);
                    diagrams[i] = prune_diagram(all[cfg.homology_degree], cfg.prune);
                },
                cfg.threads);

            for (std::size_t r = 0; r < cfg.representations.size(); ++r) {
                const double score = detail::cluster_representation(
                    cfg.representations[r], diagrams, truth, cfg,
                    mix_seed(data_seed, 5000 + r));
                report.cells[a * cfg.representations.size() + r].scores.push_back(score);
            }
        }
    }

    for (auto& cell : report.cells) cell.stats = summarize(cell.scores);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// --------------------------------------------------------------------------
// JSON round-trip for configs and reports
// --------------------------------------------------------------------------

inline json experiment_config_to_json(const ExperimentConfig& cfg) {
    return {{"classes", cfg.classes},
            {"per_class", cfg.per_class},
            {"points", cfg.points},
            {"circle_radius", cfg.circle_radius},
            {"sphere_radius", cfg.sphere_radius},
            {"torus_major", cfg.torus_major},
            {"torus_minor", cfg.torus_minor},
            {"noise_scales", cfg.noise_scales},
            {"representations", cfg.representations},
            {"homology_degree", cfg.homology_degree},
            {"max_scale", cfg.max_scale},
            {"prune", cfg.prune},
            {"k", cfg.k},
            {"restarts", cfg.restarts},
            {"repetitions", cfg.repetitions},
            {"max_iter", cfg.max_iter},
            {"seed", cfg.seed},
            {"grid", cfg.grid},
            {"levels", cfg.levels},
            {"image_resolution", cfg.image_resolution},
            {"image_sigma", cfg.image_sigma},
            {"threads", cfg.threads}};
}

inline ExperimentConfig experiment_config_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("experiment config: expected an object");
    ExperimentConfig cfg;
    cfg.classes = j.value("classes", cfg.classes);
    cfg.per_class = j.value("per_class", cfg.per_class);
    cfg.points = j.value("points", cfg.points);
    cfg.circle_radius = j.value("circle_radius", cfg.circle_radius);
    cfg.sphere_radius = j.value("sphere_radius", cfg.sphere_radius);
    cfg.torus_major = j.value("torus_major", cfg.torus_major);
    cfg.torus_minor = j.value("torus_minor", cfg.torus_minor);
    cfg.noise_scales = j.value("noise_scales", cfg.noise_scales);
    cfg.representations = j.value("representations", cfg.representations);
    cfg.homology_degree = j.value("homology_degree", cfg.homology_degree);
    cfg.max_scale = j.value("max_scale", cfg.max_scale);
    cfg.prune = j.value("prune", cfg.prune);
    cfg.k = j.value("k", cfg.k);
    cfg.restarts = j.value("restarts", cfg.restarts);
    cfg.repetitions = j.value("repetitions", cfg.repetitions);
    cfg.max_iter = j.value("max_iter", cfg.max_iter);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.grid = j.value("grid", cfg.grid);
    cfg.levels = j.value("levels", cfg.levels);
    cfg.image_resolution = j.value("image_resolution", cfg.image_resolution);
    cfg.image_sigma = j.value("image_sigma", cfg.image_sigma);
    cfg.threads = j.value("threads", cfg.threads);
    validate_experiment_config(cfg);
    return cfg;
}

inline json experiment_report_to_json(const ExperimentReport& report) {
    json cells = json::array();
    for (const auto& c : report.cells)
        cells.push_back({{"noise", c.noise},
                         {"representation", c.representation},
                         {"scores", c.scores},
                         {"mean", c.stats.mean},
                         {"stddev", c.stats.stddev}});
    return {{"config", experiment_config_to_json(report.config)},
            {"cells", std::move(cells)},
            {"wall_seconds", report.wall_seconds}};
}

/// Human-readable score table: one row per noise scale, one column per
/// representation, entries "mean (sd)".
inline std::string format_report_table(const ExperimentReport& report) {
    std::ostringstream out;
    out << "noise";
    for (const auto& rep : report.config.representations) out << '\t' << rep;
    out << '\n';
    const std::size_t reps = report.config.representations.size();
    for (std::size_t a = 0; a < report.config.noise_scales.size(); ++a) {
        out << report.config.noise_scales[a];
        for (std::size_t r = 0; r < reps; ++r) {
            const auto& cell = report.cells[a * reps + r];
            out << '\t';
            out.setf(std::ios::fixed);
            out.precision(3);
            out << cell.stats.mean << " (" << cell.stats.stddev << ")";
            out.unsetf(std::ios::fixed);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace phkm
