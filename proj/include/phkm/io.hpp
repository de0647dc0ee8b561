#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "phkm/clustering.hpp"
#include "phkm/embeddings.hpp"
#include "phkm/measure.hpp"
#include "phkm/metrics.hpp"
#include "phkm/persistence.hpp"
#include "phkm/point_cloud.hpp"

namespace phkm {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

// --------------------------------------------------------------------------
// Persistence diagrams: [{"dimension": k, "points": [[birth, death], ...]}]
// --------------------------------------------------------------------------

inline json diagrams_to_json(const std::vector<PersistenceDiagram>& diagrams) {
    json out = json::array();
    for (const auto& d : diagrams) {
        json points = json::array();
        for (const auto& p : d.points) points.push_back({p.birth, p.death});
        out.push_back({{"dimension", d.dimension}, {"points", std::move(points)}});
    }
    return out;
}

inline std::vector<PersistenceDiagram> diagrams_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("diagrams: expected a JSON array");
    std::vector<PersistenceDiagram> out;
    for (const auto& entry : j) {
        if (!entry.is_object() || !entry.contains("dimension") || !entry.contains("points"))
            throw std::invalid_argument("diagrams: entries need `dimension` and `points`");
        PersistenceDiagram d;
        if (!entry["dimension"].is_number_integer() || entry["dimension"].get<int>() < 0)
            throw std::invalid_argument("diagrams: dimension must be a non-negative integer");
        d.dimension = entry["dimension"].get<int>();
        if (!entry["points"].is_array())
            throw std::invalid_argument("diagrams: points must be an array");
        for (const auto& p : entry["points"]) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                throw std::invalid_argument("diagrams: each point must be [birth, death]");
            const double birth = p[0].get<double>();
            const double death = p[1].get<double>();
            if (death < birth)
                throw std::invalid_argument("diagrams: death must be >= birth");
            d.points.push_back({birth, death});
        }
        d.normalize();
        out.push_back(std::move(d));
    }
    return out;
}

// --------------------------------------------------------------------------
// Persistence measures: [{"dimension": k, "atoms": [[birth, death, mass],..]}]
// --------------------------------------------------------------------------

inline json measures_to_json(const std::vector<PersistenceMeasure>& measures) {
    json out = json::array();
    for (const auto& mu : measures) {
        json atoms = json::array();
        for (const auto& a : mu.atoms) atoms.push_back({a.birth, a.death, a.mass});
        out.push_back({{"dimension", mu.dimension}, {"atoms", std::move(atoms)}});
    }
    return out;
}

inline std::vector<PersistenceMeasure> measures_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("measures: expected a JSON array");
    std::vector<PersistenceMeasure> out;
    for (const auto& entry : j) {
        if (!entry.is_object() || !entry.contains("dimension") || !entry.contains("atoms"))
            throw std::invalid_argument("measures: entries need `dimension` and `atoms`");
        PersistenceMeasure mu;
        if (!entry["dimension"].is_number_integer() || entry["dimension"].get<int>() < 0)
            throw std::invalid_argument("measures: dimension must be a non-negative integer");
        mu.dimension = entry["dimension"].get<int>();
        for (const auto& a : entry["atoms"]) {
            if (!a.is_array() || a.size() != 3)
                throw std::invalid_argument("measures: each atom must be [birth, death, mass]");
            const double birth = a[0].get<double>();
            const double death = a[1].get<double>();
            const double mass = a[2].get<double>();
            if (death < birth) throw std::invalid_argument("measures: death must be >= birth");
            if (mass < 0.0) throw std::invalid_argument("measures: mass must be >= 0");
            mu.atoms.push_back({birth, death, mass});
        }
        mu.normalize();
        out.push_back(std::move(mu));
    }
    return out;
}

// --------------------------------------------------------------------------
// Point clouds as CSV (one point per line, comma-separated coordinates)
// --------------------------------------------------------------------------

inline void write_point_cloud_csv(const std::string& path, const PointCloud& pc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << std::setprecision(17);
    for (std::size_t i = 0; i < pc.size(); ++i) {
        for (std::size_t d = 0; d < pc.dim; ++d) {
            if (d > 0) out << ',';
            out << pc.at(i, d);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline PointCloud read_point_cloud_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    PointCloud pc;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": not a number: " + cell);
            }
        }
        if (row.empty()) continue;
        if (pc.dim == 0) pc.dim = row.size();
        if (row.size() != pc.dim)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": inconsistent number of columns");
        pc.coords.insert(pc.coords.end(), row.begin(), row.end());
    }
    if (pc.size() == 0) throw std::runtime_error(path + ": no points");
    return pc;
}

// --------------------------------------------------------------------------
// Label vectors: either [0,1,...] or {"labels": [0,1,...]}
// --------------------------------------------------------------------------

inline std::vector<int> labels_from_json(const json& j) {
    const json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("labels"))
            throw std::invalid_argument("labels: object form needs a `labels` key");
        arr = &j["labels"];
    }
    if (!arr->is_array()) throw std::invalid_argument("labels: expected a JSON array");
    std::vector<int> out;
    for (const auto& v : *arr) {
        if (!v.is_number_integer()) throw std::invalid_argument("labels: entries must be integers");
        out.push_back(v.get<int>());
    }
    return out;
}

// --------------------------------------------------------------------------
// Transport plans
// --------------------------------------------------------------------------

inline json plan_to_json(const TransportPlan& plan) {
    json pairs = json::array();
    for (const auto& pr : plan.pairs)
        pairs.push_back({static_cast<std::int64_t>(pr.source),
                         static_cast<std::int64_t>(pr.target), pr.mass});
    return {{"p", plan.p},
            {"q", std::isinf(plan.q) ? json("inf") : json(plan.q)},
            {"cost", plan.cost},
            {"pairs", std::move(pairs)}};
}

// --------------------------------------------------------------------------
// KKT reports
// --------------------------------------------------------------------------

inline json kkt_report_to_json(const KKTReport& report) {
    json clusters = json::array();
    for (const auto& c : report.clusters)
        clusters.push_back({{"cluster", c.cluster},
                            {"members", c.members},
                            {"rerun_improvement", c.rerun_improvement},
                            {"best_perturbation_improvement", c.best_perturbation_improvement}});
    return {{"partial_optimal", report.partial_optimal()},
            {"assignment_optimal", report.assignment_optimal},
            {"centroid_optimal", report.centroid_optimal},
            {"max_assignment_violation", report.max_assignment_violation},
            {"max_centroid_improvement", report.max_centroid_improvement},
            {"multipliers", report.multipliers},
            {"clusters", std::move(clusters)}};
}

// --------------------------------------------------------------------------
// Embedding bundles
// --------------------------------------------------------------------------

inline json embedding_options_to_json(const EmbeddingOptions& opt) {
    return {{"kind", to_string(opt.kind)}, {"samples", opt.samples},
            {"levels", opt.levels},       {"t_min", opt.t_min},
            {"t_max", opt.t_max},         {"sigma", opt.sigma},
            {"pers_max", opt.pers_max}};
}

inline EmbeddingOptions embedding_options_from_json(const json& j) {
    EmbeddingOptions opt;
    opt.kind = embedding_kind_from_string(j.at("kind").get<std::string>());
    opt.samples = j.at("samples").get<std::size_t>();
    opt.levels = j.at("levels").get<std::size_t>();
    opt.t_min = j.at("t_min").get<double>();
    opt.t_max = j.at("t_max").get<double>();
    opt.sigma = j.at("sigma").get<double>();
    opt.pers_max = j.at("pers_max").get<double>();
    return opt;
}

inline json embeddings_to_json(const EmbeddingOptions& opt,
                               const std::vector<std::vector<double>>& vectors,
                               const std::vector<std::string>& names) {
    if (!names.empty() && names.size() != vectors.size())
        throw std::invalid_argument("embeddings_to_json: names/vectors size mismatch");
    json out = {{"options", embedding_options_to_json(opt)}, {"vectors", vectors}};
    if (!names.empty()) out["names"] = names;
    return out;
}

inline std::vector<std::vector<double>> embedding_vectors_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vectors"))
        throw std::invalid_argument("embeddings: expected an object with `vectors`");
    std::vector<std::vector<double>> out;
    for (const auto& row : j["vectors"]) {
        if (!row.is_array()) throw std::invalid_argument("embeddings: vectors must be arrays");
        out.push_back(row.get<std::vector<double>>());
    }
    for (const auto& row : out)
        if (row.size() != out.front().size())
            throw std::invalid_argument("embeddings: vectors differ in length");
    return out;
}

}  // namespace phkm
