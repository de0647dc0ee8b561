// phkm: persistent homology + k-means command line tool.
//
// Subcommands cover the full pipeline: simulate shape datasets, compute
// Vietoris-Rips persistence diagrams, embed diagrams as vectors, measure
// distances, average diagrams, cluster datasets with metric k-means, verify
// partial optimality, score clusterings, run the full benchmark, and render
// simple SVG plots.
//
// Exit codes: 0 on success, 1 on usage or validation errors, 2 when a file
// collection was only partially processed.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "phkm/phkm.hpp"

namespace fs = std::filesystem;
using phkm::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPartial = 2;

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

phkm::PersistenceDiagram select_diagram(const std::vector<phkm::PersistenceDiagram>& diagrams,
                                        std::optional<int> degree, const std::string& path) {
    if (degree.has_value()) {
        for (const auto& d : diagrams)
            if (d.dimension == *degree) return d;
        throw std::invalid_argument(path + ": no diagram of degree " + std::to_string(*degree));
    }
    if (diagrams.size() == 1) return diagrams.front();
    throw std::invalid_argument(path + ": contains several degrees, pass --degree");
}

phkm::PersistenceMeasure select_measure(const std::vector<phkm::PersistenceMeasure>& measures,
                                        std::optional<int> degree, const std::string& path) {
    if (degree.has_value()) {
        for (const auto& m : measures)
            if (m.dimension == *degree) return m;
        throw std::invalid_argument(path + ": no measure of degree " + std::to_string(*degree));
    }
    if (measures.size() == 1) return measures.front();
    throw std::invalid_argument(path + ": contains several degrees, pass --degree");
}

struct IndexedDiagrams {
    std::vector<phkm::PersistenceDiagram> diagrams;
    std::vector<std::string> names;
    std::vector<std::string> labels;
    int degree = 0;
};

/// Loads a diagram collection: either an index.json produced by `compute`
/// ({"items": [{"file", "label"}...], "degree": d}) or a list of diagram
/// files given directly.
IndexedDiagrams load_diagram_collection(const std::vector<std::string>& inputs,
                                        std::optional<int> degree) {
    IndexedDiagrams out;
    std::vector<std::pair<std::string, std::string>> files;  // (path, label)

    if (inputs.size() == 1 && !fs::is_directory(inputs.front())) {
        const json j = phkm::read_json_file(inputs.front());
        if (j.is_object() && j.contains("items")) {
            const fs::path base = fs::path(inputs.front()).parent_path();
            if (!degree.has_value() && j.contains("degree")) degree = j["degree"].get<int>();
            for (const auto& item : j["items"]) {
                fs::path p = item.at("file").get<std::string>();
                if (p.is_relative()) p = base / p;
                files.emplace_back(p.string(), item.value("label", p.stem().string()));
            }
        } else {
            files.emplace_back(inputs.front(), fs::path(inputs.front()).stem().string());
        }
    } else {
        for (const auto& f : inputs) files.emplace_back(f, fs::path(f).stem().string());
    }
    if (files.empty()) throw std::invalid_argument("no diagram inputs");

    for (const auto& [path, label] : files) {
        const auto diagrams = phkm::diagrams_from_json(phkm::read_json_file(path));
        out.diagrams.push_back(select_diagram(diagrams, degree, path));
        out.names.push_back(path);
        out.labels.push_back(label);
    }
    out.degree = degree.value_or(out.diagrams.front().dimension);
    return out;
}

phkm::EmbeddingOptions make_embedding_options(const std::string& kind, std::size_t samples,
                                              std::size_t levels, double sigma, double t_min,
                                              double t_max, double pers_max,
                                              const std::vector<phkm::PersistenceDiagram>& dgms) {
    phkm::EmbeddingOptions opt;
    opt.kind = phkm::embedding_kind_from_string(kind);
    opt.samples = samples;
    opt.levels = levels;
    phkm::fit_embedding_ranges(dgms, opt);
    if (t_min < t_max) {
        opt.t_min = t_min;
        opt.t_max = t_max;
    }
    if (pers_max > 0.0) opt.pers_max = pers_max;
    if (sigma > 0.0) opt.sigma = sigma;
    return opt;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string out_dir;
    std::vector<std::string> classes = {"circle", "sphere", "torus"};
    int per_class = 10;
    int points = 200;
    double noise = 0.0;
    std::uint64_t seed = 0;
    double circle_radius = 10.0;
    double sphere_radius = 10.0;
    double torus_major = 10.0;
    double torus_minor = 5.0;
};

int run_simulate(const SimulateArgs& args) {
    phkm::ExperimentConfig cfg;
    cfg.classes = args.classes;
    cfg.points = args.points;
    cfg.per_class = args.per_class;
    cfg.circle_radius = args.circle_radius;
    cfg.sphere_radius = args.sphere_radius;
    cfg.torus_major = args.torus_major;
    cfg.torus_minor = args.torus_minor;
    for (const auto& c : cfg.classes)
        if (c != "circle" && c != "sphere" && c != "torus")
            throw std::invalid_argument("unknown class: " + c);
    if (args.per_class < 1 || args.points < 1)
        throw std::invalid_argument("per-class and points must be positive");
    if (args.noise < 0.0) throw std::invalid_argument("noise must be >= 0");

    fs::create_directories(args.out_dir);
    json manifest;
    manifest["clouds"] = json::array();

    std::size_t idx = 0;
    for (std::size_t c = 0; c < args.classes.size(); ++c) {
        for (int m = 0; m < args.per_class; ++m, ++idx) {
            const std::uint64_t cloud_seed =
                phkm::mix_seed(args.seed, c, static_cast<std::uint64_t>(m));
            phkm::PointCloud pc = phkm::make_shape_cloud(args.classes[c], cfg, cloud_seed);
            if (args.noise > 0.0)
                pc = phkm::add_uniform_noise(pc, args.noise, phkm::mix_seed(cloud_seed, 7777));
            char name[64];
            std::snprintf(name, sizeof(name), "cloud_%03zu.csv", idx);
            phkm::write_point_cloud_csv((fs::path(args.out_dir) / name).string(), pc);
            manifest["clouds"].push_back({{"file", name},
                                          {"label", args.classes[c]},
                                          {"seed", cloud_seed},
                                          {"noise", args.noise}});
        }
    }
    manifest["seed"] = args.seed;
    manifest["points"] = args.points;
    phkm::write_json_file((fs::path(args.out_dir) / "manifest.json").string(), manifest);
    std::cout << "wrote " << idx << " clouds to " << args.out_dir << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// compute
// ---------------------------------------------------------------------------

struct ComputeArgs {
    std::vector<std::string> inputs;  // manifest.json, directory, or CSV files
    std::string mesh_dir;
    std::size_t subsample = 200;
    std::string out_dir;
    double max_scale = 12.0;
    int degree = 1;
    double prune = 0.0;
    unsigned threads = 0;
    std::uint64_t seed = 0;
};

int run_compute(const ComputeArgs& args) {
    if (args.inputs.empty() && args.mesh_dir.empty())
        throw std::invalid_argument("compute: need point cloud inputs or --mesh-dir");
    if (!(args.max_scale > 0.0)) throw std::invalid_argument("compute: max-scale must be > 0");
    if (args.degree < 0) throw std::invalid_argument("compute: degree must be >= 0");
    if (args.prune < 0.0) throw std::invalid_argument("compute: prune must be >= 0");

    std::vector<phkm::PointCloud> clouds;
    std::vector<std::string> labels;
    std::size_t failures = 0;

    if (!args.mesh_dir.empty()) {
        clouds = phkm::ingest_mesh_dir(args.mesh_dir, args.subsample, args.seed, &failures);
        for (const auto& pc : clouds) labels.push_back(pc.label);
    }

    std::vector<std::string> csv_files;
    for (const auto& input : args.inputs) {
        if (fs::is_directory(input)) {
            const fs::path manifest = fs::path(input) / "manifest.json";
            if (fs::exists(manifest)) {
                const json j = phkm::read_json_file(manifest.string());
                for (const auto& item : j.at("clouds"))
                    csv_files.push_back((fs::path(input) / item.at("file").get<std::string>())
                                            .string());
            } else {
                std::vector<std::string> found;
                for (const auto& entry : fs::directory_iterator(input))
                    if (entry.path().extension() == ".csv") found.push_back(entry.path().string());
                std::sort(found.begin(), found.end());
                csv_files.insert(csv_files.end(), found.begin(), found.end());
            }
        } else if (fs::path(input).filename() == "manifest.json") {
            const json j = phkm::read_json_file(input);
            const fs::path base = fs::path(input).parent_path();
            for (const auto& item : j.at("clouds"))
                csv_files.push_back((base / item.at("file").get<std::string>()).string());
        } else {
            csv_files.push_back(input);
        }
    }
    for (const auto& f : csv_files) {
        try {
            phkm::PointCloud pc = phkm::read_point_cloud_csv(f);
            pc.label = fs::path(f).stem().string();
            clouds.push_back(std::move(pc));
            labels.push_back(fs::path(f).stem().string());
        } catch (const std::exception& e) {
            std::cerr << "warning: skipping " << f << ": " << e.what() << '\n';
            ++failures;
        }
    }

    // Labels from a manifest, if one was the source.
    for (const auto& input : args.inputs) {
        fs::path manifest;
        if (fs::is_directory(input) && fs::exists(fs::path(input) / "manifest.json"))
            manifest = fs::path(input) / "manifest.json";
        else if (fs::path(input).filename() == "manifest.json")
            manifest = input;
        if (!manifest.empty()) {
            const json j = phkm::read_json_file(manifest.string());
            std::size_t li = labels.size() - j.at("clouds").size();
            for (const auto& item : j.at("clouds"))
                if (li < labels.size()) labels[li++] = item.value("label", "");
        }
    }

    if (clouds.empty()) throw std::runtime_error("compute: no readable inputs");

    fs::create_directories(args.out_dir);
    std::vector<json> diagram_jsons(clouds.size());
    phkm::parallel_for(
        clouds.size(),
        [&](std::size_t i) {
            auto diagrams = phkm::rips_persistence(clouds[i], args.max_scale, args.degree);
            if (args.prune > 0.0)
                for (auto& d : diagrams) d = phkm::prune_diagram(d, args.prune);
            diagram_jsons[i] = phkm::diagrams_to_json(diagrams);
        },
        args.threads);

    json index;
    index["degree"] = args.degree;
    index["max_scale"] = args.max_scale;
    index["prune"] = args.prune;
    index["items"] = json::array();
    for (std::size_t i = 0; i < clouds.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "diagrams_%03zu.json", i);
        phkm::write_json_file((fs::path(args.out_dir) / name).string(), diagram_jsons[i]);
        index["items"].push_back({{"file", name}, {"label", labels[i]}});
    }
    phkm::write_json_file((fs::path(args.out_dir) / "index.json").string(), index);
    std::cout << "wrote " << clouds.size() << " diagram files to " << args.out_dir << '\n';
    if (failures > 0) {
        std::cerr << failures << " input(s) were skipped\n";
        return kExitPartial;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// embed
// ---------------------------------------------------------------------------

struct EmbedArgs {
    std::vector<std::string> inputs;
    std::string out_file;
    std::string kind = "betti";
    std::optional<int> degree;
    std::size_t samples = 100;
    std::size_t levels = 5;
    double sigma = 0.0;
    double t_min = 0.0, t_max = 0.0, pers_max = 0.0;
};

int run_embed(const EmbedArgs& args) {
    const IndexedDiagrams data = load_diagram_collection(args.inputs, args.degree);
    const phkm::EmbeddingOptions opt =
        make_embedding_options(args.kind, args.samples, args.levels, args.sigma, args.t_min,
                               args.t_max, args.pers_max, data.diagrams);
    std::vector<std::vector<double>> vectors;
    vectors.reserve(data.diagrams.size());
    for (const auto& d : data.diagrams) vectors.push_back(phkm::vectorize_diagram(d, opt));
    phkm::write_json_file(args.out_file, phkm::embeddings_to_json(opt, vectors, data.names));
    std::cout << "wrote " << vectors.size() << " vectors of length "
              << (vectors.empty() ? 0 : vectors.front().size()) << " to " << args.out_file
              << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// dist
// ---------------------------------------------------------------------------

struct DistArgs {
    std::string a, b;
    double p = 2.0;
    std::string q = "2";
    bool measures = false;
    std::optional<int> degree;
    std::string plan_file;
};

double parse_q(const std::string& q) {
    if (q == "inf" || q == "infinity") return std::numeric_limits<double>::infinity();
    return std::stod(q);
}

int run_dist(const DistArgs& args) {
    const double q = parse_q(args.q);
    phkm::TransportPlan plan;
    if (args.measures) {
        const auto ma = select_measure(phkm::measures_from_json(phkm::read_json_file(args.a)),
                                       args.degree, args.a);
        const auto mb = select_measure(phkm::measures_from_json(phkm::read_json_file(args.b)),
                                       args.degree, args.b);
        plan = phkm::ot_plan(ma, mb, args.p, q);
    } else {
        const auto da = select_diagram(phkm::diagrams_from_json(phkm::read_json_file(args.a)),
                                       args.degree, args.a);
        const auto db = select_diagram(phkm::diagrams_from_json(phkm::read_json_file(args.b)),
                                       args.degree, args.b);
        plan = phkm::wasserstein_plan(da, db, args.p, q);
    }
    std::cout.precision(17);
    std::cout << plan.cost << '\n';
    if (!args.plan_file.empty()) phkm::write_json_file(args.plan_file, phkm::plan_to_json(plan));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// mean
// ---------------------------------------------------------------------------

struct MeanArgs {
    std::vector<std::string> inputs;
    std::string out_file;
    std::string trace_file;
    std::optional<int> degree;
    bool measures = false;
    double tol = 1e-9;
    int max_iter = 100;
    std::string init_file;
};

int run_mean(const MeanArgs& args) {
    if (args.measures) {
        std::vector<phkm::PersistenceMeasure> measures;
        for (const auto& f : args.inputs)
            measures.push_back(select_measure(
                phkm::measures_from_json(phkm::read_json_file(f)), args.degree, f));
        const phkm::PersistenceMeasure mean = phkm::mean_measure(measures);
        phkm::write_json_file(args.out_file, phkm::measures_to_json({mean}));
        std::cout << "mean measure: " << mean.atoms.size() << " atoms, total mass "
                  << mean.total_mass() << '\n';
        return kExitOk;
    }

    std::vector<phkm::PersistenceDiagram> diagrams;
    for (const auto& f : args.inputs)
        diagrams.push_back(
            select_diagram(phkm::diagrams_from_json(phkm::read_json_file(f)), args.degree, f));

    phkm::FrechetOptions opt;
    opt.tol = args.tol;
    opt.max_iter = args.max_iter;
    phkm::FrechetResult result;
    if (!args.init_file.empty()) {
        const auto init = select_diagram(
            phkm::diagrams_from_json(phkm::read_json_file(args.init_file)), args.degree,
            args.init_file);
        result = phkm::frechet_mean_from(init, diagrams, opt);
    } else {
        result = phkm::frechet_mean(diagrams, opt);
    }
    phkm::write_json_file(args.out_file, phkm::diagrams_to_json({result.mean}));
    if (!args.trace_file.empty()) {
        json t = {{"value", result.value},
                  {"trace", result.trace},
                  {"iterations", result.iterations},
                  {"converged", result.converged}};
        phkm::write_json_file(args.trace_file, t);
    }
    std::cout.precision(17);
    std::cout << "frechet value " << result.value << " after " << result.iterations
              << " iterations" << (result.converged ? "" : " (not converged)") << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// cluster
// ---------------------------------------------------------------------------

struct ClusterArgs {
    std::vector<std::string> inputs;
    std::string out_file;
    std::string rep = "pd";
    std::optional<int> degree;
    std::size_t k = 2;
    std::uint64_t seed = 0;
    int restarts = 1;
    int max_iter = 50;
    double prune = 0.0;
    std::size_t samples = 100;
    std::size_t levels = 5;
    double sigma = 0.0;
    double tol = 1e-9;
};

template <class Space>
json cluster_to_json(const phkm::KMeansResult<Space>& result,
                     const std::vector<double>& restart_costs) {
    json step = json::array();
    for (const auto& [after_assign, after_update] : result.step_trace)
        step.push_back({after_assign, after_update});
    json labels = json::array();
    for (std::size_t l : result.labels) labels.push_back(l);
    return {{"labels", std::move(labels)},
            {"cost", result.cost},
            {"cost_trace", result.cost_trace},
            {"step_trace", std::move(step)},
            {"iterations", result.iterations},
            {"converged", result.converged},
            {"repairs", result.repairs},
            {"guard_events", result.guard_events},
            {"seed", result.seed},
            {"per_restart_costs", restart_costs}};
}

int run_cluster(const ClusterArgs& args) {
    IndexedDiagrams data = load_diagram_collection(args.inputs, args.degree);
    if (args.prune > 0.0)
        for (auto& d : data.diagrams) d = phkm::prune_diagram(d, args.prune);

    phkm::KMeansOptions opt;
    opt.k = args.k;
    opt.seed = args.seed;
    opt.max_iter = args.max_iter;

    std::vector<double> restart_costs;
    json out;
    if (args.rep == "pd") {
        phkm::DiagramSpace space;
        space.mean_options.tol = args.tol;
        const auto result =
            phkm::kmeans_restarts(space, data.diagrams, opt, args.restarts, &restart_costs);
        out = cluster_to_json(result, restart_costs);
        out["centroid_diagrams"] = phkm::diagrams_to_json(result.centroids);
    } else if (args.rep == "pm") {
        std::vector<phkm::PersistenceMeasure> measures;
        for (const auto& d : data.diagrams) measures.push_back(phkm::diagram_to_measure(d));
        phkm::MeasureSpace space;
        const auto result =
            phkm::kmeans_restarts(space, measures, opt, args.restarts, &restart_costs);
        out = cluster_to_json(result, restart_costs);
        out["centroid_measures"] = phkm::measures_to_json(result.centroids);
    } else {
        const phkm::EmbeddingOptions eopt = make_embedding_options(
            args.rep, args.samples, args.levels, args.sigma, 0.0, 0.0, 0.0, data.diagrams);
        std::vector<std::vector<double>> vectors;
        for (const auto& d : data.diagrams) vectors.push_back(phkm::vectorize_diagram(d, eopt));
        phkm::VectorSpace space;
        const auto result =
            phkm::kmeans_restarts(space, vectors, opt, args.restarts, &restart_costs);
        out = cluster_to_json(result, restart_costs);
        out["centroid_vectors"] = result.centroids;
        out["embedding"] = phkm::embedding_options_to_json(eopt);
    }
    out["representation"] = args.rep;
    out["k"] = args.k;
    out["restarts"] = args.restarts;
    out["degree"] = data.degree;
    out["prune"] = args.prune;
    out["items"] = json::array();
    for (std::size_t i = 0; i < data.names.size(); ++i)
        out["items"].push_back({{"file", data.names[i]}, {"label", data.labels[i]}});

    phkm::write_json_file(args.out_file, out);
    std::cout << "clustered " << data.diagrams.size() << " items into " << args.k
              << " clusters; cost " << out["cost"].get<double>() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// kkt-check
// ---------------------------------------------------------------------------

struct KktArgs {
    std::string result_file;
    std::string out_file;
    int count = 16;
    double scale = 0.05;
    std::uint64_t seed = 0;
    double tol = 1e-7;
};

int run_kkt(const KktArgs& args) {
    const json res = phkm::read_json_file(args.result_file);
    const std::string rep = res.at("representation").get<std::string>();
    std::optional<int> degree;
    if (res.contains("degree")) degree = res["degree"].get<int>();

    std::vector<std::string> files;
    for (const auto& item : res.at("items")) files.push_back(item.at("file").get<std::string>());
    IndexedDiagrams data = load_diagram_collection(files, degree);
    const double prune = res.value("prune", 0.0);
    if (prune > 0.0)
        for (auto& d : data.diagrams) d = phkm::prune_diagram(d, prune);

    std::vector<std::size_t> labels;
    for (const auto& l : res.at("labels")) labels.push_back(l.get<std::size_t>());

    phkm::PerturbationBudget budget;
    budget.count = args.count;
    budget.relative_scale = args.scale;
    budget.seed = args.seed;
    budget.tol = args.tol;

    phkm::KKTReport report;
    if (rep == "pd") {
        const auto centroids = phkm::diagrams_from_json(res.at("centroid_diagrams"));
        phkm::DiagramSpace space;
        report = phkm::verify_partial_optimality(space, data.diagrams, labels, centroids, budget);
    } else if (rep == "pm") {
        std::vector<phkm::PersistenceMeasure> measures;
        for (const auto& d : data.diagrams) measures.push_back(phkm::diagram_to_measure(d));
        const auto centroids = phkm::measures_from_json(res.at("centroid_measures"));
        phkm::MeasureSpace space;
        report = phkm::verify_partial_optimality(space, measures, labels, centroids, budget);
    } else {
        const auto eopt = phkm::embedding_options_from_json(res.at("embedding"));
        std::vector<std::vector<double>> vectors;
        for (const auto& d : data.diagrams) vectors.push_back(phkm::vectorize_diagram(d, eopt));
        std::vector<std::vector<double>> centroids;
        for (const auto& c : res.at("centroid_vectors"))
            centroids.push_back(c.get<std::vector<double>>());
        phkm::VectorSpace space;
        report = phkm::verify_partial_optimality(space, vectors, labels, centroids, budget);
    }

    const json out = phkm::kkt_report_to_json(report);
    if (!args.out_file.empty()) phkm::write_json_file(args.out_file, out);
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

int run_eval(const std::string& pred_file, const std::string& truth_file) {
    auto load_labels = [](const std::string& path) {
        return phkm::labels_from_json(phkm::read_json_file(path));
    };
    const double ari = phkm::adjusted_rand_index(load_labels(pred_file), load_labels(truth_file));
    std::cout.precision(17);
    std::cout << ari << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

int run_experiment_cmd(const std::string& config_file, const std::string& out_dir) {
    phkm::ExperimentConfig cfg;
    if (!config_file.empty())
        cfg = phkm::experiment_config_from_json(phkm::read_json_file(config_file));
    const phkm::ExperimentReport report = phkm::run_experiment(cfg);
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        phkm::write_json_file((fs::path(out_dir) / "report.json").string(),
                              phkm::experiment_report_to_json(report));
    }
    std::cout << phkm::format_report_table(report);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// plot
// ---------------------------------------------------------------------------

struct PlotArgs {
    std::string diagrams_file;
    std::string embedding_file;
    std::string trace_file;
    std::size_t index = 0;
    std::string out_file;
};

int run_plot(const PlotArgs& args) {
    const int sources = (!args.diagrams_file.empty()) + (!args.embedding_file.empty()) +
                        (!args.trace_file.empty());
    if (sources != 1)
        throw std::invalid_argument("plot: pass exactly one of --diagrams/--embedding/--trace");

    if (!args.diagrams_file.empty()) {
        const auto diagrams = phkm::diagrams_from_json(phkm::read_json_file(args.diagrams_file));
        phkm::plot_diagrams_svg(args.out_file, diagrams);
    } else if (!args.embedding_file.empty()) {
        const json j = phkm::read_json_file(args.embedding_file);
        const auto vectors = phkm::embedding_vectors_from_json(j);
        if (args.index >= vectors.size())
            throw std::invalid_argument("plot: --index out of range");
        phkm::plot_series_svg(args.out_file, {vectors[args.index]},
                              {"vector " + std::to_string(args.index)});
    } else {
        const json j = phkm::read_json_file(args.trace_file);
        std::vector<double> trace = j.at("cost_trace").get<std::vector<double>>();
        if (trace.size() < 2) trace.push_back(trace.empty() ? 0.0 : trace.back());
        phkm::plot_series_svg(args.out_file, {trace}, {"k-means cost"});
    }
    std::cout << "wrote " << args.out_file << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistent homology + k-means toolkit"};
    app.require_subcommand(1);

    // simulate ---------------------------------------------------------------
    SimulateArgs sim;
    CLI::App* c_sim = app.add_subcommand("simulate", "sample synthetic shape datasets");
    c_sim->add_option("--out", sim.out_dir, "output directory")->required();
    c_sim->add_option("--classes", sim.classes, "shape classes (circle/sphere/torus)");
    c_sim->add_option("--per-class", sim.per_class, "clouds per class");
    c_sim->add_option("--points", sim.points, "points per cloud");
    c_sim->add_option("--noise", sim.noise, "uniform noise scale");
    c_sim->add_option("--seed", sim.seed, "master seed");
    c_sim->add_option("--circle-radius", sim.circle_radius, "circle radius");
    c_sim->add_option("--sphere-radius", sim.sphere_radius, "sphere radius");
    c_sim->add_option("--torus-major", sim.torus_major, "torus major radius");
    c_sim->add_option("--torus-minor", sim.torus_minor, "torus minor radius");

    // compute ----------------------------------------------------------------
    ComputeArgs comp;
    CLI::App* c_comp = app.add_subcommand("compute", "Vietoris-Rips persistence diagrams");
    c_comp->add_option("--in", comp.inputs, "manifest.json, dataset dir, or CSV files");
    c_comp->add_option("--mesh-dir", comp.mesh_dir, "directory of .off/.obj meshes");
    c_comp->add_option("--subsample", comp.subsample, "mesh subsample size");
    c_comp->add_option("--out", comp.out_dir, "output directory")->required();
    c_comp->add_option("--max-scale", comp.max_scale, "filtration scale cap")->required();
    c_comp->add_option("--degree", comp.degree, "maximum homology degree");
    c_comp->add_option("--prune", comp.prune, "minimum persistence kept");
    c_comp->add_option("--threads", comp.threads, "worker threads (0: PHKM_THREADS/auto)");
    c_comp->add_option("--seed", comp.seed, "subsampling seed");

    // embed ------------------------------------------------------------------
    EmbedArgs emb;
    CLI::App* c_emb = app.add_subcommand("embed", "vectorise persistence diagrams");
    c_emb->add_option("--diagrams", emb.inputs, "index.json or diagram files")->required();
    c_emb->add_option("--out", emb.out_file, "output embeddings JSON")->required();
    c_emb->add_option("--kind", emb.kind, "betti | landscape | image");
    int emb_degree = -1;
    c_emb->add_option("--degree", emb_degree, "homology degree to embed");
    c_emb->add_option("--samples", emb.samples, "grid samples / image resolution");
    c_emb->add_option("--levels", emb.levels, "landscape levels");
    c_emb->add_option("--sigma", emb.sigma, "image Gaussian bandwidth");
    c_emb->add_option("--t-min", emb.t_min, "grid start (default: fitted)");
    c_emb->add_option("--t-max", emb.t_max, "grid end (default: fitted)");
    c_emb->add_option("--pers-max", emb.pers_max, "image persistence cap (default: fitted)");

    // dist -------------------------------------------------------------------
    DistArgs dist;
    CLI::App* c_dist = app.add_subcommand("dist", "distance between two diagrams or measures");
    c_dist->add_option("--a", dist.a, "first file")->required();
    c_dist->add_option("--b", dist.b, "second file")->required();
    c_dist->add_option("--p", dist.p, "Wasserstein order (>= 1)");
    c_dist->add_option("--q", dist.q, "ground norm (>= 1 or 'inf')");
    c_dist->add_flag("--measures", dist.measures, "inputs are persistence measures");
    int dist_degree = -1;
    c_dist->add_option("--degree", dist_degree, "homology degree to compare");
    c_dist->add_option("--plan", dist.plan_file, "write the optimal plan to this file");

    // mean -------------------------------------------------------------------
    MeanArgs mean;
    CLI::App* c_mean = app.add_subcommand("mean", "Frechet mean / measure average");
    c_mean->add_option("--inputs", mean.inputs, "diagram or measure files")->required();
    c_mean->add_option("--out", mean.out_file, "output file")->required();
    c_mean->add_option("--trace", mean.trace_file, "write the objective trace to this file");
    int mean_degree = -1;
    c_mean->add_option("--degree", mean_degree, "homology degree to average");
    c_mean->add_flag("--measures", mean.measures, "average persistence measures instead");
    c_mean->add_option("--tol", mean.tol, "convergence tolerance");
    c_mean->add_option("--max-iter", mean.max_iter, "iteration cap");
    c_mean->add_option("--init", mean.init_file, "initial candidate diagram file");

    // cluster ----------------------------------------------------------------
    ClusterArgs clus;
    CLI::App* c_clus = app.add_subcommand("cluster", "metric k-means over a representation");
    c_clus->add_option("--diagrams", clus.inputs, "index.json or diagram files")->required();
    c_clus->add_option("--out", clus.out_file, "output result JSON")->required();
    c_clus->add_option("--rep", clus.rep, "pd | pm | betti | landscape | image");
    int clus_degree = -1;
    c_clus->add_option("--degree", clus_degree, "homology degree to cluster");
    c_clus->add_option("--k", clus.k, "number of clusters")->required();
    c_clus->add_option("--seed", clus.seed, "clustering seed");
    c_clus->add_option("--restarts", clus.restarts, "independent restarts");
    c_clus->add_option("--max-iter", clus.max_iter, "iteration cap");
    c_clus->add_option("--prune", clus.prune, "minimum persistence kept");
    c_clus->add_option("--samples", clus.samples, "embedding grid samples");
    c_clus->add_option("--levels", clus.levels, "landscape levels");
    c_clus->add_option("--sigma", clus.sigma, "image Gaussian bandwidth");
    c_clus->add_option("--tol", clus.tol, "Frechet mean tolerance");

    // kkt-check --------------------------------------------------------------
    KktArgs kkt;
    CLI::App* c_kkt = app.add_subcommand("kkt-check", "verify partial optimality of a result");
    c_kkt->add_option("--result", kkt.result_file, "cluster result JSON")->required();
    c_kkt->add_option("--out", kkt.out_file, "write the report to this file");
    c_kkt->add_option("--count", kkt.count, "perturbation probes per centroid");
    c_kkt->add_option("--scale", kkt.scale, "relative perturbation scale");
    c_kkt->add_option("--seed", kkt.seed, "probe seed");
    c_kkt->add_option("--tol", kkt.tol, "optimality tolerance");

    // eval -------------------------------------------------------------------
    std::string eval_pred, eval_truth;
    CLI::App* c_eval = app.add_subcommand("eval", "adjusted Rand index of two labelings");
    c_eval->add_option("--pred", eval_pred, "predicted labels JSON")->required();
    c_eval->add_option("--truth", eval_truth, "ground-truth labels JSON")->required();

    // experiment ---------------------------------------------------------------
    std::string exp_config, exp_out;
    CLI::App* c_exp = app.add_subcommand("experiment", "full clustering benchmark");
    c_exp->add_option("--config", exp_config, "experiment config JSON (defaults if omitted)");
    c_exp->add_option("--out", exp_out, "output directory for report.json");

    // plot -------------------------------------------------------------------
    PlotArgs plot;
    CLI::App* c_plot = app.add_subcommand("plot", "render diagrams/embeddings/traces as SVG");
    c_plot->add_option("--diagrams", plot.diagrams_file, "diagram file to scatter-plot");
    c_plot->add_option("--embedding", plot.embedding_file, "embedding file to plot");
    c_plot->add_option("--trace", plot.trace_file, "cluster result whose cost trace to plot");
    c_plot->add_option("--index", plot.index, "embedding vector index");
    c_plot->add_option("--out", plot.out_file, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (*c_sim) return run_simulate(sim);
        if (*c_comp) return run_compute(comp);
        if (*c_emb) {
            if (emb_degree >= 0) emb.degree = emb_degree;
            return run_embed(emb);
        }
        if (*c_dist) {
            if (dist_degree >= 0) dist.degree = dist_degree;
            return run_dist(dist);
        }
        if (*c_mean) {
            if (mean_degree >= 0) mean.degree = mean_degree;
            return run_mean(mean);
        }
        if (*c_clus) {
            if (clus_degree >= 0) clus.degree = clus_degree;
            return run_cluster(clus);
        }
        if (*c_kkt) return run_kkt(kkt);
        if (*c_eval) return run_eval(eval_pred, eval_truth);
        if (*c_exp) return run_experiment_cmd(exp_config, exp_out);
        if (*c_plot) return run_plot(plot);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    std::cerr << "error: no subcommand\n";
    return kExitError;
}
