#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "phkm/point_cloud.hpp"
#include "phkm/random.hpp"

namespace phkm {

namespace detail {

inline std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

inline bool content_line(const std::string& line) {
    for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) return c != '#';
    return false;
}

}  // namespace detail

/// Vertex positions of an OFF mesh (faces are ignored).
inline PointCloud read_off(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);

    std::string line;
    auto next_line = [&](std::string& out) {
        while (std::getline(in, line))
            if (detail::content_line(line)) {
                out = line;
                return true;
            }
        return false;
    };

    std::string header;
    if (!next_line(header)) throw std::runtime_error(path + ": empty OFF file");
    std::stringstream hs(header);
    std::string magic;
    hs >> magic;
    std::size_t nv = 0, nf = 0, ne = 0;
    if (magic != "OFF" && magic != "COFF" && magic != "NOFF")
        throw std::runtime_error(path + ": missing OFF header");
    if (!(hs >> nv)) {  // counts may be on the line after the magic word
        std::string counts;
        if (!next_line(counts)) throw std::runtime_error(path + ": missing OFF counts");
        std::stringstream cs(counts);
        if (!(cs >> nv >> nf >> ne)) throw std::runtime_error(path + ": bad OFF counts");
    } else {
        hs >> nf >> ne;
    }
    if (nv == 0) throw std::runtime_error(path + ": OFF mesh has no vertices");

    PointCloud pc(3, nv);
    for (std::size_t i = 0; i < nv; ++i) {
        std::string vline;
        if (!next_line(vline)) throw std::runtime_error(path + ": truncated vertex list");
        std::stringstream vs(vline);
        double x, y, z;
        if (!(vs >> x >> y >> z)) throw std::runtime_error(path + ": bad vertex line");
        pc.at(i, 0) = x;
        pc.at(i, 1) = y;
        pc.at(i, 2) = z;
    }
    pc.label = std::filesystem::path(path).stem().string();
    return pc;
}

/// Vertex positions of a Wavefront OBJ mesh ("v" records only).
inline PointCloud read_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    PointCloud pc;
    pc.dim = 3;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::stringstream ss(line);
        std::string tag;
        if (!(ss >> tag)) continue;
        if (tag != "v") continue;
        double x, y, z;
        if (!(ss >> x >> y >> z))
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad vertex line");
        pc.coords.insert(pc.coords.end(), {x, y, z});
    }
    if (pc.size() == 0) throw std::runtime_error(path + ": OBJ mesh has no vertices");
    pc.label = std::filesystem::path(path).stem().string();
    return pc;
}

/// Loads mesh vertices by file extension (.off or .obj).
inline PointCloud load_mesh_vertices(const std::string& path) {
    const std::string ext = detail::lowercase(std::filesystem::path(path).extension().string());
    if (ext == ".off") return read_off(path);
    if (ext == ".obj") return read_obj(path);
    throw std::invalid_argument("unsupported mesh format: " + path);
}

/// Uniform subsample without replacement down to `target` points (identity if
/// the cloud is already small enough).  Deterministic in the seed.
inline PointCloud subsample(const PointCloud& pc, std::size_t target, std::uint64_t seed) {
    if (target == 0) throw std::invalid_argument("subsample: target must be positive");
    const std::size_t n = pc.size();
    if (n <= target) return pc;

    std::vector<std::size_t> index(n);
    for (std::size_t i = 0; i < n; ++i) index[i] = i;
    Rng rng(seed);
    for (std::size_t i = 0; i < target; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.integer(n - i));
        std::swap(index[i], index[j]);
    }
    index.resize(target);
    std::sort(index.begin(), index.end());

    PointCloud out(pc.dim, target);
    for (std::size_t i = 0; i < target; ++i)
        for (std::size_t d = 0; d < pc.dim; ++d) out.at(i, d) = pc.at(index[i], d);
    out.label = pc.label;
    out.seed = seed;
    return out;
}

/// Loads every .off/.obj mesh under a directory (sorted by path for
/// determinism) and subsamples each to `target` vertices.  Unreadable files
/// are skipped with a warning; their count is reported through `failures`.
inline std::vector<PointCloud> ingest_mesh_dir(const std::string& dir, std::size_t target,
                                               std::uint64_t seed,
                                               std::size_t* failures = nullptr) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir);

    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = detail::lowercase(entry.path().extension().string());
        if (ext == ".off" || ext == ".obj") files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());

    std::vector<PointCloud> clouds;
    std::size_t failed = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
        try {
            PointCloud pc = load_mesh_vertices(files[i]);
            clouds.push_back(subsample(pc, target, mix_seed(seed, i)));
        } catch (const std::exception& e) {
            std::cerr << "warning: skipping " << files[i] << ": " << e.what() << '\n';
            ++failed;
        }
    }
    if (failures != nullptr) *failures = failed;
    return clouds;
}

}  // namespace phkm
