#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "phkm/mesh.hpp"

using namespace phkm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("phkm_mesh_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream(path) << content;
}

}  // namespace

TEST_CASE("off parser reads vertices and ignores faces", "[mesh]") {
    TempDir tmp;
    SECTION("counts on the header line") {
        const auto path = tmp.file("a.off");
        write_file(path,
                   "OFF 3 1 0\n"
                   "0 0 0\n"
                   "1.5 0 0\n"
                   "0 2.5 1\n"
                   "3 0 1 2\n");
        const auto pc = read_off(path);
        REQUIRE(pc.size() == 3);
        CHECK(pc.dim == 3);
        CHECK(pc.at(1, 0) == 1.5);
        CHECK(pc.at(2, 1) == 2.5);
        CHECK(pc.label == "a");
    }
    SECTION("counts on the following line, with comments") {
        const auto path = tmp.file("b.off");
        write_file(path,
                   "# comment first\n"
                   "OFF\n"
                   "# vertices faces edges\n"
                   "2 0 0\n"
                   "1 2 3\n"
                   "4 5 6\n");
        const auto pc = read_off(path);
        REQUIRE(pc.size() == 2);
        CHECK(pc.at(0, 2) == 3.0);
        CHECK(pc.at(1, 0) == 4.0);
    }
    SECTION("colored header variant") {
        const auto path = tmp.file("c.off");
        write_file(path, "COFF 1 0 0\n7 8 9 255 255 255\n");
        const auto pc = read_off(path);
        REQUIRE(pc.size() == 1);
        CHECK(pc.at(0, 0) == 7.0);
    }
    SECTION("malformed files throw") {
        const auto bad_magic = tmp.file("bad1.off");
        write_file(bad_magic, "PLY 1 0 0\n0 0 0\n");
        CHECK_THROWS_AS(read_off(bad_magic), std::runtime_error);

        const auto truncated = tmp.file("bad2.off");
        write_file(truncated, "OFF 5 0 0\n0 0 0\n");
        CHECK_THROWS_AS(read_off(truncated), std::runtime_error);

        const auto empty = tmp.file("bad3.off");
        write_file(empty, "");
        CHECK_THROWS_AS(read_off(empty), std::runtime_error);

        const auto no_verts = tmp.file("bad4.off");
        write_file(no_verts, "OFF 0 0 0\n");
        CHECK_THROWS_AS(read_off(no_verts), std::runtime_error);
    }
}

TEST_CASE("obj parser keeps only vertex records", "[mesh]") {
    TempDir tmp;
    const auto path = tmp.file("model.obj");
    write_file(path,
               "# a comment\n"
               "o thing\n"
               "v 1 2 3\n"
               "vn 0 0 1\n"
               "vt 0.5 0.5\n"
               "v -1 -2 -3\n"
               "f 1 2\n");
    const auto pc = read_obj(path);
    REQUIRE(pc.size() == 2);
    CHECK(pc.at(0, 1) == 2.0);
    CHECK(pc.at(1, 2) == -3.0);
    CHECK(pc.label == "model");

    const auto bad = tmp.file("bad.obj");
    write_file(bad, "v 1 2\n");
    CHECK_THROWS_AS(read_obj(bad), std::runtime_error);

    const auto none = tmp.file("none.obj");
    write_file(none, "f 1 2 3\n");
    CHECK_THROWS_AS(read_obj(none), std::runtime_error);
}

TEST_CASE("mesh loading dispatches on the file extension", "[mesh]") {
    TempDir tmp;
    const auto off_path = tmp.file("shape.OFF");  // uppercase extension
    write_file(off_path, "OFF 1 0 0\n1 1 1\n");
    CHECK(load_mesh_vertices(off_path).size() == 1);

    const auto obj_path = tmp.file("shape.obj");
    write_file(obj_path, "v 0 0 0\n");
    CHECK(load_mesh_vertices(obj_path).size() == 1);

    CHECK_THROWS_AS(load_mesh_vertices(tmp.file("shape.stl")), std::invalid_argument);
}

TEST_CASE("subsample draws a sorted subset deterministically", "[mesh]") {
    PointCloud pc(2, 50);
    for (std::size_t i = 0; i < 50; ++i) {
        pc.at(i, 0) = static_cast<double>(i);
        pc.at(i, 1) = static_cast<double>(i) * 0.5;
    }

    const auto sub = subsample(pc, 12, 99);
    REQUIRE(sub.size() == 12);
    CHECK(sub.dim == 2);
    CHECK(sub.seed == 99);

    // Every output point is an input point, in increasing original order.
    double prev = -1.0;
    for (std::size_t i = 0; i < sub.size(); ++i) {
        const double x = sub.at(i, 0);
        CHECK(x > prev);
        prev = x;
        CHECK(sub.at(i, 1) == x * 0.5);
    }

    const auto again = subsample(pc, 12, 99);
    CHECK(again.coords == sub.coords);
    const auto other = subsample(pc, 12, 100);
    CHECK(other.coords != sub.coords);

    SECTION("small clouds pass through unchanged") {
        const auto same = subsample(pc, 50, 1);
        CHECK(same.coords == pc.coords);
        const auto bigger = subsample(pc, 200, 1);
        CHECK(bigger.coords == pc.coords);
    }
    SECTION("zero target is rejected") {
        CHECK_THROWS_AS(subsample(pc, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("directory ingestion skips unreadable meshes", "[mesh]") {
    TempDir tmp;
    write_file(tmp.file("01_good.off"), "OFF 2 0 0\n0 0 0\n1 1 1\n");
    write_file(tmp.file("02_broken.off"), "OFF 9 0 0\n0 0 0\n");  // truncated
    write_file(tmp.file("03_good.obj"), "v 1 2 3\nv 4 5 6\nv 7 8 9\n");
    write_file(tmp.file("notes.txt"), "not a mesh");

    std::size_t failures = 0;
    const auto clouds = ingest_mesh_dir(tmp.path.string(), 2, 5, &failures);
    REQUIRE(clouds.size() == 2);
    CHECK(failures == 1);
    CHECK(clouds[0].label == "01_good");
    CHECK(clouds[0].size() == 2);
    CHECK(clouds[1].label == "03_good");
    CHECK(clouds[1].size() == 2);  // subsampled from 3

    CHECK_THROWS_AS(ingest_mesh_dir(tmp.file("missing_dir"), 2, 5), std::invalid_argument);
}
