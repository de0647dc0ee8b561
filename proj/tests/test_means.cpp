#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "phkm/means.hpp"
#include "phkm/measure.hpp"
#include "phkm/random.hpp"

using namespace phkm;

namespace {

PersistenceDiagram make_diagram(std::vector<std::pair<double, double>> pts, int dim = 1) {
    PersistenceDiagram dgm;
    dgm.dimension = dim;
    for (auto [b, d] : pts) dgm.points.push_back({b, d});
    dgm.normalize();
    return dgm;
}

PersistenceDiagram random_diagram(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    PersistenceDiagram dgm;
    dgm.dimension = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const double b = rng.uniform(0.0, 4.0);
        dgm.points.push_back({b, b + rng.uniform(0.1, 2.5)});
    }
    dgm.normalize();
    return dgm;
}

struct Vec2 {
    double x, y;
};

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Monotone-chain convex hull (counter-clockwise, no interior collinear pts).
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Vec2> hull;
    for (const auto& p : pts) {  // lower chain
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }
    const std::size_t lower = hull.size() + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper chain
        while (hull.size() >= lower && cross(hull[hull.size() - 2], hull.back(), *it) <= 0)
            hull.pop_back();
        hull.push_back(*it);
    }
    hull.pop_back();
    return hull;
}

bool inside_hull(const std::vector<Vec2>& hull, const Vec2& p, double slack) {
    if (hull.empty()) return false;
    if (hull.size() == 1)
        return std::abs(p.x - hull[0].x) <= slack && std::abs(p.y - hull[0].y) <= slack;
    if (hull.size() == 2) {
        // Distance from p to the segment must be within slack.
        const Vec2 a = hull[0], b = hull[1];
        const double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
        double t = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len2;
        t = std::clamp(t, 0.0, 1.0);
        const double dx = p.x - (a.x + t * (b.x - a.x));
        const double dy = p.y - (a.y + t * (b.y - a.y));
        return std::sqrt(dx * dx + dy * dy) <= slack;
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Vec2& a = hull[i];
        const Vec2& b = hull[(i + 1) % hull.size()];
        if (cross(a, b, p) < -slack) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("frechet functional is a sum of squared distances", "[means]") {
    const std::vector<PersistenceDiagram> diagrams = {make_diagram({{0.0, 2.0}}),
                                                      make_diagram({{0.0, 4.0}})};
    CHECK(frechet_function(make_diagram({{0.0, 3.0}}), diagrams) ==
          Catch::Approx(2.0).epsilon(1e-12));
    CHECK(frechet_function(make_diagram({{0.0, 2.0}}), diagrams) ==
          Catch::Approx(4.0).epsilon(1e-12));
    CHECK(frechet_function(make_diagram({}), diagrams) ==
          Catch::Approx(2.0 + 8.0).epsilon(1e-12));
}

TEST_CASE("mean of two aligned single-point diagrams is the midpoint", "[means]") {
    const std::vector<PersistenceDiagram> diagrams = {make_diagram({{0.0, 2.0}}),
                                                      make_diagram({{0.0, 4.0}})};
    const auto result = frechet_mean(diagrams);
    REQUIRE(result.converged);
    REQUIRE(result.mean.points.size() == 1);
    CHECK(result.mean.points[0].birth == Catch::Approx(0.0).margin(1e-12));
    CHECK(result.mean.points[0].death == Catch::Approx(3.0).margin(1e-12));
    CHECK(result.value == Catch::Approx(2.0).margin(1e-12));
    CHECK(result.iterations <= 3);
}

TEST_CASE("diagonal pull moves the mean to the analytic fixed point", "[means]") {
    // Two point diagrams plus an empty one.  The empty diagram keeps tugging
    // the candidate toward the diagonal; balancing the three pulls solves
    // d = b + 2 and d = 5 b, i.e. the fixed point (0.5, 2.5).
    const std::vector<PersistenceDiagram> diagrams = {
        make_diagram({{0.0, 2.0}}), make_diagram({{0.0, 4.0}}), make_diagram({})};

    SECTION("the analytic point is an exact fixed point of the update") {
        const auto fixed = make_diagram({{0.5, 2.5}});
        const auto next = detail::frechet_update(fixed, diagrams);
        REQUIRE(next.points.size() == 1);
        CHECK(next.points[0].birth == 0.5);
        CHECK(next.points[0].death == 2.5);
    }
    SECTION("iteration converges to it") {
        const auto result = frechet_mean(diagrams);
        REQUIRE(result.converged);
        REQUIRE(result.mean.points.size() == 1);
        CHECK(result.mean.points[0].birth == Catch::Approx(0.5).margin(1e-4));
        CHECK(result.mean.points[0].death == Catch::Approx(2.5).margin(1e-4));
        CHECK(result.value == Catch::Approx(5.0).margin(1e-6));
    }
}

TEST_CASE("frechet trace never increases", "[means]") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        std::vector<PersistenceDiagram> diagrams;
        for (std::uint64_t i = 0; i < 4; ++i)
            diagrams.push_back(random_diagram(mix_seed(55, seed, i), 3 + i % 3));
        const auto result = frechet_mean(diagrams);
        REQUIRE(result.trace.size() >= 2);
        for (std::size_t i = 1; i < result.trace.size(); ++i)
            REQUIRE(result.trace[i] <= result.trace[i - 1] + 1e-12);
        CHECK(result.value == result.trace.back());
        CHECK(result.value ==
              Catch::Approx(frechet_function(result.mean, diagrams)).margin(1e-9));
    }
}

TEST_CASE("mean points stay inside the hull of inputs and projections", "[means]") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        std::vector<PersistenceDiagram> diagrams;
        for (std::uint64_t i = 0; i < 3; ++i)
            diagrams.push_back(random_diagram(mix_seed(56, seed, i), 4));

        std::vector<Vec2> generators;
        for (const auto& d : diagrams)
            for (const auto& p : d.points) {
                generators.push_back({p.birth, p.death});
                const double mid = 0.5 * (p.birth + p.death);
                generators.push_back({mid, mid});
            }
        const auto hull = convex_hull(generators);

        const auto result = frechet_mean(diagrams);
        for (const auto& p : result.mean.points) {
            INFO("seed=" << seed << " point=(" << p.birth << ", " << p.death << ")");
            REQUIRE(inside_hull(hull, {p.birth, p.death}, 1e-7));
        }
    }
}

TEST_CASE("warm start from the solution stops immediately", "[means]") {
    std::vector<PersistenceDiagram> diagrams;
    for (std::uint64_t i = 0; i < 4; ++i)
        diagrams.push_back(random_diagram(mix_seed(57, 0, i), 4));
    const auto cold = frechet_mean(diagrams);
    const auto warm = frechet_mean_from(cold.mean, diagrams);
    CHECK(warm.converged);
    CHECK(warm.iterations <= 2);
    CHECK(warm.value <= cold.value + 1e-12);
}

TEST_CASE("frechet mean handles degenerate families", "[means]") {
    SECTION("single diagram is its own mean") {
        const auto d = make_diagram({{0.0, 1.0}, {2.0, 5.0}});
        const auto result = frechet_mean({d});
        REQUIRE(result.converged);
        CHECK(result.value == Catch::Approx(0.0).margin(1e-18));
        REQUIRE(result.mean.points.size() == 2);
        CHECK(result.mean.points[0] == d.points[0]);
        CHECK(result.mean.points[1] == d.points[1]);
    }
    SECTION("all-empty family has the empty mean") {
        const std::vector<PersistenceDiagram> diagrams(3);
        const auto result = frechet_mean(diagrams);
        CHECK(result.converged);
        CHECK(result.mean.points.empty());
        CHECK(result.value == 0.0);
    }
    SECTION("no diagrams throws") {
        CHECK_THROWS_AS(frechet_mean({}), std::invalid_argument);
    }
    SECTION("mismatched homological dimensions throw") {
        CHECK_THROWS_AS(frechet_mean({make_diagram({{0.0, 1.0}}, 0),
                                      make_diagram({{0.0, 1.0}}, 1)}),
                        std::invalid_argument);
    }
    SECTION("invalid options throw") {
        FrechetOptions bad;
        bad.max_iter = 0;
        CHECK_THROWS_AS(frechet_mean({make_diagram({{0.0, 1.0}})}, bad), std::invalid_argument);
        bad.max_iter = 10;
        bad.tol = -1.0;
        CHECK_THROWS_AS(frechet_mean({make_diagram({{0.0, 1.0}})}, bad), std::invalid_argument);
    }
}

TEST_CASE("mean measure averages atoms across the family", "[means]") {
    PersistenceMeasure a, b;
    a.dimension = b.dimension = 1;
    a.atoms.push_back({0.0, 2.0, 1.0});
    b.atoms.push_back({0.0, 4.0, 1.0});
    b.atoms.push_back({1.0, 3.0, 0.5});

    const auto mean = mean_measure({a, b});
    CHECK(mean.dimension == 1);
    CHECK(mean.total_mass() == Catch::Approx((1.0 + 1.5) / 2.0).margin(1e-12));
    REQUIRE(mean.atoms.size() == 3);
    for (const auto& atom : mean.atoms) {
        const bool from_a = atom.birth == 0.0 && atom.death == 2.0;
        const bool from_b1 = atom.birth == 0.0 && atom.death == 4.0;
        const bool from_b2 = atom.birth == 1.0 && atom.death == 3.0;
        REQUIRE((from_a || from_b1 || from_b2));
        CHECK(atom.mass == Catch::Approx(from_b2 ? 0.25 : 0.5).margin(1e-12));
    }

    PersistenceMeasure other_dim;
    other_dim.dimension = 0;
    CHECK_THROWS_AS(mean_measure({a, other_dim}), std::invalid_argument);
    CHECK_THROWS_AS(mean_measure({}), std::invalid_argument);
}
