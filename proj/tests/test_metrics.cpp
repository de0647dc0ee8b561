#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "phkm/measure.hpp"
#include "phkm/metrics.hpp"
#include "phkm/random.hpp"

using namespace phkm;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PersistenceDiagram make_diagram(std::vector<std::pair<double, double>> pts, int dim = 1) {
    PersistenceDiagram dgm;
    dgm.dimension = dim;
    for (auto [b, d] : pts) dgm.points.push_back({b, d});
    dgm.normalize();
    return dgm;
}

PersistenceDiagram random_diagram(std::uint64_t seed, std::size_t max_points) {
    Rng rng(seed);
    PersistenceDiagram dgm;
    dgm.dimension = 1;
    const std::size_t n = rng.integer(max_points + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double b = rng.uniform(0.0, 5.0);
        dgm.points.push_back({b, b + rng.uniform(0.05, 3.0)});
    }
    dgm.normalize();
    return dgm;
}

/// Exhaustive p-Wasserstein oracle: try every injective partial matching,
/// sending unmatched points to the diagonal.
double brute_wasserstein(const PersistenceDiagram& a, const PersistenceDiagram& b, double p,
                         double q) {
    const std::size_t n1 = a.points.size();
    const std::size_t n2 = b.points.size();
    double best = kInf;

    auto gap_p = [&](const DiagramPoint& pt) {
        return detail::power_p(detail::diagonal_gap(pt.birth, pt.death, q), p);
    };

    std::vector<int> match(n1, -1);
    std::vector<bool> used(n2, false);
    auto recurse = [&](auto&& self, std::size_t i, double acc) -> void {
        if (acc >= best) return;
        if (i == n1) {
            double total = acc;
            for (std::size_t j = 0; j < n2; ++j)
                if (!used[j]) total += gap_p(b.points[j]);
            best = std::min(best, total);
            return;
        }
        self(self, i + 1, acc + gap_p(a.points[i]));  // a_i to the diagonal
        for (std::size_t j = 0; j < n2; ++j) {
            if (used[j]) continue;
            used[j] = true;
            const double c = detail::power_p(
                detail::q_norm_distance(a.points[i].birth, a.points[i].death, b.points[j].birth,
                                        b.points[j].death, q),
                p);
            self(self, i + 1, acc + c);
            used[j] = false;
        }
    };
    recurse(recurse, 0, 0.0);
    return std::pow(best, 1.0 / p);
}

}  // namespace

TEST_CASE("wasserstein distance on hand-checked pairs", "[metrics]") {
    const auto single = make_diagram({{0.0, 1.0}});
    const auto empty = make_diagram({});

    SECTION("point against the empty diagram") {
        CHECK(wasserstein(single, empty, 2.0, 2.0) ==
              Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(wasserstein(single, empty, 1.0, 1.0) == Catch::Approx(1.0).epsilon(1e-12));
        CHECK(wasserstein(single, empty, 2.0, kInf) == Catch::Approx(0.5).epsilon(1e-12));
        CHECK(wasserstein(empty, single, 2.0, 2.0) ==
              Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    }
    SECTION("direct match beats the diagonal") {
        const auto a = make_diagram({{0.0, 2.0}});
        const auto b = make_diagram({{0.0, 4.0}});
        CHECK(wasserstein(a, b, 2.0, 2.0) == Catch::Approx(2.0).epsilon(1e-12));
    }
    SECTION("chebyshev ground metric") {
        const auto a = make_diagram({{0.0, 2.0}});
        const auto b = make_diagram({{1.0, 3.0}});
        CHECK(wasserstein(a, b, 2.0, kInf) == Catch::Approx(1.0).epsilon(1e-12));
    }
    SECTION("diagonal beats a far-away match") {
        const auto a = make_diagram({{0.0, 1.0}});
        const auto b = make_diagram({{10.0, 11.0}});
        CHECK(wasserstein(a, b, 2.0, 2.0) == Catch::Approx(1.0).epsilon(1e-12));
    }
    SECTION("empty vs empty") {
        CHECK(wasserstein(empty, empty) == 0.0);
    }
}

TEST_CASE("wasserstein matches exhaustive matching search", "[metrics]") {
    const double qs[] = {1.0, 2.0, kInf};
    const double ps[] = {1.0, 2.0};
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto a = random_diagram(mix_seed(71, seed, 0), 4);
        const auto b = random_diagram(mix_seed(71, seed, 1), 4);
        for (double p : ps)
            for (double q : qs) {
                INFO("seed=" << seed << " p=" << p << " q=" << q);
                CHECK(wasserstein(a, b, p, q) ==
                      Catch::Approx(brute_wasserstein(a, b, p, q)).margin(1e-10));
            }
    }
}

TEST_CASE("wasserstein is a metric on sampled diagrams", "[metrics]") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto a = random_diagram(mix_seed(72, seed, 0), 5);
        const auto b = random_diagram(mix_seed(72, seed, 1), 5);
        const auto c = random_diagram(mix_seed(72, seed, 2), 5);
        CHECK(wasserstein(a, a) == 0.0);
        CHECK(std::abs(wasserstein(a, b) - wasserstein(b, a)) <= 1e-12);
        CHECK(wasserstein(a, c) <= wasserstein(a, b) + wasserstein(b, c) + 1e-9);
    }
}

TEST_CASE("wasserstein plan covers every point exactly once", "[metrics]") {
    const auto a = random_diagram(mix_seed(73, 0, 0), 5);
    const auto b = random_diagram(mix_seed(73, 0, 1), 4);
    const auto plan = wasserstein_plan(a, b, 2.0, 2.0);

    std::vector<int> src_count(a.points.size(), 0), tgt_count(b.points.size(), 0);
    double total = 0.0;
    for (const auto& pair : plan.pairs) {
        REQUIRE(pair.mass == 1.0);
        REQUIRE((pair.source != kDiagonal || pair.target != kDiagonal));
        double c = 0.0;
        if (pair.source != kDiagonal && pair.target != kDiagonal) {
            const auto& pa = a.points[static_cast<std::size_t>(pair.source)];
            const auto& pb = b.points[static_cast<std::size_t>(pair.target)];
            c = detail::q_norm_distance(pa.birth, pa.death, pb.birth, pb.death, 2.0);
        } else if (pair.source != kDiagonal) {
            const auto& pa = a.points[static_cast<std::size_t>(pair.source)];
            c = detail::diagonal_gap(pa.birth, pa.death, 2.0);
        } else {
            const auto& pb = b.points[static_cast<std::size_t>(pair.target)];
            c = detail::diagonal_gap(pb.birth, pb.death, 2.0);
        }
        total += c * c;
        if (pair.source != kDiagonal) ++src_count[static_cast<std::size_t>(pair.source)];
        if (pair.target != kDiagonal) ++tgt_count[static_cast<std::size_t>(pair.target)];
    }
    for (int c : src_count) CHECK(c == 1);
    for (int c : tgt_count) CHECK(c == 1);
    CHECK(std::sqrt(total) == Catch::Approx(plan.cost).margin(1e-12));
}

TEST_CASE("ot distance on hand-checked measures", "[metrics]") {
    SECTION("extra multiplicity drains to the diagonal") {
        PersistenceMeasure a, b;
        a.dimension = b.dimension = 1;
        a.atoms.push_back({0.0, 2.0, 1.0});
        b.atoms.push_back({0.0, 2.0, 2.0});
        CHECK(ot_distance(a, b, 2.0, 2.0) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(ot_distance(b, a, 2.0, 2.0) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
    SECTION("identical measures are at distance zero") {
        PersistenceMeasure a;
        a.dimension = 1;
        a.atoms.push_back({0.0, 2.0, 0.7});
        a.atoms.push_back({1.0, 4.0, 1.3});
        CHECK(ot_distance(a, a) == 0.0);
    }
    SECTION("fractional masses split optimally") {
        // Half a unit can ride to the nearby atom; the remainder pays the gap.
        PersistenceMeasure a, b;
        a.dimension = b.dimension = 0;
        a.atoms.push_back({0.0, 2.0, 1.0});
        b.atoms.push_back({0.0, 2.5, 0.5});
        const double direct = 0.5;                              // |death gap|
        const double gap_a = (2.0 - 0.0) / std::sqrt(2.0);      // unmatched half of a
        const double gap_b = 0.0;                               // b fully served
        const double expect = std::sqrt(0.5 * direct * direct + 0.5 * gap_a * gap_a + gap_b);
        CHECK(ot_distance(a, b, 2.0, 2.0) == Catch::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("ot distance coincides with wasserstein on unit-mass measures", "[metrics]") {
    const double qs[] = {1.0, 2.0, kInf};
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto a = random_diagram(mix_seed(74, seed, 0), 5);
        const auto b = random_diagram(mix_seed(74, seed, 1), 5);
        const auto ma = diagram_to_measure(a);
        const auto mb = diagram_to_measure(b);
        for (double p : {1.0, 2.0})
            for (double q : qs) {
                INFO("seed=" << seed << " p=" << p << " q=" << q);
                CHECK(ot_distance(ma, mb, p, q) ==
                      Catch::Approx(wasserstein(a, b, p, q)).margin(1e-9));
            }
    }
}

TEST_CASE("ot plan conserves mass on both sides", "[metrics]") {
    Rng rng(99);
    PersistenceMeasure a, b;
    a.dimension = b.dimension = 1;
    for (int i = 0; i < 4; ++i) {
        const double ba = rng.uniform(0.0, 3.0);
        a.atoms.push_back({ba, ba + rng.uniform(0.1, 2.0), rng.uniform(0.2, 1.5)});
        const double bb = rng.uniform(0.0, 3.0);
        b.atoms.push_back({bb, bb + rng.uniform(0.1, 2.0), rng.uniform(0.2, 1.5)});
    }
    a.normalize();
    b.normalize();

    const auto plan = ot_plan(a, b, 2.0, 2.0);
    std::vector<double> out(a.atoms.size(), 0.0), in(b.atoms.size(), 0.0);
    for (const auto& pair : plan.pairs) {
        REQUIRE(pair.mass > 0.0);
        if (pair.source != kDiagonal) out[static_cast<std::size_t>(pair.source)] += pair.mass;
        if (pair.target != kDiagonal) in[static_cast<std::size_t>(pair.target)] += pair.mass;
    }
    for (std::size_t i = 0; i < a.atoms.size(); ++i)
        CHECK(out[i] == Catch::Approx(a.atoms[i].mass).margin(1e-9));
    for (std::size_t j = 0; j < b.atoms.size(); ++j)
        CHECK(in[j] == Catch::Approx(b.atoms[j].mass).margin(1e-9));
}

TEST_CASE("ot distance scales with mass as a p-norm", "[metrics]") {
    PersistenceMeasure a, b;
    a.dimension = b.dimension = 1;
    a.atoms.push_back({0.0, 1.0, 0.5});
    a.atoms.push_back({1.0, 3.0, 1.0});
    b.atoms.push_back({0.5, 2.0, 0.8});

    const double base = ot_distance(a, b, 2.0, 2.0);
    PersistenceMeasure a2 = a, b2 = b;
    for (auto& atom : a2.atoms) atom.mass *= 4.0;
    for (auto& atom : b2.atoms) atom.mass *= 4.0;
    CHECK(ot_distance(a2, b2, 2.0, 2.0) == Catch::Approx(2.0 * base).epsilon(1e-9));
}

TEST_CASE("metric functions validate their arguments", "[metrics]") {
    const auto a = make_diagram({{0.0, 1.0}}, 0);
    const auto b = make_diagram({{0.0, 1.0}}, 1);
    CHECK_THROWS_AS(wasserstein(a, b), std::invalid_argument);
    CHECK_THROWS_AS(wasserstein(a, a, 0.5, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(wasserstein(a, a, kInf, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(wasserstein(a, a, 2.0, 0.5), std::invalid_argument);
    CHECK_NOTHROW(wasserstein(a, a, 2.0, kInf));

    PersistenceMeasure ma, mb;
    ma.dimension = 0;
    mb.dimension = 1;
    ma.atoms.push_back({0.0, 1.0, 1.0});
    mb.atoms.push_back({0.0, 1.0, 1.0});
    CHECK_THROWS_AS(ot_distance(ma, mb), std::invalid_argument);
    CHECK_THROWS_AS(ot_distance(ma, ma, 2.0, -1.0), std::invalid_argument);
}
