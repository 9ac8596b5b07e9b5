#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "isoclust/errors.hpp"
#include "isoclust/measure.hpp"

using namespace isoclust;

namespace {

const double R = standard_lens_radius();

// Closed forms evaluated with mpmath at 30 digits.
constexpr double kLensPerimeterB2 = 6.216636820598951;
constexpr double kLensPerimeterB1 = 4.216636820598951;
constexpr double kSymmetricDoubleBubblePerimeter = 6.359129253959746;

}  // namespace

TEST_SUITE("measure") {

TEST_CASE("lens areas") {
    const DiscreteCluster c = build_standard_lens(Window::disk(2.0), 2048);
    CHECK(std::fabs(chamber_area(c, "E1") - 1.0) < 1e-6);
    CHECK(std::fabs(chamber_area(c, "F1") - (4 * M_PI - 1) / 2) < 1e-4);
    CHECK(std::fabs(chamber_area(c, "F1") + chamber_area(c, "F2") + chamber_area(c, "E1") - 4 * M_PI) < 4e-4 * M_PI);
    CHECK_THROWS_AS(chamber_area(c, "Z"), DomainError);
}

TEST_CASE("lens relative perimeter") {
    const DiscreteCluster c = build_standard_lens(Window::disk(2.0), 2048);
    const double closed_b2 = 4 * M_PI * R / 3 + 2 * (2 - std::sqrt(3.0) / 2 * R);
    CHECK(closed_b2 == doctest::Approx(kLensPerimeterB2).epsilon(1e-14));
    CHECK(std::fabs(relative_perimeter(c, Window::disk(2.0)) - kLensPerimeterB2) < 1e-4);
    CHECK(std::fabs(relative_perimeter(c, Window::disk(1.0)) - kLensPerimeterB1) < 1e-4);
    CHECK(relative_perimeter(c, Window::disk(1e-6, {0.0, 1.5})) == 0.0);
    CHECK_THROWS_AS(relative_perimeter(c, Window::disk(2.5)), DomainError);
    CHECK_THROWS_AS(relative_perimeter(c, Window::disk(1.0, {1.5, 0.0})), DomainError);
}

TEST_CASE("relative perimeter is monotone in the window") {
    const DiscreteCluster c = build_standard_lens(Window::disk(3.0), 512);
    gen::Source src(8);
    for (int i = 0; i < 100; ++i) {
        const Vec2 center{src.uniform(-1, 1), src.uniform(-1, 1)};
        const double r2 = src.uniform(0.1, 3.0 - norm(center));
        const double r1 = src.uniform(0.0, r2);
        const Vec2 shift = from_polar(src.uniform(0, r2 - r1), src.uniform(0, 2 * M_PI));
        const Window outer = Window::disk(r2, center);
        const Window inner = Window::disk(std::max(r1, 1e-9), center + shift);
        CHECK(relative_perimeter(c, inner) <= relative_perimeter(c, outer) + 1e-12);
    }
}

TEST_CASE("symmetric double bubble perimeter") {
    const DoubleBubbleGeometry g = solve_double_bubble(1.0);
    const DiscreteCluster c = build_double_bubble(g, Window::disk(2.0), 2048);
    const double closed = g.r1 * 2 * g.theta1 * 2 + 2 * g.r1 * std::sin(g.theta1);
    CHECK(closed == doctest::Approx(kSymmetricDoubleBubblePerimeter).epsilon(1e-14));
    CHECK(std::fabs(relative_perimeter(c, Window::disk(2.0)) - closed) < 1e-3);
}

TEST_CASE("perimeter halving") {
    for (const DiscreteCluster& c :
         {build_standard_lens(Window::disk(2.0), 2048), build_double_bubble(solve_double_bubble(7.0), Window::disk(2.0), 512),
          build_conjecture_seed(ConjectureShape::chalk, Window::disk(3.0), 128)}) {
        for (const Window sub : {c.window, Window::disk(1.0), Window::rect(0.5, 0.3, {0.2, 0.1})}) {
            const double p = relative_perimeter(c, sub);
            CHECK(perimeter_halving_check(c, sub) < 1e-9 * (1 + p));
        }
    }
}

TEST_CASE("label duplication breaks halving by the interface length") {
    DiscreteCluster c = build_standard_lens(Window::disk(2.0), 256);
    Interface& ray = c.interfaces[2];
    ray.right = ray.left;
    const double len = relative_perimeter(DiscreteCluster{c.window, {}, {ray}, {}}, c.window);
    CHECK(perimeter_halving_check(c, c.window) == doctest::Approx(len).epsilon(1e-12));
}

TEST_CASE("distance to itself") {
    const DiscreteCluster c = build_standard_lens(Window::disk(2.0), 2048);
    const DistanceResult d = cluster_distance(c, c, Window::disk(2.0), {}, identity_pairing(c));
    CHECK(d.value < 1e-4);
    CHECK(d.value == 0.0);
}

TEST_CASE("distance under translation") {
    const Window w = Window::disk(2.0);
    const double delta = 1e-2;
    const DiscreteCluster a = build_standard_lens(w, 2048);
    const DiscreteCluster b = fixtures::shifted_lens(w, 2048, delta);
    QuadratureParams q;
    q.tolerance = 1e-6;
    q.max_refinements = 6;
    const DistanceResult d = cluster_distance(a, b, w, q, identity_pairing(a));
    // oracle: exact chamber membership on a fine grid; E1 twice, F1 and F2 once each
    const double e1 = fixtures::grid_area({-1, -1}, {1, 1}, 6000, [&](Vec2 p) {
        return fixtures::in_lens(p, R, {0, 0}) != fixtures::in_lens(p, R, {delta, 0});
    });
    CHECK(e1 == doctest::Approx(2 * delta * R).epsilon(0.01));
    CHECK(d.value == doctest::Approx(2 * e1).epsilon(2e-3));

    // symmetry under the inverse pairing
    const DistanceResult back = cluster_distance(b, a, w, q, identity_pairing(b));
    CHECK(std::fabs(back.value - d.value) < 2 * q.tolerance);
}

TEST_CASE("triangle inequality") {
    const Window w = Window::disk(2.0);
    const QuadratureParams q;
    gen::Source src(31);
    for (int i = 0; i < 4; ++i) {
        const DiscreteCluster a = fixtures::shifted_lens(w, 256, src.uniform(-0.3, 0.3));
        const DiscreteCluster b = fixtures::shifted_lens(w, 256, src.uniform(-0.3, 0.3));
        const DiscreteCluster c = fixtures::shifted_lens(w, 256, src.uniform(-0.3, 0.3));
        const auto p = identity_pairing(a);
        const double ab = cluster_distance(a, b, w, q, p).value;
        const double bc = cluster_distance(b, c, w, q, p).value;
        const double ac = cluster_distance(a, c, w, q, p).value;
        CHECK(ac <= ab + bc + 3 * q.tolerance);
    }
}

TEST_CASE("pairing is checked") {
    const DiscreteCluster c = build_standard_lens(Window::disk(2.0), 64);
    LabelPairing bad = identity_pairing(c);
    bad[1].second = "F2";
    CHECK_THROWS_AS(cluster_distance(c, c, c.window, {}, bad), DomainError);
    bad.pop_back();
    CHECK_THROWS_AS(cluster_distance(c, c, c.window, {}, bad), DomainError);
}

TEST_CASE("refinement budget") {
    const DiscreteCluster a = build_standard_lens(Window::disk(2.0), 256);
    const DiscreteCluster b = build_lens(Window::disk(2.0), 1.1 * R, 256);
    QuadratureParams q;
    q.tolerance = 1e-14;
    q.max_refinements = 1;
    CHECK_THROWS_AS(cluster_distance(a, b, a.window, q, identity_pairing(a)), ConvergenceError);
    q.initial_grid = 100;
    CHECK_THROWS_AS(cluster_distance(a, b, a.window, q, identity_pairing(a)), DomainError);
}

TEST_CASE("hausdorff") {
    const std::vector<std::vector<Vec2>> a{{{0, 0}, {1, 0}}};
    const std::vector<std::vector<Vec2>> b{{{0, 0.5}, {1, 0.5}}};
    CHECK(hausdorff_distance(a, b) == doctest::Approx(0.5));
    const DiscreteCluster c = build_standard_lens(Window::disk(2.0), 512);
    CHECK(interface_hausdorff(c, c) == 0.0);
    CHECK(interface_hausdorff(c, fixtures::shifted_lens(Window::disk(2.0), 512, 0.01)) ==
          doctest::Approx(0.01 * std::sqrt(3.0) / 2).epsilon(1e-3));
}

}  // TEST_SUITE
