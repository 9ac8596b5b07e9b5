#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "isoclust/errors.hpp"
#include "isoclust/window.hpp"

using namespace isoclust;

TEST_SUITE("window") {

TEST_CASE("construction") {
    CHECK_THROWS_AS(Window::disk(0.0), DomainError);
    CHECK_THROWS_AS(Window::rect(1.0, -1.0), DomainError);
    CHECK(Window::disk(2.0).area() == doctest::Approx(4 * M_PI));
    CHECK(Window::rect(1.0, 2.0).area() == 8.0);
}

TEST_CASE("containment") {
    const Window big = Window::disk(2.0);
    CHECK(big.contains(Window::disk(1.0)));
    CHECK(big.contains(Window::disk(1.0, {0.9, 0.0})));
    CHECK_FALSE(big.contains(Window::disk(1.0, {1.1, 0.0})));
    CHECK(big.contains(Window::rect(1.0, 1.0)));
    CHECK_FALSE(big.contains(Window::rect(1.5, 1.5)));
    CHECK(Window::rect(2, 1).contains(Window::disk(1.0)));
}

TEST_CASE("boundary coordinates round trip") {
    gen::Source src(9);
    for (const Window w : {Window::disk(1.7), Window::rect(2.0, 0.5)}) {
        const double L = w.boundary_length();
        for (int i = 0; i < 100; ++i) {
            const double s = src.uniform(0.0, L);
            const Vec2 p = w.boundary_point(s);
            CHECK(std::fabs(w.inset(p)) < 1e-12);
            CHECK(w.boundary_coordinate(p) == doctest::Approx(s).epsilon(1e-12));
        }
        const auto loop = w.outline(L / 100);
        double len = 0.0;
        for (std::size_t i = 0; i < loop.size(); ++i) len += distance(loop[i], loop[(i + 1) % loop.size()]);
        CHECK(len <= L + 1e-12);
        CHECK(len > 0.999 * L);
    }
}

TEST_CASE("clipped length against dense sampling") {
    gen::Source src(21);
    for (const Window w : {Window::disk(1.0, {0.2, -0.1}), Window::rect(1.0, 0.6, {0.1, 0.1})}) {
        for (int i = 0; i < 200; ++i) {
            const Vec2 a = src.point_in_box(2.0), b = src.point_in_box(2.0);
            const int n = 20000;
            int in = 0;
            for (int k = 0; k < n; ++k) in += w.inset(a + (b - a) * ((k + 0.5) / n)) > 0.0;
            CHECK(w.clipped_length(a, b) == doctest::Approx(distance(a, b) * in / n).epsilon(1e-3).scale(1.0));
        }
    }
}

}  // TEST_SUITE
