#include <cmath>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "isoclust/kernels.hpp"

using namespace isoclust;

namespace {

std::vector<Vec2> random_polyline(gen::Source& src, int n) {
    std::vector<Vec2> p;
    Vec2 at{src.uniform(-1, 1), src.uniform(-1, 1)};
    for (int i = 0; i < n; ++i) {
        at += Vec2{src.uniform(-0.1, 0.1), src.uniform(-0.1, 0.1)};
        p.push_back(at);
    }
    return p;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference values") {
    const auto& k = kernels::scalar_table();
    const std::vector<Vec2> square{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    CHECK(k.signed_area(square.data(), 4) == 4.0);
    CHECK(k.polyline_length(square.data(), 4) == 6.0);
    std::vector<Vec2> cw(square.rbegin(), square.rend());
    CHECK(k.signed_area(cw.data(), 4) == -4.0);

    // regular polygon on the unit circle: turning angle 2pi/n, mean edge 2 sin(pi/n)
    const int n = 64;
    std::vector<Vec2> circle;
    for (int i = 0; i < n; ++i) circle.push_back(from_polar(1.0, 2 * M_PI * i / n));
    std::vector<double> kappa(n - 2), mass(n - 2);
    std::vector<Vec2> normal(n - 2);
    k.turning(circle.data(), n, kappa.data(), normal.data(), mass.data());
    for (int i = 0; i < n - 2; ++i) {
        CHECK(kappa[i] == doctest::Approx((2 * M_PI / n) / (2 * std::sin(M_PI / n))).epsilon(1e-13));
        CHECK(dot(normal[i], circle[i + 1]) == doctest::Approx(-1.0).epsilon(1e-13));
    }

    kernels::ScanEdges e;
    e.add({0, 0}, {1, 2});
    e.add({1, 2}, {3, 2});  // horizontal, dropped
    e.add({3, 2}, {0, 0});
    CHECK(e.size() == 2);
    double out[2];
    CHECK(k.row_crossings(e.y_lo.data(), e.y_hi.data(), e.x_lo.data(), e.dxdy.data(), 2, 1.0, out) == 2);
    CHECK(out[0] == 0.5);
    CHECK(out[1] == 1.5);
    // half-open at the top
    CHECK(k.row_crossings(e.y_lo.data(), e.y_hi.data(), e.x_lo.data(), e.dxdy.data(), 2, 2.0, out) == 0);
}

TEST_CASE("straight and degenerate turning") {
    const auto& k = kernels::scalar_table();
    const std::vector<Vec2> line{{0, 0}, {1, 0}, {2.5, 0}, {3, 0}};
    double kappa[2], mass[2];
    Vec2 normal[2];
    k.turning(line.data(), 4, kappa, normal, mass);
    CHECK(kappa[0] == 0.0);
    CHECK(kappa[1] == 0.0);
    CHECK(mass[0] == 1.25);
    const std::vector<Vec2> cusp{{0, 0}, {1, 0}, {0, 0}};
    k.turning(cusp.data(), 3, kappa, normal, mass);
    CHECK(std::fabs(kappa[0]) == doctest::Approx(M_PI));
}

TEST_CASE("simd variant agrees with the reference") {
    const kernels::KernelTable* simd = kernels::avx2_table();
    if (!simd) {
        MESSAGE("no AVX2 variant in this build or CPU");
        return;
    }
    const auto& ref = kernels::scalar_table();
    gen::Source src(77);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = src.integer(0, 300);
        const auto p = random_polyline(src, n);
        double abs_sum = 0.0;
        for (int i = 0; i < n; ++i) abs_sum += std::fabs(p[i].x * p[(i + 1) % n].y) + std::fabs(p[i].y * p[(i + 1) % n].x);
        CHECK(std::fabs(simd->polyline_length(p.data(), n) - ref.polyline_length(p.data(), n)) <=
              1e-14 * (1 + ref.polyline_length(p.data(), n)));
        CHECK(std::fabs(simd->signed_area(p.data(), n) - ref.signed_area(p.data(), n)) <= 1e-15 * (1 + abs_sum));

        if (n >= 3) {
            std::vector<double> k1(n - 2), k2(n - 2), m1(n - 2), m2(n - 2);
            std::vector<Vec2> n1(n - 2), n2(n - 2);
            ref.turning(p.data(), n, k1.data(), n1.data(), m1.data());
            simd->turning(p.data(), n, k2.data(), n2.data(), m2.data());
            for (int i = 0; i < n - 2; ++i) {
                CHECK(std::fabs(k1[i] - k2[i]) <= 1e-13 * (1 + std::fabs(k1[i])));
                CHECK(m1[i] == m2[i]);
                CHECK(distance(n1[i], n2[i]) <= 1e-13);
            }
        }

        kernels::ScanEdges e;
        for (int i = 0; i < n; ++i) e.add(p[i], p[(i + 1) % n]);
        const double y = src.uniform(-1.5, 1.5);
        std::vector<double> a(e.size() + 4), b(e.size() + 4);
        const auto ca = ref.row_crossings(e.y_lo.data(), e.y_hi.data(), e.x_lo.data(), e.dxdy.data(), e.size(), y, a.data());
        const auto cb = simd->row_crossings(e.y_lo.data(), e.y_hi.data(), e.x_lo.data(), e.dxdy.data(), e.size(), y, b.data());
        REQUIRE(ca == cb);
        for (std::size_t i = 0; i < ca; ++i) CHECK(a[i] == b[i]);
    }
}

TEST_CASE("row crossings at vertex heights stay even") {
    gen::Source src(3);
    const auto& k = kernels::active();
    for (int trial = 0; trial < 50; ++trial) {
        auto poly = src.star_polygon({0, 0}, 0.3, 1.0, src.integer(3, 40));
        kernels::ScanEdges e;
        for (std::size_t i = 0; i < poly.size(); ++i) e.add(poly[i], poly[(i + 1) % poly.size()]);
        std::vector<double> out(e.size());
        for (Vec2 v : poly) {
            const auto c = k.row_crossings(e.y_lo.data(), e.y_hi.data(), e.x_lo.data(), e.dxdy.data(), e.size(), v.y, out.data());
            CHECK(c % 2 == 0);
        }
    }
}

}  // TEST_SUITE
