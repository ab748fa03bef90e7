#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "supershape/error.hpp"
#include "supershape/geometry.hpp"

using namespace supershape;
using std::numbers::pi;

namespace {

const SuperformulaParams kIdentity = SuperformulaParams::sphere();
const SuperformulaParams kDiamond{2.0, 1.0, 1.0, 1.0, 1.0, 1.0};

}  // namespace

TEST_CASE("radius2d matches hand-evaluated closed forms") {
    CHECK(radius2d(kIdentity, 0.7) == doctest::Approx(1.0).epsilon(1e-15));
    SUBCASE("m is irrelevant when every exponent is 2") {
        for (double m : {0.0, 3.0, 7.5, 19.0})
            CHECK(radius2d({m, 1, 1, 2, 2, 2}, 0.7) == doctest::Approx(1.0).epsilon(1e-15));
    }
    // bracket = |cos(pi/4)| + |sin(pi/4)| = sqrt(2)
    CHECK(radius2d(kDiamond, pi / 2) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    // bracket = 1 + 0
    CHECK(radius2d({4, 1, 1, 1, 1, 1}, 0.0) == 1.0);
}

TEST_CASE("radius2d rejects invalid parameters instead of clamping") {
    auto kind_of = [](const SuperformulaParams& p, double angle) {
        try {
            radius2d(p, angle);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::io_error;
    };
    CHECK(kind_of({1, 0, 1, 1, 1, 1}, 0.1) == ErrorKind::invalid_params);
    CHECK(kind_of({1, 1, -1, 1, 1, 1}, 0.1) == ErrorKind::invalid_params);
    CHECK(kind_of({1, 1, 1, 0, 1, 1}, 0.1) == ErrorKind::invalid_params);
    CHECK(kind_of({1, 1, 1, 1, -0.5, 1}, 0.1) == ErrorKind::invalid_params);
    CHECK(kind_of({1, 1, 1, 1, 1, -0.5}, 0.1) == ErrorKind::invalid_params);
    CHECK(kind_of({NAN, 1, 1, 1, 1, 1}, 0.1) == ErrorKind::invalid_params);
    CHECK(kind_of(kIdentity, INFINITY) == ErrorKind::invalid_params);
    // n2 = n3 = 0 is legal: both terms are 1.
    CHECK(radius2d({3, 1, 1, 1, 0, 0}, 0.4) == doctest::Approx(0.5));
}

TEST_CASE("radius2d is even in the angle") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int i = 0; i < 10000; ++i) {
        const auto p = oracle::random_genome(gen).r1();
        const double t = angle(gen);
        REQUIRE(radius2d(p, t) == radius2d(p, -t));
    }
}

TEST_CASE("radius2d follows the a,b scale law") {
    // a = b = s, n2 = n3 = n: bracket scales by s^-n, so r scales by s^(n/n1).
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> m(0, 20), s(0.2, 4), n(0.5, 6), n1(0.5, 6), angle(-pi, pi);
    for (int i = 0; i < 2000; ++i) {
        const double mm = m(gen), ss = s(gen), nn = n(gen), nn1 = n1(gen), t = angle(gen);
        const double base = radius2d({mm, 1, 1, nn1, nn, nn}, t);
        const double scaled = radius2d({mm, ss, ss, nn1, nn, nn}, t);
        const long double predicted = oracle::radius(mm, 1, 1, nn1, nn, nn, t) * powl(ss, nn / nn1);
        REQUIRE(std::abs(scaled - static_cast<double>(predicted)) <= 1e-11 * predicted);
        REQUIRE(std::abs(scaled / base - std::pow(ss, nn / nn1)) <= 1e-11 * std::pow(ss, nn / nn1));
    }
}

TEST_CASE("radius2d is finite and positive across the gene bounds") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int i = 0; i < 10000; ++i) {
        const auto g = oracle::random_genome(gen);
        for (const auto& p : {g.r1(), g.r2()}) {
            const double r = radius2d(p, angle(gen));
            REQUIRE(std::isfinite(r));
            REQUIRE(r > 0.0);
        }
    }
    // Corners of the bounds: the largest bracket and the smallest bracket.
    CHECK(radius2d({0, 0.1, 0.1, 0.1, 20, 20}, pi / 7) > 0.0);
    CHECK(std::isfinite(radius2d({20, 5, 5, 0.1, 20, 20}, pi / 2)));
}

TEST_CASE("surface_point matches the spherical product") {
    auto close = [](const Vec3& a, const Vec3& b) { return (a - b).norm() < 1e-12; };
    CHECK(close(surface_point(kIdentity, kIdentity, 0, 0), Vec3(1, 0, 0)));
    CHECK(close(surface_point(kIdentity, kIdentity, 0, pi / 2), Vec3(0, 0, 1)));
    CHECK(close(surface_point(kDiamond, kIdentity, pi / 2, 0), Vec3(0, 1 / std::sqrt(2.0), 0)));

    SUBCASE("unit sphere for the identity parameters") {
        std::mt19937_64 gen(3);
        std::uniform_real_distribution<double> theta(-pi, pi), phi(-pi / 2, pi / 2);
        for (int i = 0; i < 1000; ++i)
            REQUIRE(std::abs(surface_point(kIdentity, kIdentity, theta(gen), phi(gen)).norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("tessellate produces the unit sphere for identity parameters") {
    const auto mesh = tessellate(kIdentity, kIdentity, {64, 64});
    CHECK(mesh.vertices.size() == 65u * 65u);
    for (const auto& v : mesh.vertices) REQUIRE(std::abs(v.norm() - 1.0) < 1e-9);
    // Area-weighted normals of a fine sphere point (nearly) outward.
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) REQUIRE(mesh.normals[i].dot(mesh.vertices[i]) > 0.95);
    CHECK(mesh.valid());
}

TEST_CASE("tessellate vertex and triangle counts") {
    // Brute enumeration of grid quads: pole-adjacent quads keep one triangle.
    auto expected_triangles = [](int rt, int rp) {
        std::size_t n = 0;
        for (int j = 0; j < rp; ++j)
            for (int i = 0; i < rt; ++i) n += (j == 0 || j == rp - 1) ? 1 : 2;
        return n;
    };
    const auto mesh = tessellate(kIdentity, kIdentity, {8, 8});
    CHECK(mesh.vertices.size() == 81);
    CHECK(mesh.triangles.size() == 2 * 8 * 8 - 2 * 8);
    CHECK(mesh.triangles.size() == expected_triangles(8, 8));
    for (auto [rt, rp] : {std::pair{3, 3}, {5, 9}, {17, 4}, {64, 32}}) {
        const auto m = tessellate(kDiamond, kIdentity, {rt, rp});
        CHECK(m.vertices.size() == static_cast<std::size_t>((rt + 1) * (rp + 1)));
        CHECK(m.triangles.size() == expected_triangles(rt, rp));
    }
}

TEST_CASE("tessellate vertices equal surface_point at grid coordinates") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 5; ++trial) {
        const auto g = oracle::random_genome(gen);
        const TessellationGrid res{12, 10};
        const auto mesh = tessellate(g.r1(), g.r2(), res);
        for (int j = 0; j <= res.phi; ++j)
            for (int i = 0; i <= res.theta; ++i) {
                const Vec3 expected = surface_point(g.r1(), g.r2(), -pi + 2 * pi * i / res.theta, -pi / 2 + pi * j / res.phi);
                REQUIRE(mesh.vertices[j * (res.theta + 1) + i] == expected);
            }
    }
}

TEST_CASE("tessellate output satisfies mesh invariants for random genomes") {
    std::mt19937_64 gen(23);
    int meshed = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = oracle::random_genome(gen);
        try {
            const auto mesh = tessellate(g.r1(), g.r2(), {24, 24});
            REQUIRE(mesh.valid(1e-6));
            ++meshed;
        } catch (const Error& e) {
            REQUIRE(e.kind() == ErrorKind::non_finite_surface);
        }
    }
    CHECK(meshed > 150);
}

TEST_CASE("tessellate validates its inputs") {
    CHECK_THROWS_AS(tessellate(kIdentity, kIdentity, {2, 8}), Error);
    CHECK_THROWS_AS(tessellate(kIdentity, kIdentity, {8, 0}), Error);
    CHECK_THROWS_AS(tessellate({1, 0, 1, 1, 1, 1}, kIdentity, {8, 8}), Error);
    try {
        tessellate(kIdentity, kIdentity, {2, 2});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_resolution);
    }
}

TEST_CASE("overflowing surfaces are reported, not emitted") {
    // r ~ 1e167 on both factors: the product leaves double range.
    const SuperformulaParams huge{20, 5, 5, 0.1, 20, 20};
    CHECK_THROWS_AS(tessellate(huge, huge, {8, 8}), Error);
}
