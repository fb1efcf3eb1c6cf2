#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "duelopt/vectorspace.hpp"

using namespace duelopt;

TEST_CASE("dense ops") {
    CHECK(dot({1, 2}, {3, 4}) == doctest::Approx(11).epsilon(1e-15));
    CHECK(norm({3, 4}) == doctest::Approx(5).epsilon(1e-15));
    Vector s = scale({1, -1}, 0.0);
    CHECK(s[0] == 0.0);
    CHECK(s[1] == 0.0);

    Vector y = {1, 1};
    axpy(2.0, {3, -1}, y);
    CHECK(y[0] == doctest::Approx(7));
    CHECK(y[1] == doctest::Approx(-1));

    Vector a = add({1, 2}, {3, 4});
    CHECK(a[0] == 4);
    CHECK(a[1] == 6);
    Vector d = sub({1, 2}, {3, 4});
    CHECK(d[0] == -2);
    CHECK(d[1] == -2);

    CHECK_THROWS_AS(dot({1, 2}, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(add({1}, {1, 2}), std::invalid_argument);
    Vector z = {1};
    CHECK_THROWS_AS(axpy(1.0, {1, 2}, z), std::invalid_argument);
}

TEST_CASE("sample_sphere basics") {
    Rng rng(11);
    SUBCASE("d=1 hits both poles") {
        int plus = 0, minus = 0;
        for (int i = 0; i < 200; ++i) {
            Vector v = sample_sphere(1, 1.0, rng);
            REQUIRE(v.size() == 1);
            CHECK(std::fabs(std::fabs(v[0]) - 1.0) <= 1e-12);
            (v[0] > 0 ? plus : minus)++;
        }
        CHECK(plus > 50);
        CHECK(minus > 50);
    }
    SUBCASE("norm postcondition") {
        for (int i = 0; i < 100; ++i) {
            Vector v = sample_sphere(3, 0.5, rng);
            CHECK(std::fabs(norm(v) - 0.5) <= 0.5 * 1e-12);
        }
    }
    SUBCASE("bad arguments") {
        CHECK_THROWS_AS(sample_sphere(0, 1.0, rng), std::invalid_argument);
        CHECK_THROWS_AS(sample_sphere(3, 0.0, rng), std::invalid_argument);
        CHECK_THROWS_AS(sample_sphere(3, -1.0, rng), std::invalid_argument);
    }
}

TEST_CASE("sample_sphere statistics over 1e5 draws") {
    const int d = 8;
    const int n = 100000;
    const double r = 2.0;
    Rng rng(17);
    Vector mean(d, 0.0);
    Vector second(d, 0.0);
    for (int i = 0; i < n; ++i) {
        Vector v = sample_sphere(d, r, rng);
        for (int j = 0; j < d; ++j) {
            mean[j] += v[j] / n;
            second[j] += v[j] * v[j] / n;
        }
    }
    // zero-mean up to a CLT-scale bound; stated for radius 1, rescaled by r
    CHECK(norm(mean) <= 0.02 * r);
    for (int j = 0; j < d; ++j)
        CHECK(second[j] == doctest::Approx(r * r / d).epsilon(0.05));
}

TEST_CASE("projection closed forms") {
    Domain ball = Domain::ball({0, 0}, 1.0);
    Vector p = project(ball, {2, 0});
    CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p[1] == 0.0);

    Domain box = Domain::box({-1, -1}, {1, 1});
    Vector q = project(box, {0.5, -3});
    CHECK(q[0] == 0.5);
    CHECK(q[1] == -1.0);

    Domain all = Domain::all_space(3);
    Vector x = {7, -2, 0.1};
    Vector r = project(all, x);
    CHECK(r == x);

    CHECK_THROWS_AS(project(ball, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("projection is idempotent and non-expansive") {
    Rng rng(23);
    Domain ball = Domain::ball({0.5, -0.5, 0.0}, 0.75);
    Domain box = Domain::box({-1, -2, 0}, {1, 0, 3});
    for (const Domain& dom : {ball, box}) {
        for (int i = 0; i < 500; ++i) {
            Vector x(3), y(3);
            for (int j = 0; j < 3; ++j) {
                x[j] = 6.0 * rng.uniform() - 3.0;
                y[j] = 6.0 * rng.uniform() - 3.0;
            }
            Vector px = project(dom, x);
            Vector ppx = project(dom, px);
            CHECK(ppx == px);  // exact, not approximate
            Vector py = project(dom, y);
            CHECK(norm(sub(px, py)) <= norm(sub(x, y)) + 1e-12);
        }
    }
}

TEST_CASE("domain construction errors") {
    CHECK_THROWS_AS(Domain::all_space(0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::ball({0, 0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::ball({0, 0}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::box({1, 0}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Domain::box({0, 0}, {1}), std::invalid_argument);
}

TEST_CASE("rng determinism") {
    Rng a(99), b(99);
    for (int i = 0; i < 1000; ++i)
        CHECK(a.uniform() == b.uniform());
    Rng c(99), e(100);
    bool differ = false;
    for (int i = 0; i < 10; ++i)
        differ |= (c.normal() != e.normal());
    CHECK(differ);
}
