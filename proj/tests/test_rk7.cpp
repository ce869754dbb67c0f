#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tayrem/errors.hpp"
#include "tayrem/rk7.hpp"

using namespace tayrem;

TEST_CASE("stock tableau satisfies the structural conditions") {
    const ButcherTableau& t = rk7_tableau();
    CHECK(t.order == 7);
    CHECK(t.stages() == 11);
    CHECK_NOTHROW(t.validate());
    double wsum = 0.0;
    for (double v : t.b) wsum += v;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("tampered tableaus are rejected") {
    ButcherTableau t = rk7_tableau();
    t.b[0] += 1e-6;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);

    t = rk7_tableau();
    t.a[5][0] += 1e-6;  // breaks the row-sum condition
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);

    t = rk7_tableau();
    t.a[4].push_back(0.0);  // no longer strictly lower triangular
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);

    t = rk7_tableau();
    t.c.pop_back();
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("quadrature-only problem is integrated to roundoff") {
    GridSolution g = integrate([](double x, double) { return std::cos(x); }, 0.0, 0.0,
                               10.0, 100);
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        CHECK(std::abs(g.values[i] - std::sin(g.nodes[i])) <= 1e-12);
}

TEST_CASE("degree-7 polynomial is reproduced exactly") {
    // The order-7 local error term carries the 8th derivative, which vanishes.
    GridSolution g = integrate([](double x, double) { return 7.0 * std::pow(x, 6); },
                               0.0, 0.0, 2.0, 10);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        double exact = std::pow(g.nodes[i], 7);
        CHECK(std::abs(g.values[i] - exact) <= 1e-12 * std::max(1.0, exact));
    }
}

TEST_CASE("error on y' = y decays with the seventh power of the step") {
    double exact = std::exp(5.0);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (int n : {16, 32, 64, 128}) {
        GridSolution g = integrate([](double, double y) { return y; }, 0.0, 1.0, 5.0, n);
        double err = std::abs(g.values.back() - exact);
        REQUIRE(err > 0.0);
        double lx = std::log2(static_cast<double>(n));
        double ly = std::log2(err);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
        if (n == 128) CHECK(err <= 1e-9);
    }
    double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    CHECK(std::abs(slope + 7.0) <= 0.3);
}

TEST_CASE("finite-time blow-up raises NonFiniteError") {
    try {
        integrate([](double, double y) { return y * y; }, 0.0, 1.0, 2.0, 50);
        FAIL("expected NonFiniteError");
    } catch (const NonFiniteError& e) {
        CHECK(e.where() > 0.0);
        CHECK(e.where() <= 2.0);
    }
}

TEST_CASE("grid is uniform and anchored at both ends") {
    GridSolution g = integrate([](double, double) { return 1.0; }, 0.25, 0.0, 9.75, 38);
    REQUIRE(g.nodes.size() == 39);
    CHECK(g.nodes.front() == 0.25);
    CHECK(g.h == doctest::Approx((9.75 - 0.25) / 38).epsilon(1e-15));
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        CHECK(g.nodes[i] == 0.25 + static_cast<double>(i) * g.h);
    CHECK(g.nodes.back() == doctest::Approx(9.75).epsilon(1e-15));
}

TEST_CASE("argument validation") {
    Rhs one = [](double, double) { return 1.0; };
    CHECK_THROWS_AS(integrate(one, 0.0, 0.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(integrate(one, 1.0, 0.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(integrate(one, 2.0, 0.0, 1.0, 10), std::invalid_argument);
}
