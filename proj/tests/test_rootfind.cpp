#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tayrem/errors.hpp"
#include "tayrem/expression.hpp"
#include "tayrem/rootfind.hpp"

using namespace tayrem;

TEST_CASE("cubic seed root sits at x_z/3") {
    DerivativeBundle b = make_bundle(parse_expression("x^3"), 6, 0.0, 10.0);
    double x_z = 0.0005;
    auto roots = find_xi_z(b, 0.0, x_z, 0.0, 1.0);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0] - x_z / 3.0) <= 1e-12);
    CHECK(std::abs(xi_z_residual(b, 0.0, x_z, roots[0])) <= 1e-14);
}

TEST_CASE("oscillating integrand yields multiple ordered roots") {
    DerivativeBundle b = make_bundle(parse_expression("exp(x/5)*sin(x)"), 6, 1.0, 10.0);
    auto roots = find_xi_z(b, 1.0, 1.0005, 1.0, 10.0);
    REQUIRE(roots.size() >= 2);
    CHECK(std::abs(roots[0] - 1.000167) <= 5e-6);
    CHECK(std::abs(roots[1] - 3.157781) <= 5e-6);
    for (std::size_t i = 1; i < roots.size(); ++i) CHECK(roots[i - 1] < roots[i]);
    for (double r : roots) CHECK(std::abs(xi_z_residual(b, 1.0, 1.0005, r)) <= 1e-13);
}

TEST_CASE("first root approaches the one-third point as x_z tightens") {
    DerivativeBundle ex1 = make_bundle(parse_expression("exp(x/5)*sin(x)"), 6, 1.0, 10.0);
    DerivativeBundle ex2 = make_bundle(parse_expression("ln(1+x)"), 6, 0.0, 10.0);
    for (double offset : {1e-2, 1e-3, 1e-4, 1e-5}) {
        double r1 = find_xi_z(ex1, 1.0, 1.0 + offset, 1.0, 10.0).front();
        double r2 = find_xi_z(ex2, 0.0, offset, 0.0, 10.0).front();
        double ratio1 = (r1 - 1.0) / offset;
        double ratio2 = r2 / offset;
        CHECK(std::abs(3.0 * ratio1 - 1.0) <= 0.05);
        CHECK(std::abs(3.0 * ratio2 - 1.0) <= 0.05);
        if (offset <= 1e-5) {
            CHECK(std::abs(3.0 * ratio1 - 1.0) <= 0.01);
            CHECK(std::abs(3.0 * ratio2 - 1.0) <= 0.01);
        }
    }
}

TEST_CASE("scan without a sign change reports no root") {
    DerivativeBundle b = make_bundle(parse_expression("x^3"), 6, 0.0, 10.0);
    CHECK_THROWS_AS(find_xi_z(b, 0.0, 0.0005, 0.5, 1.0), NoRootError);
}

TEST_CASE("bad arguments are rejected") {
    DerivativeBundle b = make_bundle(parse_expression("x^3"), 6, 0.0, 10.0);
    CHECK_THROWS_AS(find_xi_z(b, 0.0, 0.0005, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(find_xi_z(b, 0.0, 0.0005, 0.0, 1.0, 50), std::invalid_argument);
}

TEST_CASE("repeat calls return identical values") {
    DerivativeBundle b = make_bundle(parse_expression("exp(x/5)*sin(x)"), 6, 1.0, 10.0);
    auto a = find_xi_z(b, 1.0, 1.0005, 1.0, 10.0);
    auto c = find_xi_z(b, 1.0, 1.0005, 1.0, 10.0);
    REQUIRE(a.size() == c.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == c[i]);
}
