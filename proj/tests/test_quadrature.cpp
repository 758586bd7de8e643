#include <doctest.h>

#include <cmath>

#include "vdns/quadrature.hpp"

using namespace vdns;

namespace {

// Integral of x^a y^b over the reference triangle (0,0),(1,0),(0,1):
// a! b! / (a+b+2)!.
double monomial_integral(int a, int b) {
    double v = 1.0;
    for (int k = 1; k <= a; ++k) v *= k;
    for (int k = 1; k <= b; ++k) v *= k;
    for (int k = 1; k <= a + b + 2; ++k) v /= k;
    return v;
}

double quad_monomial(const QuadratureRule& r, int a, int b) {
    double s = 0.0;
    for (int q = 0; q < r.size(); ++q)
        s += 0.5 * r.weights[q] * std::pow(r.points[q][1], a) * std::pow(r.points[q][2], b);
    return s;
}

}  // namespace

TEST_CASE("rules are positive, normalized and symmetric requests are honored") {
    for (int d = 1; d <= 8; ++d) {
        CAPTURE(d);
        const QuadratureRule r = triangle_quadrature(d);
        CHECK(r.exact_degree >= d);
        double wsum = 0.0;
        for (int q = 0; q < r.size(); ++q) {
            CHECK(r.weights[q] > 0.0);
            wsum += r.weights[q];
            CHECK(std::abs(r.points[q][0] + r.points[q][1] + r.points[q][2] - 1.0) <= 1e-14);
        }
        CHECK(std::abs(wsum - 1.0) <= 1e-13);
    }
}

TEST_CASE("complete monomial basis integrated exactly up to the rule degree") {
    for (int d : {1, 2, 4, 5, 6, 8}) {
        CAPTURE(d);
        const QuadratureRule r = triangle_quadrature(d);
        CHECK(r.exact_degree == d);
        for (int a = 0; a <= r.exact_degree; ++a) {
            for (int b = 0; a + b <= r.exact_degree; ++b) {
                CAPTURE(a);
                CAPTURE(b);
                const double exact = monomial_integral(a, b);
                CHECK(std::abs(quad_monomial(r, a, b) - exact) <= 1e-13 * exact);
            }
        }
    }
}

TEST_CASE("reference values") {
    const QuadratureRule r = triangle_quadrature(6);
    CHECK(quad_monomial(r, 0, 0) == doctest::Approx(0.5).epsilon(1e-14));       // area
    CHECK(quad_monomial(r, 1, 0) == doctest::Approx(1.0 / 6).epsilon(1e-14));   // int x
    CHECK(quad_monomial(r, 4, 2) == doctest::Approx(1.0 / 840).epsilon(1e-13));  // int x^4 y^2
}

TEST_CASE("unsupported degrees raise with the supported list") {
    CHECK_THROWS_AS(triangle_quadrature(0), std::invalid_argument);
    CHECK_THROWS_AS(triangle_quadrature(9), std::invalid_argument);
    try {
        triangle_quadrature(42);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("1, 2, 4, 5, 6, 8") != std::string::npos);
    }
}
