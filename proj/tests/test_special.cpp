#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "diraclab/special.hpp"

using namespace diraclab;

TEST_CASE("erfc reproduces reference values") {
    // Reference values computed with 50-digit arithmetic.
    CHECK(diraclab::erfc(1.0) == doctest::Approx(0.15729920705028513066).epsilon(1e-15));
    CHECK(diraclab::erfc(0.0) == doctest::Approx(1.0).epsilon(1e-16));
    CHECK(diraclab::erfc(4.0) == doctest::Approx(1.541725790028002e-8).epsilon(1e-13));
    CHECK(diraclab::erfc(-2.0) == doctest::Approx(1.9953222650189528).epsilon(1e-15));
}

TEST_CASE("erf is odd and complements erfc") {
    for (double x : {0.0, 0.3, 1.0, 2.7, 5.5}) {
        CHECK(diraclab::erf(x) + diraclab::erfc(x) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(diraclab::erf(-x) == doctest::Approx(-diraclab::erf(x)).epsilon(1e-15));
        CHECK(diraclab::erfc(-x) + diraclab::erfc(x) == doctest::Approx(2.0).epsilon(1e-14));
    }
    CHECK(diraclab::erf(10.0) == doctest::Approx(1.0).epsilon(1e-16));
}

TEST_CASE("erfcx removes the gaussian decay stably") {
    for (double x : {0.5, 1.0, 2.0, 4.0, 6.0}) {
        CHECK(diraclab::erfcx(x) * std::exp(-x * x) ==
              doctest::Approx(diraclab::erfc(x)).epsilon(1e-13));
    }
    // Far out where erfc underflows, erfcx stays near 1/(x sqrt(pi)).
    const double x = 40.0;
    CHECK(diraclab::erfcx(x) * x * std::sqrt(std::numbers::pi) ==
          doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("adaptive quadrature integrates smooth functions") {
    const double piq = adaptive_integrate(
        [](double x) { return 4.0 / (1.0 + x * x); }, 0.0, 1.0, 1e-12);
    CHECK(piq == doctest::Approx(std::numbers::pi).epsilon(1e-12));

    const double g = adaptive_integrate(
        [](double x) { return std::exp(-x * x); }, 0.0, 3.0, 1e-12);
    CHECK(g == doctest::Approx(0.5 * std::sqrt(std::numbers::pi) * diraclab::erf(3.0))
                   .epsilon(1e-11));
}

TEST_CASE("adaptive quadrature reports non-convergence") {
    // An integrable singularity at an unattainable tolerance must throw
    // rather than return silently wrong digits.
    CHECK_THROWS_AS(adaptive_integrate(
                        [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                        1e-14),
                    std::runtime_error);
}

TEST_CASE("GL16 panels are exact for low-degree polynomials") {
    const double m = gl16_integrate([](double x) { return x * x * x * x * x * x * x; },
                                    0.0, 2.0, 1);
    CHECK(m == doctest::Approx(32.0).epsilon(1e-14));
    // Degree 31 is the exactness limit of a 16-point rule.
    const double h = gl16_integrate(
        [](double x) { return 32.0 * std::pow(x, 31); }, 0.0, 1.0, 1);
    CHECK(h == doctest::Approx(1.0).epsilon(1e-12));
    // Composite panels against the adaptive integrator on a transcendental.
    const double a = gl16_integrate([](double x) { return std::cos(3.0 * x); },
                                    0.0, 2.0, 4);
    CHECK(a == doctest::Approx(std::sin(6.0) / 3.0).epsilon(1e-13));
}
