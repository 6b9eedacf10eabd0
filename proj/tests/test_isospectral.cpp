#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "diraclab/errors.hpp"
#include "diraclab/isospectral.hpp"

using namespace diraclab;

namespace {

constexpr BoundaryCondition P = BoundaryCondition::Plus;
constexpr BoundaryCondition M = BoundaryCondition::Minus;

ChiralSpectrum deep3() {
    return make_twisted_torus(3, std::numbers::pi, 70.0);
}

}  // namespace

TEST_CASE("necessary condition sums switched effective indices") {
    const ChiralSpectrum tw = deep3();
    // Mirror swap: end 0 switches Plus -> Minus (s2), the reversed end L
    // switches Minus -> Plus (s1) with effective index -3.
    const std::vector<SwapComponent> mirror{
        {tw, Orientation::Inward, P, M}, {tw, Orientation::Reversed, M, P}};
    const SwapVerdict vm = necessary_condition(mirror);
    CHECK(vm.ruled_out);
    CHECK(vm.s1 == -3);
    CHECK(vm.s2 == 3);

    // Unchanged components contribute nothing.
    const std::vector<SwapComponent> idle{
        {tw, Orientation::Inward, P, P}, {tw, Orientation::Reversed, M, M}};
    const SwapVerdict vi = necessary_condition(idle);
    CHECK_FALSE(vi.ruled_out);
    CHECK(vi.s1 == 0);
    CHECK(vi.s2 == 0);
    CHECK_FALSE(necessary_condition({}).ruled_out);
}

TEST_CASE("necessary condition rejects spectral conditions") {
    const ChiralSpectrum tw = deep3();
    const std::vector<SwapComponent> with_aps{
        {tw, Orientation::Inward, BoundaryCondition::APS, P}};
    CHECK_THROWS_AS(necessary_condition(with_aps), std::invalid_argument);
}

TEST_CASE("swap cylinder exposes its two components") {
    const ChiralSpectrum tw = deep3();
    const SwapCylinder cyl{tw, 1.5, P, M, M, P};
    cyl.check();
    const auto comps = cyl.swap_components();
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].orientation == Orientation::Inward);
    CHECK(comps[0].eps == P);
    CHECK(comps[0].eps_prime == M);
    CHECK(comps[1].orientation == Orientation::Reversed);
    CHECK(comps[1].eps == M);
    CHECK(comps[1].eps_prime == P);

    SwapCylinder bad = cyl;
    bad.L = -1.0;
    CHECK_THROWS_AS(bad.check(), std::invalid_argument);
    bad = cyl;
    bad.eps0_prime = BoundaryCondition::APS;
    CHECK_THROWS_AS(bad.check(), std::invalid_argument);
}

TEST_CASE("double swap has an exactly vanishing trace difference") {
    const SwapCylinder both{deep3(), 1.0, P, M, P, M};
    for (double t : {0.02, 0.05, 0.2}) {
        const TraceDifference td = trace_difference(both, t);
        CHECK(td.value == 0.0);  // exact: both spectra coincide level by level
    }
}

TEST_CASE("trace difference is antisymmetric under swapping the roles") {
    const SwapCylinder fwd{deep3(), 1.0, P, M, P, P};
    const SwapCylinder bwd{deep3(), 1.0, M, P, P, P};
    for (double t : {0.02, 0.07}) {
        const double v1 = trace_difference(fwd, t).value;
        const double v2 = trace_difference(bwd, t).value;
        CHECK(v1 + v2 == 0.0);
        CHECK(v1 != 0.0);
    }
}

TEST_CASE("single-end swap converges to half the index obstruction") {
    const SwapCylinder single{deep3(), 1.0, P, M, P, P};
    const SwapVerdict nc = necessary_condition(single.swap_components());
    CHECK(nc.ruled_out);
    CHECK(nc.s1 == 0);
    CHECK(nc.s2 == 3);
    const TraceSweep sweep =
        trace_difference_sweep(single, {0.01, 0.02, 0.05});
    const ExtractedConstant ec = extract_constant(sweep);
    CHECK(ec.converged);
    CHECK(ec.constant ==
          doctest::Approx(0.5 * (nc.s1 - nc.s2)).epsilon(1e-10));
    CHECK(ec.residual_bound < 1e-10);
}

TEST_CASE("mirror swap constant doubles the single-end one") {
    const SwapCylinder mirror{deep3(), 1.0, P, M, M, P};
    const TraceSweep sweep =
        trace_difference_sweep(mirror, {0.01, 0.02, 0.05});
    const ExtractedConstant ec = extract_constant(sweep);
    CHECK(ec.converged);
    CHECK(ec.constant == doctest::Approx(-3.0).epsilon(1e-10));
}

TEST_CASE("trace difference enforces its truncation budget") {
    const ChiralSpectrum shallow = make_twisted_torus(3, std::numbers::pi, 8.0);
    const SwapCylinder cyl{shallow, 1.0, P, M, P, P};
    CHECK_THROWS_AS(trace_difference(cyl, 0.001), TruncationError);
    // Larger t is admissible for the same spectrum.
    CHECK_NOTHROW(trace_difference(cyl, 0.5));
}

TEST_CASE("extract constant validates its input") {
    TraceSweep sweep;
    sweep.t = {0.01, 0.02};
    sweep.values = {1.0, 1.0};
    sweep.truncation_bound = {0.0, 0.0};
    CHECK_THROWS_AS(extract_constant(sweep), std::invalid_argument);

    sweep.t = {0.01, 0.02, 0.04};
    sweep.u = {0.0, 1.0};  // not a pure t-sweep
    sweep.values = {1, 1, 1, 1, 1, 1};
    sweep.truncation_bound = {0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(extract_constant(sweep), std::invalid_argument);
}

TEST_CASE("non-converged sweeps are flagged rather than trusted") {
    // At large t the extracted value drifts between samples, so the spread
    // exceeds the tolerance and converged must come back false.
    const SwapCylinder single{deep3(), 1.0, P, M, P, P};
    const TraceSweep sweep = trace_difference_sweep(single, {0.3, 0.6, 1.2});
    const ExtractedConstant ec = extract_constant(sweep, 1e-12);
    CHECK_FALSE(ec.converged);
}
