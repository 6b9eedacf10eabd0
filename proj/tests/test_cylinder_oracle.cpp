#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "diraclab/cylinder_oracle.hpp"
#include "diraclab/index_engine.hpp"

using namespace diraclab;

namespace {

constexpr BoundaryCondition P = BoundaryCondition::Plus;
constexpr BoundaryCondition M = BoundaryCondition::Minus;
constexpr BoundaryCondition A = BoundaryCondition::APS;
constexpr std::array<BoundaryCondition, 3> kConds{P, M, A};

}  // namespace

TEST_CASE("positive channels never contribute kernel") {
    for (double lambda : {0.05, 1.0, 4.7}) {
        for (double L : {0.3, 1.0, 5.0}) {
            for (auto e0 : kConds) {
                for (auto e1 : kConds) {
                    const ModeKernelDims dims =
                        mode_kernel_dims(lambda, 2, L, e0, e1);
                    CHECK(dims.dim_ker_d == 0);
                    CHECK(dims.dim_ker_dstar == 0);
                }
            }
        }
    }
    CHECK_THROWS_AS(mode_kernel_dims(-1.0, 1, 1.0, P, P),
                    std::invalid_argument);
    CHECK_THROWS_AS(mode_kernel_dims(1.0, 0, 1.0, P, P),
                    std::invalid_argument);
}

TEST_CASE("zero channels follow the survival table") {
    // Constants survive the direct problem only for (Minus, Plus) [a-type]
    // and (Plus, Minus) [b-type]; the adjoint survival is the complementary
    // pattern with APS ends imposing nothing.
    auto dims = [](BoundaryCondition e0, BoundaryCondition e1) {
        return zero_mode_kernel_dims(2, 1, e0, e1);
    };
    // (dim ker D, dim ker D*) for ker_plus = 2, ker_minus = 1:
    CHECK(dims(P, P).dim_ker_d == 0);
    CHECK(dims(P, P).dim_ker_dstar == 0);
    CHECK(dims(P, M).dim_ker_d == 1);   // b-type constants
    CHECK(dims(P, M).dim_ker_dstar == 2);  // adjoint a-type
    CHECK(dims(M, P).dim_ker_d == 2);   // a-type constants
    CHECK(dims(M, P).dim_ker_dstar == 1);
    CHECK(dims(M, M).dim_ker_d == 0);
    CHECK(dims(M, M).dim_ker_dstar == 0);
    CHECK(dims(A, A).dim_ker_d == 0);   // APS kills both constants directly
    CHECK(dims(A, A).dim_ker_dstar == 3);  // and frees both adjoint types
    CHECK(dims(A, P).dim_ker_d == 0);
    CHECK(dims(A, P).dim_ker_dstar == 1);
    CHECK(dims(A, M).dim_ker_d == 0);
    CHECK(dims(A, M).dim_ker_dstar == 2);
    CHECK(dims(P, A).dim_ker_d == 0);
    CHECK(dims(P, A).dim_ker_dstar == 2);
    CHECK(dims(M, A).dim_ker_d == 0);
    CHECK(dims(M, A).dim_ker_dstar == 1);
}

TEST_CASE("zero kills match their defining pattern") {
    // Direct: Plus kills a at u=0, b at u=L; Minus mirrors; APS kills both.
    CHECK(zero_kills(P, false, false).kill_a);
    CHECK_FALSE(zero_kills(P, false, false).kill_b);
    CHECK_FALSE(zero_kills(P, true, false).kill_a);
    CHECK(zero_kills(P, true, false).kill_b);
    CHECK(zero_kills(M, false, false).kill_b);
    CHECK(zero_kills(M, true, false).kill_a);
    CHECK(zero_kills(A, false, false).kill_a);
    CHECK(zero_kills(A, false, false).kill_b);
    // Adjoint: locals swap the killed type, APS frees both.
    CHECK(zero_kills(P, false, true).kill_b);
    CHECK_FALSE(zero_kills(P, false, true).kill_a);
    CHECK(zero_kills(P, true, true).kill_a);
    CHECK_FALSE(zero_kills(A, false, true).kill_a);
    CHECK_FALSE(zero_kills(A, true, true).kill_b);
}

TEST_CASE("cylinder index table for index 3 boundary data") {
    const ChiralSpectrum spec = make_twisted_torus(3, std::numbers::pi, 25.0);
    const int expected[3][3] = {{0, -3, -3}, {3, 0, 0}, {0, -3, -3}};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const CylinderProblem prob{spec, 1.0, kConds[i], kConds[j]};
            CHECK(cylinder_index(prob) == expected[i][j]);
            // Index equals the two-component prediction.
            const std::vector<BoundaryComponent> comps{
                {spec, kConds[i], Orientation::Inward},
                {spec, kConds[j], Orientation::Reversed}};
            CHECK(predicted_index(comps) == expected[i][j]);
        }
    }
}

TEST_CASE("cylinder kernel dimensions split as expected") {
    const ChiralSpectrum spec = make_twisted_torus(3, std::numbers::pi, 25.0);
    const ModeKernelDims mp =
        cylinder_kernel_dims({spec, 1.0, M, P});
    CHECK(mp.dim_ker_d == 3);
    CHECK(mp.dim_ker_dstar == 0);
    const ModeKernelDims pm =
        cylinder_kernel_dims({spec, 1.0, P, M});
    CHECK(pm.dim_ker_d == 0);
    CHECK(pm.dim_ker_dstar == 3);
    const ModeKernelDims aa =
        cylinder_kernel_dims({spec, 1.0, A, A});
    CHECK(aa.dim_ker_d == 0);
    CHECK(aa.dim_ker_dstar == 3);
}

TEST_CASE("cylinder index is independent of the length") {
    const ChiralSpectrum spec = make_twisted_torus(-2, std::numbers::pi, 25.0);
    for (auto e0 : kConds) {
        for (auto e1 : kConds) {
            const int at1 = cylinder_index({spec, 1.0, e0, e1});
            CHECK(cylinder_index({spec, 0.25, e0, e1}) == at1);
            CHECK(cylinder_index({spec, 8.0, e0, e1}) == at1);
        }
    }
}

TEST_CASE("reversal preserves the index") {
    const ChiralSpectrum spec = make_twisted_torus(3, std::numbers::pi, 25.0);
    for (auto e0 : kConds) {
        for (auto e1 : kConds) {
            const CylinderProblem prob{spec, 2.0, e0, e1};
            const CylinderProblem rev = reversed(prob);
            CHECK(rev.eps0 == e1);
            CHECK(rev.eps1 == e0);
            CHECK(cylinder_index(rev) == cylinder_index(prob));
            // Reversal is an involution.
            const CylinderProblem twice = reversed(rev);
            CHECK(twice.eps0 == e0);
            CHECK(twice.spectrum.ker_plus == spec.ker_plus);
        }
    }
}

TEST_CASE("problem validation rejects bad lengths") {
    const ChiralSpectrum spec = make_twisted_torus(1, std::numbers::pi, 25.0);
    CylinderProblem prob{spec, 0.0, P, P};
    CHECK_THROWS_AS(prob.check(), std::invalid_argument);
    prob.L = 1.0;
    CHECK_NOTHROW(prob.check());
}

TEST_CASE("mode solutions evaluate their polynomials and derivatives") {
    ModeSolution s;
    s.lambda = 1.5;
    s.a_coef = {1.0, -2.0, 0.5, 3.0};
    s.b_coef = {0.0, 1.0, 0.0, -1.0};
    const double u = 0.7;
    CHECK(s.a(u) ==
          doctest::Approx(1.0 - 2.0 * u + 0.5 * u * u + 3.0 * u * u * u)
              .epsilon(1e-15));
    CHECK(s.da(u) ==
          doctest::Approx(-2.0 + u + 9.0 * u * u).epsilon(1e-15));
    CHECK(s.b(u) == doctest::Approx(u - u * u * u).epsilon(1e-15));
    CHECK(s.db(u) == doctest::Approx(1.0 - 3.0 * u * u).epsilon(1e-15));
}

TEST_CASE("green form reduces to the boundary pairing for arbitrary cubics") {
    SplitMix64 rng(7u);
    for (int rep = 0; rep < 50; ++rep) {
        ModeSolution phi, psi;
        phi.lambda = psi.lambda = rng.uniform(0.0, 3.0);
        for (int k = 0; k < 4; ++k) {
            phi.a_coef[k] = rng.uniform(-1.0, 1.0);
            phi.b_coef[k] = rng.uniform(-1.0, 1.0);
            psi.a_coef[k] = rng.uniform(-1.0, 1.0);
            psi.b_coef[k] = rng.uniform(-1.0, 1.0);
        }
        const double L = rng.uniform(0.5, 2.0);
        CHECK(green_identity_residual(phi, psi, L) < 1e-12);
        CHECK(green_form(phi, psi, L) ==
              doctest::Approx(boundary_pairing(phi, psi, L)).epsilon(1e-10));
    }
}

TEST_CASE("a direct pair of like conditions pairs non-trivially") {
    // Both fields satisfy the (Plus, Plus) direct conditions a(0) = 0,
    // b(L) = 0, yet the boundary pairing is L^2 + 1: the direct conditions
    // alone are not self-adjoint, which is exactly why the adjoint family
    // matters.
    const double L = 1.3;
    ModeSolution phi;
    phi.lambda = 1.0;
    phi.a_coef = {0.0, 1.0, 0.0, 0.0};           // a = u
    phi.b_coef = {1.0, -1.0 / L, 0.0, 0.0};      // b = 1 - u/L
    const double pairing = boundary_pairing(phi, phi, L);
    CHECK(pairing == doctest::Approx(L * L + 1.0).epsilon(1e-14));
    CHECK(std::abs(green_form(phi, phi, L)) > 1.0);
}

TEST_CASE("random admissible solutions satisfy their end conditions") {
    SplitMix64 rng(20240818u);
    for (auto e0 : kConds) {
        for (auto e1 : kConds) {
            for (double lambda : {0.0, 1.0, 2.7}) {
                for (bool adjoint : {false, true}) {
                    const double L = 1.0;
                    const ModeSolution s = random_admissible_solution(
                        rng, lambda, L, e0, e1, adjoint);
                    // End rows on the boundary values (a, b): direct Plus
                    // kills a at 0 and b at L; Minus mirrors; APS kills the
                    // sum at 0 and the difference at L (at lambda = 0 it
                    // pins both components directly and nothing adjointly).
                    // The adjoint family swaps the local conditions.
                    auto row_residual = [&](BoundaryCondition c, bool at_L) {
                        const double u = at_L ? L : 0.0;
                        const double av = s.a(u), bv = s.b(u);
                        if (c == A) {
                            if (lambda == 0.0)
                                return adjoint ? 0.0
                                               : std::abs(av) + std::abs(bv);
                            return av + (at_L ? -bv : bv);
                        }
                        BoundaryCondition eff =
                            adjoint ? adjoint_local(c) : c;
                        if (eff == BoundaryCondition::Plus)
                            return at_L ? bv : av;
                        return at_L ? av : bv;
                    };
                    CHECK(std::abs(row_residual(e0, false)) < 1e-12);
                    CHECK(std::abs(row_residual(e1, true)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("admissible direct-adjoint pairs annihilate the green form") {
    SplitMix64 rng(99u);
    double worst = 0.0;
    for (auto e0 : kConds) {
        for (auto e1 : kConds) {
            for (int rep = 0; rep < 20; ++rep) {
                const double lambda = rep % 5 == 0 ? 0.0 : rng.uniform(0.2, 4.0);
                const double L = rng.uniform(0.5, 2.0);
                const ModeSolution phi =
                    random_admissible_solution(rng, lambda, L, e0, e1, false);
                const ModeSolution psi =
                    random_admissible_solution(rng, lambda, L, e0, e1, true);
                worst = std::max(worst, std::abs(green_form(phi, psi, L)));
            }
        }
    }
    CHECK(worst < 1e-10);
}
