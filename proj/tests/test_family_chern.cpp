#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "diraclab/family_chern.hpp"
#include "diraclab/rng.hpp"

using namespace diraclab;
using Eigen::MatrixXcd;

namespace {

constexpr BoundaryCondition P = BoundaryCondition::Plus;
constexpr BoundaryCondition M = BoundaryCondition::Minus;
constexpr BoundaryCondition A = BoundaryCondition::APS;

}  // namespace

TEST_CASE("base grid wraps and counts") {
    const BaseGrid grid{16};
    grid.check();
    CHECK(grid.vertices() == 256);
    CHECK(grid.vertex(0, 0) == 0);
    CHECK(grid.vertex(16, 0) == 0);      // periodic wrap
    CHECK(grid.vertex(-1, 2) == 15 + 16 * 2);
    CHECK(grid.euler_characteristic() == 0);
    CHECK_THROWS_AS(BaseGrid{7}.check(), std::invalid_argument);
}

TEST_CASE("kernel projector splits spectra across the gap") {
    MatrixXcd h = MatrixXcd::Zero(3, 3);
    h(2, 2) = 5.0;
    const MatrixXcd pr = kernel_projector(h, 1.0);
    CHECK(std::abs(pr.trace().real() - 2.0) < 1e-13);
    CHECK((pr * pr - pr).norm() < 1e-13);
    CHECK(std::abs(pr(2, 2)) < 1e-13);

    // An eigenvalue inside the declared gap is a structural failure.
    MatrixXcd mid = h;
    mid(1, 1) = 0.5;
    CHECK_THROWS_AS(kernel_projector(mid, 1.0), std::runtime_error);
    // Non-Hermitian input is a usage error.
    MatrixXcd nh = h;
    nh(0, 1) = std::complex<double>(0.0, 1.0);
    CHECK_THROWS_AS(kernel_projector(nh, 1.0), std::invalid_argument);
}

TEST_CASE("two-band chern numbers hit the phase diagram") {
    CHECK(chern_number(two_band_lower_projectors(16, 1.0), BaseGrid{16}) == 1);
    CHECK(chern_number(two_band_lower_projectors(16, -1.0), BaseGrid{16}) ==
          -1);
    CHECK(chern_number(two_band_lower_projectors(16, 3.0), BaseGrid{16}) == 0);
    CHECK(chern_number(two_band_lower_projectors(16, -3.0), BaseGrid{16}) == 0);
    // Stability in the grid resolution.
    CHECK(chern_number(two_band_lower_projectors(12, 1.0), BaseGrid{12}) == 1);
    CHECK(chern_number(two_band_lower_projectors(24, 1.0), BaseGrid{24}) == 1);
}

TEST_CASE("chern number is invariant under per-vertex gauge changes") {
    const int n = 12;
    const BaseGrid grid{n};
    const auto projectors = two_band_lower_projectors(n, 1.0);
    CHECK(chern_number(projectors, grid) == 1);
    // Extract frames, rotate each one by a different phase, recompute.
    std::vector<MatrixXcd> frames(projectors.size());
    SplitMix64 rng(5u);
    for (std::size_t v = 0; v < projectors.size(); ++v) {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(projectors[v]);
        frames[v] = es.eigenvectors().rightCols(1);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        frames[v] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    CHECK(chern_number_frames(frames, grid) == 1);
}

TEST_CASE("chern number adds over direct sums") {
    const int n = 16;
    const BaseGrid grid{n};
    const auto plus = two_band_lower_projectors(n, 1.0);   // c1 = +1
    const auto minus = two_band_lower_projectors(n, -1.0);  // c1 = -1
    std::vector<MatrixXcd> sum(plus.size());
    std::vector<MatrixXcd> doubled(plus.size());
    for (std::size_t v = 0; v < plus.size(); ++v) {
        sum[v] = MatrixXcd::Zero(4, 4);
        sum[v].topLeftCorner(2, 2) = plus[v];
        sum[v].bottomRightCorner(2, 2) = minus[v];
        doubled[v] = MatrixXcd::Zero(4, 4);
        doubled[v].topLeftCorner(2, 2) = plus[v];
        doubled[v].bottomRightCorner(2, 2) = plus[v];
    }
    CHECK(chern_number(sum, grid) == 0);
    CHECK(chern_number(doubled, grid) == 2);
}

TEST_CASE("wildly varying frames are rejected as under-resolved") {
    // Real rank-1 frames rotating by 1.62 rad per step have |link| ~ 0.05,
    // far under the safety floor.
    const int n = 8;
    const BaseGrid grid{n};
    std::vector<MatrixXcd> frames(grid.vertices(), MatrixXcd::Zero(2, 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double th = 1.62 * i;
            frames[grid.vertex(i, j)](0, 0) = std::cos(th);
            frames[grid.vertex(i, j)](1, 0) = std::sin(th);
        }
    }
    CHECK_THROWS_AS(chern_number_frames(frames, grid), std::runtime_error);
}

TEST_CASE("rank-zero bundles have chern number zero") {
    const BaseGrid grid{8};
    std::vector<MatrixXcd> empty(grid.vertices(), MatrixXcd::Zero(3, 0));
    CHECK(chern_number_frames(empty, grid) == 0);
    std::vector<MatrixXcd> zeros(grid.vertices(), MatrixXcd::Zero(3, 3));
    CHECK(chern_number(zeros, grid) == 0);
}

TEST_CASE("two-band family packages the model as a graded operator") {
    const int n = 16;
    const SpectralFamily fam = make_two_band_family(n, 1.0);
    fam.check();
    CHECK(fam.dim_plus == 2);
    CHECK(fam.dim_minus == 1);
    CHECK(fam.kernel_dim == 1);
    CHECK(fam.gap == doctest::Approx(1.0));
    REQUIRE(static_cast<int>(fam.a_plus.size()) == fam.grid.vertices());
    // ker A_plus(b) is the lower band: A_plus annihilates the lower-band
    // eigenvector at a sample of vertices.
    const auto projectors = two_band_lower_projectors(n, 1.0);
    for (std::size_t v = 0; v < projectors.size(); v += 37) {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(projectors[v]);
        const MatrixXcd lower = es.eigenvectors().rightCols(1);
        CHECK((fam.a_plus[v] * lower).norm() < 1e-12);
    }
    // Gapless mass is rejected.
    CHECK_THROWS_AS(make_two_band_family(n, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(make_two_band_family(n, 0.0), std::invalid_argument);
}

TEST_CASE("family kernel bundles live in the plus chirality") {
    const SpectralFamily fam = make_two_band_family(16, 1.0);
    const KernelBundles kb = family_kernel_bundles(fam);
    CHECK(kb.dim_plus_kernel == 1);
    CHECK(kb.dim_minus_kernel == 0);
    CHECK(chern_number_frames(kb.plus_frames, fam.grid) == 1);

    SpectralFamily wrong = fam;
    wrong.kernel_dim = 2;  // declared dimension disagrees with the data
    CHECK_THROWS_AS(family_kernel_bundles(wrong), std::invalid_argument);
}

TEST_CASE("family index table in degrees 0 and 2") {
    const SpectralFamily fam = make_two_band_family(16, 1.0);
    const struct {
        BoundaryCondition e0, e1;
        int d0, d2;
    } cases[] = {
        {A, A, -1, -1}, {P, M, -1, -1}, {M, P, 1, 1}, {P, P, 0, 0}};
    for (const auto& c : cases) {
        const std::vector<FamilyComponent> comps{
            {fam, c.e0, Orientation::Inward},
            {fam, c.e1, Orientation::Reversed}};
        const FamilyIndexData pred = family_predicted_chern(comps);
        CHECK(pred.degree0 == c.d0);
        CHECK(pred.degree2 == c.d2);
        const FamilyIndexData oracle =
            family_cylinder_index_bundle(fam, 1.0, c.e0, c.e1);
        CHECK(oracle.degree0 == c.d0);
        CHECK(oracle.degree2 == c.d2);
    }
}

TEST_CASE("opposite mass flips only the degree-2 data") {
    const SpectralFamily fam = make_two_band_family(16, -1.0);
    const FamilyIndexData aps = family_cylinder_index_bundle(fam, 1.0, A, A);
    CHECK(aps.degree0 == -1);
    CHECK(aps.degree2 == 1);
    const std::vector<FamilyComponent> comps{
        {fam, A, Orientation::Inward}, {fam, A, Orientation::Reversed}};
    const FamilyIndexData pred = family_predicted_chern(comps);
    CHECK(pred.degree0 == -1);
    CHECK(pred.degree2 == 1);
}

TEST_CASE("shared nonzero modes do not move the family index") {
    SpectralFamily fam = make_two_band_family(12, 1.0);
    ChiralSpectrum extra;
    extra.cutoff = 10.0;
    extra.positive_modes = {{1.5, 1}, {4.0, 2}};
    fam.shared_modes = extra;
    fam.check();
    const FamilyIndexData with = family_cylinder_index_bundle(fam, 1.0, P, M);
    CHECK(with.degree0 == -1);
    CHECK(with.degree2 == -1);
}

TEST_CASE("family predictions insist on a shared grid") {
    const SpectralFamily f16 = make_two_band_family(16, 1.0);
    const SpectralFamily f12 = make_two_band_family(12, 1.0);
    const std::vector<FamilyComponent> mixed{
        {f16, P, Orientation::Inward}, {f12, M, Orientation::Reversed}};
    CHECK_THROWS_AS(family_predicted_chern(mixed), std::invalid_argument);
    // A lone local end gives a half-integer prediction.
    const std::vector<FamilyComponent> lone{{f16, P, Orientation::Inward}};
    CHECK_THROWS_AS(family_predicted_chern(lone), std::runtime_error);
}
