#ifndef DIRACLAB_FAMILY_CHERN_HPP
#define DIRACLAB_FAMILY_CHERN_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "diraclab/spectral_models.hpp"

namespace diraclab {

// Periodic n x n parameter grid (torus of base points), n >= 8.
struct BaseGrid {
    int n = 8;

    void check() const;  // throws std::invalid_argument if n < 8
    int vertices() const { return n * n; }
    int vertex(int i, int j) const {  // wrapped flat index
        const int ii = ((i % n) + n) % n;
        const int jj = ((j % n) + n) % n;
        return ii + n * jj;
    }
    // Euler characteristic of the cell complex (vertices - edges + faces);
    // zero for the torus by construction, exposed for the invariant test.
    int euler_characteristic() const { return n * n - 2 * n * n + n * n; }
};

// Family of graded boundary operators over the grid: per-vertex block
// A_plus(b) (mapping the plus chirality to the minus one; the full operator
// is [[0, A_plus^*], [A_plus, 0]]), a declared spectral gap, a declared
// total kernel dimension, and optionally a nonzero-mode spectrum shared by
// every vertex.
struct SpectralFamily {
    BaseGrid grid;
    int dim_plus = 0;
    int dim_minus = 0;
    std::vector<Eigen::MatrixXcd> a_plus;  // grid.vertices() blocks
    double gap = 0.0;
    int kernel_dim = 0;
    std::optional<ChiralSpectrum> shared_modes;

    void check() const;  // shape and invariant checks
};

// Spectral projector onto the near-kernel of a Hermitian matrix: eigenvalues
// with |mu| <= 0.01 * gap count as kernel, all others must satisfy
// |mu| >= gap; a mid-band eigenvalue throws std::runtime_error
// ("kernel dimension jump").
Eigen::MatrixXcd kernel_projector(const Eigen::MatrixXcd& h, double gap);

// First Chern number of the rank-r bundle spanned by per-vertex projectors
// (all ranks equal, else "kernel dimension jump"), via plaquette link
// determinants on the counterclockwise loop (i,j) -> (i+1,j) -> (i+1,j+1)
// -> (i,j+1).  Rank 0 yields 0.  Throws std::runtime_error "grid too
// coarse" when a link nearly vanishes or a plaquette phase comes within
// 0.2 rad of the branch cut at +-pi.
int chern_number(const std::vector<Eigen::MatrixXcd>& projectors,
                 const BaseGrid& grid);

// Same, but directly from per-vertex orthonormal frames (d x r matrices).
// chern_number(projectors) is invariant under per-vertex unitary changes of
// the frames it extracts; this overload makes that property testable.
int chern_number_frames(const std::vector<Eigen::MatrixXcd>& frames,
                        const BaseGrid& grid);

// Two-band model family on the grid: h(k) = (sin k1, sin k2,
// m + cos k1 + cos k2) with k = 2 pi (i, j) / n.  Lower-band projectors
// (rank 1 in C^2) for chern_number;
std::vector<Eigen::MatrixXcd> two_band_lower_projectors(int n, double m);

// the same model packaged as a graded family: A_plus(b) is the row vector
// pairing against the upper-band eigenvector, so ker A_plus(b) is the
// lower band (dim_plus = 2, dim_minus = 1, gap 1, kernel_dim 1).  Throws
// std::invalid_argument when the model is gapless on the grid.
SpectralFamily make_two_band_family(int n, double m);

// Per-vertex singular-value split of A_plus: orthonormal frames for
// ker A_plus (in C^{dim_plus}) and ker A_plus^* (in C^{dim_minus}).
// Dimensions must be constant over the grid and sum to the declared
// kernel_dim ("kernel dimension jump" otherwise).
struct KernelBundles {
    int dim_plus_kernel = 0;
    int dim_minus_kernel = 0;
    std::vector<Eigen::MatrixXcd> plus_frames;
    std::vector<Eigen::MatrixXcd> minus_frames;
};
KernelBundles family_kernel_bundles(const SpectralFamily& fam);

struct FamilyComponent {
    SpectralFamily family;
    BoundaryCondition condition = BoundaryCondition::APS;
    Orientation orientation = Orientation::Inward;
};

struct FamilyIndexData {
    int degree0 = 0;
    int degree2 = 0;
};

// Predicted family index in degrees 0 and 2:
//   deg0 = 1/2 [ sum_Minus ind_eff - sum_Plus ind_eff - sum_APS ker_tot ],
//   deg2 = the same combination applied to the kernel-bundle Chern numbers.
// Reversed orientation swaps the chiral kernel bundles.  Half-integer
// results throw std::runtime_error ("inconsistent family data").
FamilyIndexData family_predicted_chern(
    const std::vector<FamilyComponent>& components);

// Brute-force family index of the cylinder problem [0, L] with conditions
// (eps0, eps1): per-vertex kernels of the mode operator and its adjoint,
// assembled as subbundles of the ambient C^{dim_plus + dim_minus}, and
// their Chern numbers.  degree0 = dim ker D - dim ker D*, degree2 =
// c1(ker D) - c1(ker D*).
FamilyIndexData family_cylinder_index_bundle(const SpectralFamily& fam,
                                             double L, BoundaryCondition eps0,
                                             BoundaryCondition eps1);

}  // namespace diraclab

#endif
