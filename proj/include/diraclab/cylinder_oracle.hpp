#ifndef DIRACLAB_CYLINDER_ORACLE_HPP
#define DIRACLAB_CYLINDER_ORACLE_HPP

#include <array>

#include "diraclab/rng.hpp"
#include "diraclab/spectral_models.hpp"

namespace diraclab {

// Finite cylinder [0, L] x (boundary data).  The u = 0 end carries the
// Inward orientation and condition eps0; the u = L end is the Reversed copy
// with condition eps1.
struct CylinderProblem {
    ChiralSpectrum spectrum;
    double L = 1.0;
    BoundaryCondition eps0 = BoundaryCondition::Plus;
    BoundaryCondition eps1 = BoundaryCondition::Plus;

    void check() const;  // throws std::invalid_argument
};

struct ModeKernelDims {
    int dim_ker_d = 0;
    int dim_ker_dstar = 0;
    int index() const { return dim_ker_d - dim_ker_dstar; }
};

// Kernel dimensions of the 2x2 first-order mode system on [0, L] with
// channel eigenvalue lambda > 0 and the stated end conditions, multiplied
// by the channel multiplicity.  Solutions are a = alpha e^{-lambda u} +
// beta e^{lambda u}, b = alpha e^{-lambda u} - beta e^{lambda u}; the end
// conditions impose one linear row each on (alpha, beta) and the rank is
// decided symbolically (exactly), never by floating-point cancellation.
ModeKernelDims mode_kernel_dims(double lambda, int multiplicity, double L,
                                BoundaryCondition eps0,
                                BoundaryCondition eps1);

// Kernel dimensions of the zero-eigenvalue channels: ker_plus scalar
// channels of a-type and ker_minus of b-type, with constants as the only
// candidate solutions.  Which constants survive is given by zero_kills.
ModeKernelDims zero_mode_kernel_dims(int ker_plus, int ker_minus,
                                     BoundaryCondition eps0,
                                     BoundaryCondition eps1);

// Which zero-mode constant types an end condition annihilates.  `adjoint`
// selects the condition induced on the adjoint domain (local conditions
// swap the killed chirality; the adjoint of APS frees both).
struct ZeroKills {
    bool kill_a = false;
    bool kill_b = false;
};
ZeroKills zero_kills(BoundaryCondition c, bool at_end_L, bool adjoint);

// Total kernel dimensions of the cylinder problem (all stored channels plus
// the zero channels) and the resulting index dim ker D - dim ker D*.
ModeKernelDims cylinder_kernel_dims(const CylinderProblem& prob);
int cylinder_index(const CylinderProblem& prob);

// Swapping the two end conditions and re-reading the cylinder from the far
// end: the reversed problem has the chiral kernels exchanged.
CylinderProblem reversed(const CylinderProblem& prob);

// ---------------------------------------------------------------------------
// Green identity instrumentation.
//
// The mode operator on a channel with eigenvalue lambda acts on real pairs
// (a, b) as D(a, b) = (i (a' + lambda b), -i (lambda a + b')).  For smooth
// fields, <D phi, psi> - <phi, D psi> = i * boundary_pairing(phi, psi, L).
// Test functions are real cubics per component.

struct ModeSolution {
    double lambda = 0.0;
    std::array<double, 4> a_coef{};  // a(u) = sum_k a_coef[k] u^k
    std::array<double, 4> b_coef{};

    double a(double u) const;
    double b(double u) const;
    double da(double u) const;
    double db(double u) const;
};

// [a_phi a_psi - b_phi b_psi](L) - [a_phi a_psi - b_phi b_psi](0).
double boundary_pairing(const ModeSolution& phi, const ModeSolution& psi,
                        double L);

// Quadrature evaluation of the real part of
// (<D phi, psi> - <phi, D psi>) / i over [0, L] (exact for cubics up to
// rounding, Gauss-Legendre panels).
double green_form(const ModeSolution& phi, const ModeSolution& psi, double L);

// |green_form - boundary_pairing|: the integration-by-parts defect, which
// must vanish for arbitrary smooth pairs.
double green_identity_residual(const ModeSolution& phi,
                               const ModeSolution& psi, double L);

// Random cubic pair satisfying the end conditions: the direct condition set
// when adjoint = false, the induced adjoint conditions when adjoint = true.
// For admissible direct/adjoint pairs boundary_pairing vanishes identically.
ModeSolution random_admissible_solution(SplitMix64& rng, double lambda,
                                        double L, BoundaryCondition eps0,
                                        BoundaryCondition eps1, bool adjoint);

}  // namespace diraclab

#endif
