#ifndef DIRACLAB_ISOSPECTRAL_HPP
#define DIRACLAB_ISOSPECTRAL_HPP

#include <vector>

#include "diraclab/index_engine.hpp"
#include "diraclab/spectral_models.hpp"

namespace diraclab {

// One boundary component of a proposed condition swap: the original local
// condition eps and the proposed replacement eps_prime.  APS entries are
// outside the scope of the swap test and are rejected.
struct SwapComponent {
    ChiralSpectrum spectrum;
    Orientation orientation = Orientation::Inward;
    BoundaryCondition eps = BoundaryCondition::Plus;
    BoundaryCondition eps_prime = BoundaryCondition::Plus;
};

// s1 sums the effective indices of components switching Minus -> Plus,
// s2 of components switching Plus -> Minus; isospectrality of the swapped
// problems requires s1 = s2 = 0.
struct SwapVerdict {
    bool ruled_out = false;
    int s1 = 0;
    int s2 = 0;
};

SwapVerdict necessary_condition(const std::vector<SwapComponent>& components);

// Finite-cylinder swap: condition set (eps0, eps1) against
// (eps0_prime, eps1_prime), all local.
struct SwapCylinder {
    ChiralSpectrum spectrum;
    double L = 1.0;
    BoundaryCondition eps0 = BoundaryCondition::Plus;
    BoundaryCondition eps0_prime = BoundaryCondition::Plus;
    BoundaryCondition eps1 = BoundaryCondition::Plus;
    BoundaryCondition eps1_prime = BoundaryCondition::Plus;

    void check() const;  // throws std::invalid_argument (APS, bad L, ...)

    // The two implied swap components (end 0 Inward, end L Reversed).
    std::vector<SwapComponent> swap_components() const;
};

struct TraceDifference {
    double value = 0.0;
    double tail_bound = 0.0;
};

// Tr exp(-t Laplacian[eps]) - Tr exp(-t Laplacian[eps']) assembled from the
// per-channel interval spectra (brute force, no index theory).  The tail
// bound covers both the boundary-spectrum truncation and the interval-mode
// truncation; TruncationError if it exceeds tol.
TraceDifference trace_difference(const SwapCylinder& cyl, double t,
                                 double tol = 1e-6);

TraceSweep trace_difference_sweep(const SwapCylinder& cyl,
                                  const std::vector<double>& t_grid,
                                  double tol = 1e-6);

// Small-t limit read off a sweep: the value at the smallest t, with the
// spread against the next sample (plus their truncation bounds) as the
// residual.  Requires at least 3 samples (std::invalid_argument otherwise);
// converged means the residual bound is below tol.
struct ExtractedConstant {
    double constant = 0.0;
    double residual_bound = 0.0;
    bool converged = false;
};

ExtractedConstant extract_constant(const TraceSweep& sweep, double tol = 1e-6);

}  // namespace diraclab

#endif
