#ifndef DIRACLAB_INDEX_ENGINE_HPP
#define DIRACLAB_INDEX_ENGINE_HPP

#include <string>
#include <vector>

#include "diraclab/spectral_models.hpp"

namespace diraclab {

// Truncated chiral heat traces at time t, with the rigorous tail bound for
// the part of the spectrum above the cutoff.  Both traces share the same
// computed mode sum S(t), so their difference cancels algebraically to
// ker_plus - ker_minus; difference() returns that exact value rather than
// the rounded tr_plus - tr_minus.
struct HeatTraces {
    double tr_plus = 0.0;   // ker_plus + S(t)
    double tr_minus = 0.0;  // ker_minus + S(t)
    double bound = 0.0;     // tail bound, valid for both traces
    int index = 0;          // ker_plus - ker_minus
    double difference() const { return static_cast<double>(index); }
};

// S(t) = sum over stored modes of mult * exp(-t lambda^2), shared by both
// chiralities; tr_pm = ker_pm + S(t).  The tail bound
//   2 (N + K + 1) / (cutoff^2 t) * exp(-t cutoff^2)
// (N = total stored multiplicity, K = ker_total) dominates the neglected
// part of either trace under the spectral growth assumptions of the model
// builders.  Throws TruncationError when the bound exceeds tol.
HeatTraces heat_traces(const ChiralSpectrum& spec, double t,
                       double tol = 1e-4);

// Boundary index density at distance u from a component with a local
// condition:  -s * exp(-u^2/t) / sqrt(pi t) * effective_index, where s = +1
// for Plus and s = -1 for Minus.  APS components are rejected
// (std::invalid_argument): use aps_density for those.
double local_density(const BoundaryComponent& comp, double t, double u);

// Closed form of the integral of local_density over u in [0, U]:
//   -s * effective_index * erf(U / sqrt(t)) / 2.
// U may be +infinity.
double local_density_integral(const BoundaryComponent& comp, double t,
                              double U);

// Index density of the APS boundary condition.  The paired nonzero spectral
// channels of D*D and DD* carry identical boundary conditions and cancel
// exactly, leaving only the zero-mode channel:
//   -exp(-u^2/t) / sqrt(pi t) * ker_total.
// The truncation-admissibility of t is checked as in heat_traces.
double aps_density(const ChiralSpectrum& spec, double t, double u,
                   double tol = 1e-4);

// Adaptive quadrature of aps_density over u in [0, U] (absolute tolerance
// quad_tol); U must be finite here.
double aps_density_integral(const ChiralSpectrum& spec, double t, double U,
                            double tol = 1e-4, double quad_tol = 1e-9);

// Predicted index of a compatible boundary-value problem:
//   1/2 sum_{Minus} ind_eff - 1/2 sum_{Plus} ind_eff
//   - 1/2 sum_{APS} ker_total.
// Evaluated in integer arithmetic; throws std::runtime_error
// ("inconsistent boundary data") when the combination is a half-integer.
int predicted_index(const std::vector<BoundaryComponent>& components);

// Rectangular sweep container used by the CLI and the isospectral module.
// t is strictly increasing; u may be empty (pure t-sweep).  values and
// truncation_bound are t-major: entry (i, j) lives at i * max(1, u.size()) + j.
struct TraceSweep {
    std::vector<double> t;
    std::vector<double> u;
    std::vector<double> values;
    std::vector<double> truncation_bound;

    std::size_t columns() const { return u.empty() ? 1 : u.size(); }
    double at(std::size_t i, std::size_t j = 0) const {
        return values[i * columns() + j];
    }
    void check() const;  // throws std::invalid_argument on shape violations
};

// Density sweeps over a (t, u) grid.  local_density_sweep has zero
// truncation bound (closed form); aps_density_sweep records the
// admissibility bound per t.
TraceSweep local_density_sweep(const BoundaryComponent& comp,
                               const std::vector<double>& t_grid,
                               const std::vector<double>& u_grid);
TraceSweep aps_density_sweep(const ChiralSpectrum& spec,
                             const std::vector<double>& t_grid,
                             const std::vector<double>& u_grid,
                             double tol = 1e-4);

// Sweep of heat_traces difference tr_plus - tr_minus over a t grid.
TraceSweep heat_trace_sweep(const ChiralSpectrum& spec,
                            const std::vector<double>& t_grid,
                            double tol = 1e-4);

}  // namespace diraclab

#endif
