#include "diraclab/index_engine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "diraclab/errors.hpp"
#include "diraclab/parallel.hpp"
#include "diraclab/special.hpp"

namespace diraclab {

namespace {

double tail_bound(const ChiralSpectrum& spec, double t) {
    const double L2 = spec.cutoff * spec.cutoff;
    const double n = static_cast<double>(spec.total_multiplicity() +
                                         spec.ker_total() + 1);
    return 2.0 * n / (L2 * t) * std::exp(-t * L2);
}

double mode_sum(const ChiralSpectrum& spec, double t) {
    return par::reduce_sum(spec.positive_modes.size(), [&](std::size_t i) {
        const SpectralMode& m = spec.positive_modes[i];
        return m.multiplicity * std::exp(-t * m.lambda * m.lambda);
    });
}

double gauss_factor(double t, double u) {
    return std::exp(-u * u / t) /
           std::sqrt(std::numbers::pi_v<double> * t);
}

int local_sign(BoundaryCondition c) {
    switch (c) {
        case BoundaryCondition::Plus: return +1;
        case BoundaryCondition::Minus: return -1;
        default: break;
    }
    throw std::invalid_argument(
        "local_density: APS condition has no local density of this form; "
        "use aps_density");
}

void check_time(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("heat time t must be positive");
}

}  // namespace

HeatTraces heat_traces(const ChiralSpectrum& spec, double t, double tol) {
    check_time(t);
    HeatTraces out;
    out.bound = tail_bound(spec, t);
    if (!(out.bound <= tol))
        throw TruncationError("heat_traces: truncation bound " +
                              std::to_string(out.bound) +
                              " exceeds tolerance at t = " + std::to_string(t));
    const double s = mode_sum(spec, t);
    out.tr_plus = spec.ker_plus + s;
    out.tr_minus = spec.ker_minus + s;
    out.index = spec.index();
    return out;
}

double local_density(const BoundaryComponent& comp, double t, double u) {
    check_time(t);
    if (u < 0.0) throw std::invalid_argument("local_density: u must be >= 0");
    const int s = local_sign(comp.condition);
    return -s * gauss_factor(t, u) * comp.effective_index();
}

double local_density_integral(const BoundaryComponent& comp, double t,
                              double U) {
    check_time(t);
    if (U < 0.0)
        throw std::invalid_argument("local_density_integral: U must be >= 0");
    const int s = local_sign(comp.condition);
    const double e = std::isinf(U) ? 1.0 : erf(U / std::sqrt(t));
    return -s * 0.5 * comp.effective_index() * e;
}

double aps_density(const ChiralSpectrum& spec, double t, double u, double tol) {
    check_time(t);
    if (u < 0.0) throw std::invalid_argument("aps_density: u must be >= 0");
    const double bound = tail_bound(spec, t);
    if (!(bound <= tol))
        throw TruncationError("aps_density: truncation bound " +
                              std::to_string(bound) +
                              " exceeds tolerance at t = " + std::to_string(t));
    // The nonzero-mode channels of the two Laplacians share the same induced
    // boundary condition and cancel pairwise in the density; only the
    // zero-mode channel (Dirichlet vs Neumann on the half line) survives.
    return -gauss_factor(t, u) * spec.ker_total();
}

double aps_density_integral(const ChiralSpectrum& spec, double t, double U,
                            double tol, double quad_tol) {
    check_time(t);
    if (!(U >= 0.0) || std::isinf(U))
        throw std::invalid_argument(
            "aps_density_integral: U must be finite and >= 0");
    if (U == 0.0) return 0.0;
    return adaptive_integrate(
        [&](double u) { return aps_density(spec, t, u, tol); }, 0.0, U,
        quad_tol);
}

int predicted_index(const std::vector<BoundaryComponent>& components) {
    long long twice = 0;  // 2 * predicted index, exact integer arithmetic
    for (const BoundaryComponent& c : components) {
        switch (c.condition) {
            case BoundaryCondition::Plus: twice -= c.effective_index(); break;
            case BoundaryCondition::Minus: twice += c.effective_index(); break;
            case BoundaryCondition::APS: twice -= c.ker_total(); break;
        }
    }
    if (twice % 2 != 0)
        throw std::runtime_error("predicted_index: inconsistent boundary data "
                                 "(half-integer prediction)");
    return static_cast<int>(twice / 2);
}

void TraceSweep::check() const {
    auto ascending = [](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(v[i] > v[i - 1])) return false;
        return true;
    };
    if (t.empty()) throw std::invalid_argument("TraceSweep: empty t axis");
    if (!ascending(t))
        throw std::invalid_argument("TraceSweep: t axis must be strictly increasing");
    if (!ascending(u))
        throw std::invalid_argument("TraceSweep: u axis must be strictly increasing");
    const std::size_t expect = t.size() * columns();
    if (values.size() != expect || truncation_bound.size() != expect)
        throw std::invalid_argument("TraceSweep: value shape mismatch");
}

TraceSweep local_density_sweep(const BoundaryComponent& comp,
                               const std::vector<double>& t_grid,
                               const std::vector<double>& u_grid) {
    TraceSweep sw;
    sw.t = t_grid;
    sw.u = u_grid;
    for (double t : t_grid)
        for (double u : u_grid) {
            sw.values.push_back(local_density(comp, t, u));
            sw.truncation_bound.push_back(0.0);
        }
    sw.check();
    return sw;
}

TraceSweep aps_density_sweep(const ChiralSpectrum& spec,
                             const std::vector<double>& t_grid,
                             const std::vector<double>& u_grid, double tol) {
    TraceSweep sw;
    sw.t = t_grid;
    sw.u = u_grid;
    for (double t : t_grid) {
        const double bound = tail_bound(spec, t);
        for (double u : u_grid) {
            sw.values.push_back(aps_density(spec, t, u, tol));
            sw.truncation_bound.push_back(bound);
        }
    }
    sw.check();
    return sw;
}

TraceSweep heat_trace_sweep(const ChiralSpectrum& spec,
                            const std::vector<double>& t_grid, double tol) {
    TraceSweep sw;
    sw.t = t_grid;
    for (double t : t_grid) {
        const HeatTraces tr = heat_traces(spec, t, tol);
        sw.values.push_back(tr.difference());
        sw.truncation_bound.push_back(tr.bound);
    }
    sw.check();
    return sw;
}

}  // namespace diraclab
