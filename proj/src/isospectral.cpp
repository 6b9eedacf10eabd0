#include "diraclab/isospectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "diraclab/errors.hpp"
#include "diraclab/parallel.hpp"
#include "diraclab/special.hpp"

namespace diraclab {

namespace {

void reject_aps(BoundaryCondition c, const char* who) {
    if (c == BoundaryCondition::APS)
        throw std::invalid_argument(std::string(who) +
                                    ": spectral (APS) conditions are outside "
                                    "the scope of the local swap test");
}

}  // namespace

SwapVerdict necessary_condition(const std::vector<SwapComponent>& components) {
    SwapVerdict v;
    for (const SwapComponent& c : components) {
        reject_aps(c.eps, "necessary_condition");
        reject_aps(c.eps_prime, "necessary_condition");
        c.spectrum.check();
        if (c.eps == c.eps_prime) continue;
        BoundaryComponent bc{c.spectrum, c.eps, c.orientation};
        if (c.eps == BoundaryCondition::Minus)
            v.s1 += bc.effective_index();  // Minus -> Plus
        else
            v.s2 += bc.effective_index();  // Plus -> Minus
    }
    v.ruled_out = (v.s1 != 0 || v.s2 != 0);
    return v;
}

void SwapCylinder::check() const {
    spectrum.check();
    if (!(L > 0.0))
        throw std::invalid_argument("SwapCylinder: L must be positive");
    reject_aps(eps0, "SwapCylinder");
    reject_aps(eps0_prime, "SwapCylinder");
    reject_aps(eps1, "SwapCylinder");
    reject_aps(eps1_prime, "SwapCylinder");
}

std::vector<SwapComponent> SwapCylinder::swap_components() const {
    check();
    std::vector<SwapComponent> out;
    out.push_back({spectrum, Orientation::Inward, eps0, eps0_prime});
    out.push_back({spectrum, Orientation::Reversed, eps1, eps1_prime});
    return out;
}

namespace {

enum class ScalarBC { D, N };

// Scalar boundary conditions induced on the two chiral components by a
// local condition pair: at the inward end Plus puts Dirichlet on a and
// Neumann on b, Minus the mirror image; at the reversed end the roles of
// a and b are exchanged.
ScalarBC a_at_0(BoundaryCondition e) {
    return e == BoundaryCondition::Plus ? ScalarBC::D : ScalarBC::N;
}
ScalarBC a_at_L(BoundaryCondition e) {
    return e == BoundaryCondition::Plus ? ScalarBC::N : ScalarBC::D;
}
ScalarBC b_at_0(BoundaryCondition e) {
    return e == BoundaryCondition::Plus ? ScalarBC::N : ScalarBC::D;
}
ScalarBC b_at_L(BoundaryCondition e) {
    return e == BoundaryCondition::Plus ? ScalarBC::D : ScalarBC::N;
}

struct Theta {
    double sum = 0.0;   // sum over interval modes of exp(-t mu_k)
    double tail = 0.0;  // bound on the neglected modes
};

// Theta for -d^2/du^2 on [0, L] with the stated end conditions:
// D-D: (k pi / L)^2, k >= 1; N-N: k >= 0; mixed: ((k + 1/2) pi / L)^2.
Theta interval_theta(double t, double L, ScalarBC c0, ScalarBC c1) {
    const double w0 = std::numbers::pi_v<double> / L;
    double shift;
    int k_first;
    if (c0 == c1) {
        shift = 0.0;
        k_first = (c0 == ScalarBC::D) ? 1 : 0;
    } else {
        shift = 0.5;
        k_first = 0;
    }
    Theta th;
    double comp = 0.0;  // Kahan compensation
    int k = k_first;
    for (;; ++k) {
        const double w = (static_cast<double>(k) + shift) * w0;
        const double term = std::exp(-t * w * w);
        if (term < 1e-300) break;
        const double y = term - comp;
        const double s = th.sum + y;
        comp = (s - th.sum) - y;
        th.sum = s;
        if (k > 100000000)
            throw std::runtime_error("interval_theta: mode budget exhausted");
    }
    // Neglected modes start at frequency wK: sum_{j >= K} exp(-t w_j^2)
    // <= exp(-t wK^2) + integral bound.
    const double wK = (static_cast<double>(k) + shift) * w0;
    th.tail = std::exp(-t * wK * wK) +
              0.5 * (L / std::numbers::pi_v<double>) *
                  std::sqrt(std::numbers::pi_v<double> / t) *
                  erfc(wK * std::sqrt(t));
    return th;
}

double spectrum_tail(const ChiralSpectrum& spec, double t) {
    const double L2 = spec.cutoff * spec.cutoff;
    const double n = static_cast<double>(spec.total_multiplicity() +
                                         spec.ker_total() + 1);
    return 2.0 * n / (L2 * t) * std::exp(-t * L2);
}

}  // namespace

TraceDifference trace_difference(const SwapCylinder& cyl, double t,
                                 double tol) {
    cyl.check();
    if (!(t > 0.0))
        throw std::invalid_argument("trace_difference: t must be positive");

    const Theta tha = interval_theta(t, cyl.L, a_at_0(cyl.eps0), a_at_L(cyl.eps1));
    const Theta thb = interval_theta(t, cyl.L, b_at_0(cyl.eps0), b_at_L(cyl.eps1));
    const Theta thap = interval_theta(t, cyl.L, a_at_0(cyl.eps0_prime),
                                      a_at_L(cyl.eps1_prime));
    const Theta thbp = interval_theta(t, cyl.L, b_at_0(cyl.eps0_prime),
                                      b_at_L(cyl.eps1_prime));

    const double channel_factor = (tha.sum + thb.sum) - (thap.sum + thbp.sum);
    const ChiralSpectrum& spec = cyl.spectrum;
    const double mode_sum =
        par::reduce_sum(spec.positive_modes.size(), [&](std::size_t i) {
            const SpectralMode& m = spec.positive_modes[i];
            return m.multiplicity * std::exp(-t * m.lambda * m.lambda);
        });

    TraceDifference out;
    out.value = mode_sum * channel_factor +
                spec.ker_plus * (tha.sum - thap.sum) +
                spec.ker_minus * (thb.sum - thbp.sum);

    // Boundary-spectrum truncation: each neglected channel contributes at
    // most |theta difference| <= 2 per chirality pair; interval truncation:
    // every retained channel weight is <= mode_sum + ker_total.
    const double weight =
        mode_sum + static_cast<double>(spec.ker_total()) + 1.0;
    const double interval_tail = tha.tail + thb.tail + thap.tail + thbp.tail;
    out.tail_bound = 2.0 * spectrum_tail(spec, t) + weight * interval_tail;
    if (!(out.tail_bound <= tol))
        throw TruncationError("trace_difference: tail bound " +
                              std::to_string(out.tail_bound) +
                              " exceeds tolerance at t = " + std::to_string(t));
    return out;
}

TraceSweep trace_difference_sweep(const SwapCylinder& cyl,
                                  const std::vector<double>& t_grid,
                                  double tol) {
    TraceSweep sw;
    sw.t = t_grid;
    for (double t : t_grid) {
        const TraceDifference d = trace_difference(cyl, t, tol);
        sw.values.push_back(d.value);
        sw.truncation_bound.push_back(d.tail_bound);
    }
    sw.check();
    return sw;
}

ExtractedConstant extract_constant(const TraceSweep& sweep, double tol) {
    sweep.check();
    if (!sweep.u.empty())
        throw std::invalid_argument("extract_constant: expected a pure t-sweep");
    if (sweep.t.size() < 3)
        throw std::invalid_argument(
            "extract_constant: need at least 3 samples to judge convergence");
    ExtractedConstant out;
    out.constant = sweep.values[0];  // smallest t: the asymptotic end
    out.residual_bound = std::abs(sweep.values[0] - sweep.values[1]) +
                         sweep.truncation_bound[0] + sweep.truncation_bound[1];
    out.converged = out.residual_bound <= tol;
    return out;
}

}  // namespace diraclab
