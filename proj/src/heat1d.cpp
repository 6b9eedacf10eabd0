#include "diraclab/heat1d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "diraclab/parallel.hpp"
#include "diraclab/special.hpp"

namespace diraclab {

namespace {

void check_tu(double t, double u) {
    if (!(t > 0.0)) throw std::invalid_argument("heat1d: t must be positive");
    if (!(u >= 0.0)) throw std::invalid_argument("heat1d: u must be nonnegative");
}

double free_density(double t) {
    return 1.0 / std::sqrt(4.0 * std::numbers::pi_v<double> * t);
}

}  // namespace

double dirichlet_density(double t, double u) {
    check_tu(t, u);
    return free_density(t) * (1.0 - std::exp(-u * u / t));
}

double neumann_density(double t, double u) {
    check_tu(t, u);
    return free_density(t) * (1.0 + std::exp(-u * u / t));
}

RobinPair robin_density_pair(double t, double u, double lambda) {
    check_tu(t, u);
    if (!(lambda < 0.0))
        throw std::invalid_argument(
            "robin_density_pair: lambda must be negative (mirror the sign, or "
            "use the Dirichlet/Neumann pair for lambda = 0)");
    const double st = std::sqrt(t);
    const double shift = std::exp(-lambda * lambda * t);
    const double gauss = std::exp(-u * u / t);
    const double common = shift * free_density(t) * (1.0 + gauss);
    // k1: boundary term lambda e^{-2 lambda u + lambda^2 t} erfc(u/sqrt(t) -
    // lambda sqrt(t)); the exponent collapses against the energy shift, so the
    // erfcx form below is exact and overflow-free for every u, t.
    const double k1 = common +
                      lambda * gauss * shift * erfcx(u / st - lambda * st);
    // k2: mirrored Robin sign; the bound-state branch makes the shifted
    // boundary term t-uniform: -lambda e^{2 lambda u} erfc(u/sqrt(t) +
    // lambda sqrt(t)) -> -2 lambda e^{2 lambda u} as t -> infinity.
    const double k2 = common -
                      lambda * std::exp(2.0 * lambda * u) *
                          erfc(u / st + lambda * st);
    return {k1, k2};
}

// ---------------------------------------------------------------------------
// Eigenfunction-expansion oracle on [0, R]
// ---------------------------------------------------------------------------

namespace {

// Characteristic function for Robin oscillatory frequencies:
//   g(w) = w cos(wR) + h sin(wR),   h = -mu.
double robin_char(double w, double R, double h) {
    return w * std::cos(w * R) + h * std::sin(w * R);
}

double bisect_robin(double lo, double hi, double flo, double R, double h) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-14 * (1.0 + mid)) return mid;
        const double fmid = robin_char(mid, R, h);
        if (fmid == 0.0) return mid;
        if ((flo > 0.0) == (fmid > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Bound-state rate for h < 0 with |h| R > 1: the root of
// tanh(kappa R) = kappa / |h|.  The root sits within e^{-2|h|R} of |h|, so
// the upper bracket must exceed |h| slightly or rounding loses the sign
// change.
double bound_state_rate(double R, double h) {
    const double ah = -h;
    auto f = [&](double k) { return std::tanh(k * R) - k / ah; };
    double lo = 1e-12, hi = ah * (1.0 + 1e-9);
    double flo = f(lo);
    if (!(flo > 0.0) || !(f(hi) < 0.0))
        throw std::runtime_error("halfline_oracle: bound-state bracketing failure");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-15 * ah) return mid;
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((flo > 0.0) == (fmid > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double HalfLineEigensystem::eigenfunction(std::size_t k, double u) const {
    const double w = omega[k];
    switch (bc.kind) {
        case HalfLineCondition::Kind::Dirichlet:
            return std::sin(w * u);
        case HalfLineCondition::Kind::Neumann:
            return std::cos(w * u);
        case HalfLineCondition::Kind::Robin: {
            const double h = -bc.mu;
            return w * std::cos(w * u) + h * std::sin(w * u);
        }
    }
    return 0.0;
}

double HalfLineEigensystem::bound_eigenfunction(double u) const {
    // phi0(u) = (kappa + |h|)/2 * e^{-kappa u} * (1 - e^{-2 kappa (R - u)}),
    // using the root identity (kappa - |h|) e^{kappa R} = -(kappa + |h|)
    // e^{-kappa R} to avoid the growing branch.
    const double ah = bc.mu;  // bound state exists only for mu > 0, h = -mu
    return 0.5 * (kappa + ah) * std::exp(-kappa * u) *
           (1.0 - std::exp(-2.0 * kappa * (R - u)));
}

HalfLineEigensystem halfline_eigensystem(const HalfLineCondition& bc, double R,
                                         int M) {
    if (!(R > 0.0)) throw std::invalid_argument("halfline_eigensystem: R must be positive");
    if (M < 1) throw std::invalid_argument("halfline_eigensystem: M must be >= 1");

    HalfLineEigensystem sys;
    sys.bc = bc;
    sys.R = R;
    const double pi = std::numbers::pi_v<double>;

    switch (bc.kind) {
        case HalfLineCondition::Kind::Dirichlet: {
            sys.omega.resize(M);
            sys.norm2.assign(M, 0.5 * R);
            for (int k = 0; k < M; ++k) sys.omega[k] = (k + 1) * pi / R;
            return sys;
        }
        case HalfLineCondition::Kind::Neumann: {
            sys.omega.resize(M);
            sys.norm2.assign(M, 0.5 * R);
            for (int k = 0; k < M; ++k) sys.omega[k] = (k + 0.5) * pi / R;
            return sys;
        }
        case HalfLineCondition::Kind::Robin:
            break;
    }

    const double h = -bc.mu;

    // Bound state (negative eigenvalue) for strongly attractive boundaries.
    if (h < 0.0 && (-h) * R > 1.0) {
        sys.has_bound_state = true;
        sys.kappa = bound_state_rate(R, h);
        const double k2R = std::exp(-2.0 * sys.kappa * R);
        const double amp = 0.5 * (sys.kappa + bc.mu);
        // Integral of phi0^2 in the decaying-branch representation.
        sys.bound_norm2 =
            amp * amp *
            ((1.0 - k2R) / (2.0 * sys.kappa) - 2.0 * R * k2R +
             (k2R - k2R * k2R) / (2.0 * sys.kappa));
    }

    // Oscillatory roots of g(w) = w cos(wR) + h sin(wR): scan period cells
    // [k pi/R, (k+1) pi/R], each subdivided so the irregular first cells
    // (0, 1, or 2 roots) are resolved; one root per cell asymptotically.
    sys.omega.reserve(M);
    const int sub = 8;
    for (int cell = 0; static_cast<int>(sys.omega.size()) < M; ++cell) {
        if (cell > 4 * M + 16)
            throw std::runtime_error(
                "halfline_oracle: non-converged transcendental root "
                "(bracketing failure)");
        const double a = cell * pi / R;
        for (int s = 0; s < sub && static_cast<int>(sys.omega.size()) < M; ++s) {
            double lo = a + s * pi / (R * sub);
            double hi = a + (s + 1) * pi / (R * sub);
            if (cell == 0 && s == 0) lo = 1e-12 * pi / R;  // skip w = 0
            const double flo = robin_char(lo, R, h);
            const double fhi = robin_char(hi, R, h);
            if (flo == 0.0) {
                sys.omega.push_back(lo);
                continue;
            }
            if ((flo > 0.0) != (fhi > 0.0))
                sys.omega.push_back(bisect_robin(lo, hi, flo, R, h));
        }
    }

    sys.norm2.resize(M);
    for (int k = 0; k < M; ++k) {
        const double w = sys.omega[k];
        const double s2 = std::sin(2.0 * w * R) / (4.0 * w);
        const double sR = std::sin(w * R);
        sys.norm2[k] = w * w * (0.5 * R + s2) + h * sR * sR +
                       h * h * (0.5 * R - s2);
    }
    return sys;
}

OracleValue oracle_eval(const HalfLineEigensystem& sys, double t, double u,
                        double v) {
    if (!(t > 0.0)) throw std::invalid_argument("oracle_eval: t must be positive");
    const std::size_t M = sys.omega.size();
    double value = par::reduce_sum(M, [&](std::size_t k) {
        const double w = sys.omega[k];
        return std::exp(-t * w * w) * sys.eigenfunction(k, u) *
               sys.eigenfunction(k, v) / sys.norm2[k];
    });
    if (sys.has_bound_state) {
        value += std::exp(t * sys.kappa * sys.kappa) *
                 sys.bound_eigenfunction(u) * sys.bound_eigenfunction(v) /
                 sys.bound_norm2;
    }

    // Tail estimate for the dropped modes: |phi phi / norm2| is bounded by
    // c/R with c <= 8 once w dominates |h|, and the frequencies are spaced
    // ~ pi/R, so the tail is below
    //   (8/R) [ e^{-t w_M^2} + (R/pi) int_{w_M}^inf e^{-t w^2} dw ].
    const double wM = sys.omega.empty() ? 0.0 : sys.omega.back();
    const double pi = std::numbers::pi_v<double>;
    const double st = std::sqrt(t);
    const double tail =
        (8.0 / sys.R) * (std::exp(-t * wM * wM) +
                         (sys.R / pi) * 0.5 * std::sqrt(pi / t) *
                             erfc(wM * st));
    return {value, tail};
}

OracleValue halfline_oracle(double t, double u, double v,
                            const HalfLineCondition& bc, double R, int M) {
    if (!(t > 0.0)) throw std::invalid_argument("halfline_oracle: t must be positive");
    if (!(u >= 0.0) || !(v >= 0.0))
        throw std::invalid_argument("halfline_oracle: u, v must be nonnegative");
    const double umax = u > v ? u : v;
    if (R < umax + 10.0 * std::sqrt(t))
        throw std::invalid_argument(
            "halfline_oracle: R too small (require R >= max(u, v) + 10 sqrt(t))");
    return oracle_eval(halfline_eigensystem(bc, R, M), t, u, v);
}

std::vector<double> interval_mode_eigenvalues(double L, IntervalBC bc0,
                                              IntervalBC bc1, int count) {
    if (!(L > 0.0)) throw std::invalid_argument("interval_mode_eigenvalues: L must be positive");
    if (count < 1) throw std::invalid_argument("interval_mode_eigenvalues: count must be >= 1");
    const double pi = std::numbers::pi_v<double>;
    std::vector<double> ev(count);
    const bool d0 = bc0 == IntervalBC::Dirichlet;
    const bool d1 = bc1 == IntervalBC::Dirichlet;
    if (d0 == d1) {
        // D-D starts at k = 1, N-N includes the constant mode k = 0.
        const int k0 = d0 ? 1 : 0;
        for (int k = 0; k < count; ++k) {
            const double w = (k + k0) * pi / L;
            ev[k] = w * w;
        }
    } else {
        for (int k = 0; k < count; ++k) {
            const double w = (k + 0.5) * pi / L;
            ev[k] = w * w;
        }
    }
    return ev;
}

}  // namespace diraclab
