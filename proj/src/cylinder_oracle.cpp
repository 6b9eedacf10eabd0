#include "diraclab/cylinder_oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "diraclab/special.hpp"

namespace diraclab {

void CylinderProblem::check() const {
    spectrum.check();
    if (!(L > 0.0))
        throw std::invalid_argument("CylinderProblem: L must be positive");
}

namespace {

// Symbolic machinery for the (alpha, beta) end rows.  Entries are integer
// multiples of one of the monomials {1, x, y} with x = e^{-lambda L},
// y = e^{+lambda L}; for lambda L > 0 these satisfy y > 1 > x > 0.
enum Monomial { kOne = 0, kX = 1, kY = 2 };

struct SymEntry {
    Monomial mono = kOne;
    int coef = 0;
};

struct SymRow {
    SymEntry alpha, beta;
};

// End rows acting on (alpha, beta) for solutions
//   a = alpha e^{-lambda u} + beta e^{lambda u},
//   b = alpha e^{-lambda u} - beta e^{lambda u}.
SymRow end_row(BoundaryCondition c, bool at_end_L, bool adjoint) {
    if (!at_end_L) {
        switch (c) {
            case BoundaryCondition::Plus:
                return adjoint ? SymRow{{kOne, 1}, {kOne, -1}}
                               : SymRow{{kOne, 1}, {kOne, 1}};
            case BoundaryCondition::Minus:
                return adjoint ? SymRow{{kOne, 1}, {kOne, 1}}
                               : SymRow{{kOne, 1}, {kOne, -1}};
            case BoundaryCondition::APS:
                return SymRow{{kOne, 1}, {kOne, 0}};  // self-paired row
        }
    } else {
        switch (c) {
            case BoundaryCondition::Plus:
                return adjoint ? SymRow{{kX, 1}, {kY, 1}}
                               : SymRow{{kX, 1}, {kY, -1}};
            case BoundaryCondition::Minus:
                return adjoint ? SymRow{{kX, 1}, {kY, -1}}
                               : SymRow{{kX, 1}, {kY, 1}};
            case BoundaryCondition::APS:
                return SymRow{{kOne, 0}, {kOne, 1}};
        }
    }
    std::abort();  // unreachable
}

// Rank of the 2x2 system {row0, rowL} on (alpha, beta), decided exactly.
// det = row0.alpha * rowL.beta - row0.beta * rowL.alpha accumulates integer
// coefficients per monomial class; since the end-0 entries are always class
// 1 and the two end-L entries have distinct classes, each class receives at
// most one +-1 contribution, and y > 1 > x > 0 forbids cross-class
// cancellation: the determinant vanishes iff every coefficient is zero.
int symbolic_rank(const SymRow& r0, const SymRow& rL) {
    int coef[3] = {0, 0, 0};
    coef[rL.beta.mono] += r0.alpha.coef * rL.beta.coef;
    coef[rL.alpha.mono] -= r0.beta.coef * rL.alpha.coef;
    if (coef[0] != 0 || coef[1] != 0 || coef[2] != 0) return 2;
    const bool r0_zero = (r0.alpha.coef == 0 && r0.beta.coef == 0);
    const bool rL_zero = (rL.alpha.coef == 0 && rL.beta.coef == 0);
    if (r0_zero && rL_zero) return 0;
    return 1;
}

}  // namespace

ModeKernelDims mode_kernel_dims(double lambda, int multiplicity, double L,
                                BoundaryCondition eps0,
                                BoundaryCondition eps1) {
    if (!(lambda > 0.0))
        throw std::invalid_argument(
            "mode_kernel_dims: lambda must be positive "
            "(use zero_mode_kernel_dims for the zero channel)");
    if (multiplicity < 1)
        throw std::invalid_argument("mode_kernel_dims: multiplicity must be >= 1");
    if (!(L > 0.0))
        throw std::invalid_argument("mode_kernel_dims: L must be positive");

    ModeKernelDims out;
    const int rank_d =
        symbolic_rank(end_row(eps0, false, false), end_row(eps1, true, false));
    const int rank_dstar =
        symbolic_rank(end_row(eps0, false, true), end_row(eps1, true, true));
    out.dim_ker_d = (2 - rank_d) * multiplicity;
    out.dim_ker_dstar = (2 - rank_dstar) * multiplicity;
    return out;
}

ZeroKills zero_kills(BoundaryCondition c, bool at_end_L, bool adjoint) {
    ZeroKills k;
    if (c == BoundaryCondition::APS) {
        // The spectral projection contains the full zero eigenspace, so the
        // direct condition annihilates both constant types; its adjoint
        // consequently constrains neither.
        k.kill_a = k.kill_b = !adjoint;
        return k;
    }
    bool kills_a = (c == BoundaryCondition::Plus);
    if (at_end_L) kills_a = !kills_a;   // reversed end swaps the chirality
    if (adjoint) kills_a = !kills_a;    // adjoint swaps it back once more
    k.kill_a = kills_a;
    k.kill_b = !kills_a;
    return k;
}

ModeKernelDims zero_mode_kernel_dims(int ker_plus, int ker_minus,
                                     BoundaryCondition eps0,
                                     BoundaryCondition eps1) {
    if (ker_plus < 0 || ker_minus < 0)
        throw std::invalid_argument(
            "zero_mode_kernel_dims: negative kernel dimension");
    ModeKernelDims out;
    for (int adjoint = 0; adjoint <= 1; ++adjoint) {
        const ZeroKills k0 = zero_kills(eps0, false, adjoint != 0);
        const ZeroKills kL = zero_kills(eps1, true, adjoint != 0);
        const int a_alive = (!k0.kill_a && !kL.kill_a) ? 1 : 0;
        const int b_alive = (!k0.kill_b && !kL.kill_b) ? 1 : 0;
        const int dim = ker_plus * a_alive + ker_minus * b_alive;
        if (adjoint == 0)
            out.dim_ker_d = dim;
        else
            out.dim_ker_dstar = dim;
    }
    return out;
}

ModeKernelDims cylinder_kernel_dims(const CylinderProblem& prob) {
    prob.check();
    ModeKernelDims total = zero_mode_kernel_dims(
        prob.spectrum.ker_plus, prob.spectrum.ker_minus, prob.eps0, prob.eps1);
    for (const SpectralMode& m : prob.spectrum.positive_modes) {
        const ModeKernelDims d =
            mode_kernel_dims(m.lambda, m.multiplicity, prob.L, prob.eps0,
                             prob.eps1);
        total.dim_ker_d += d.dim_ker_d;
        total.dim_ker_dstar += d.dim_ker_dstar;
    }
    return total;
}

int cylinder_index(const CylinderProblem& prob) {
    return cylinder_kernel_dims(prob).index();
}

CylinderProblem reversed(const CylinderProblem& prob) {
    CylinderProblem r = prob;
    std::swap(r.eps0, r.eps1);
    std::swap(r.spectrum.ker_plus, r.spectrum.ker_minus);
    return r;
}

// ---------------------------------------------------------------------------
// Green identity instrumentation.

namespace {

double horner(const std::array<double, 4>& c, double u) {
    return ((c[3] * u + c[2]) * u + c[1]) * u + c[0];
}

double horner_deriv(const std::array<double, 4>& c, double u) {
    return (3.0 * c[3] * u + 2.0 * c[2]) * u + c[1];
}

struct ValueRow {
    double wa = 0.0, wb = 0.0;
};

// Rows acting on the boundary values (a(e), b(e)) of general smooth fields.
// Local conditions constrain the same component at every channel; the
// spectral condition constrains the combination matching the sign of the
// channel's boundary eigenvalue, and at lambda = 0 it pins both components
// (direct) or none (adjoint).
std::vector<ValueRow> value_rows(BoundaryCondition c, bool at_end_L,
                                 bool adjoint, double lambda) {
    const bool zero_channel = (lambda == 0.0);
    switch (c) {
        case BoundaryCondition::Plus: {
            bool on_a = !at_end_L;
            if (adjoint) on_a = !on_a;
            return {on_a ? ValueRow{1.0, 0.0} : ValueRow{0.0, 1.0}};
        }
        case BoundaryCondition::Minus: {
            bool on_a = at_end_L;
            if (adjoint) on_a = !on_a;
            return {on_a ? ValueRow{1.0, 0.0} : ValueRow{0.0, 1.0}};
        }
        case BoundaryCondition::APS: {
            if (zero_channel) {
                if (adjoint) return {};
                return {ValueRow{1.0, 0.0}, ValueRow{0.0, 1.0}};
            }
            // a + b picks out the +lambda part at the inward end, a - b the
            // -lambda part at the reversed end; both are self-paired under
            // the Green form.
            return {at_end_L ? ValueRow{1.0, -1.0} : ValueRow{1.0, 1.0}};
        }
    }
    std::abort();  // unreachable
}

}  // namespace

double ModeSolution::a(double u) const { return horner(a_coef, u); }
double ModeSolution::b(double u) const { return horner(b_coef, u); }
double ModeSolution::da(double u) const { return horner_deriv(a_coef, u); }
double ModeSolution::db(double u) const { return horner_deriv(b_coef, u); }

double boundary_pairing(const ModeSolution& phi, const ModeSolution& psi,
                        double L) {
    const double at_L = phi.a(L) * psi.a(L) - phi.b(L) * psi.b(L);
    const double at_0 = phi.a(0.0) * psi.a(0.0) - phi.b(0.0) * psi.b(0.0);
    return at_L - at_0;
}

double green_form(const ModeSolution& phi, const ModeSolution& psi, double L) {
    if (phi.lambda != psi.lambda)
        throw std::invalid_argument("green_form: channel mismatch");
    const double lam = phi.lambda;
    auto integrand = [&](double u) {
        const double ap = phi.a(u), bp = phi.b(u);
        const double dap = phi.da(u), dbp = phi.db(u);
        const double aq = psi.a(u), bq = psi.b(u);
        const double daq = psi.da(u), dbq = psi.db(u);
        return (dap + lam * bp) * aq - (lam * ap + dbp) * bq +
               ap * (daq + lam * bq) - bp * (lam * aq + dbq);
    };
    return gl16_integrate(integrand, 0.0, L, 4);
}

double green_identity_residual(const ModeSolution& phi,
                               const ModeSolution& psi, double L) {
    return std::abs(green_form(phi, psi, L) - boundary_pairing(phi, psi, L));
}

ModeSolution random_admissible_solution(SplitMix64& rng, double lambda,
                                        double L, BoundaryCondition eps0,
                                        BoundaryCondition eps1, bool adjoint) {
    if (lambda < 0.0)
        throw std::invalid_argument(
            "random_admissible_solution: lambda must be >= 0");
    if (!(L > 0.0))
        throw std::invalid_argument(
            "random_admissible_solution: L must be positive");
    ModeSolution s;
    s.lambda = lambda;
    for (int k = 0; k < 4; ++k) {
        s.a_coef[k] = rng.uniform(-1.0, 1.0);
        s.b_coef[k] = rng.uniform(-1.0, 1.0);
    }
    // Affine corrections: ell0 = (L - u)/L fixes u = 0 without moving u = L,
    // ell1 = u/L the reverse, so the two ends are handled independently.
    for (const ValueRow& row : value_rows(eps0, false, adjoint, lambda)) {
        const double r = row.wa * s.a(0.0) + row.wb * s.b(0.0);
        if (row.wa != 0.0) {
            s.a_coef[0] -= r / row.wa;
            s.a_coef[1] += r / (row.wa * L);
        } else {
            s.b_coef[0] -= r / row.wb;
            s.b_coef[1] += r / (row.wb * L);
        }
    }
    for (const ValueRow& row : value_rows(eps1, true, adjoint, lambda)) {
        const double r = row.wa * s.a(L) + row.wb * s.b(L);
        if (row.wa != 0.0) {
            s.a_coef[1] -= r / (row.wa * L);
        } else {
            s.b_coef[1] -= r / (row.wb * L);
        }
    }
    return s;
}

}  // namespace diraclab
