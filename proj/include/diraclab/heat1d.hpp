#ifndef DIRACLAB_HEAT1D_HPP
#define DIRACLAB_HEAT1D_HPP

#include <cstddef>
#include <vector>

namespace diraclab {

// Boundary condition at u = 0 for one-dimensional problems.
// Robin(mu) means (d/du + mu) phi |_{u=0} = 0; Robin(0) coincides with
// Neumann.
struct HalfLineCondition {
    enum class Kind { Dirichlet, Neumann, Robin };
    Kind kind = Kind::Dirichlet;
    double mu = 0.0;  // Robin parameter, used only when kind == Robin

    static HalfLineCondition dirichlet() { return {Kind::Dirichlet, 0.0}; }
    static HalfLineCondition neumann() { return {Kind::Neumann, 0.0}; }
    static HalfLineCondition robin(double mu) { return {Kind::Robin, mu}; }
};

// Diagonal heat densities of -d^2/du^2 on the half line:
//   Dirichlet: (4 pi t)^{-1/2} (1 - exp(-u^2/t))
//   Neumann:   (4 pi t)^{-1/2} (1 + exp(-u^2/t))
// (the image point of u sits at distance 2u, hence exp(-u^2/t) on the
// diagonal).  t > 0, u >= 0.
double dirichlet_density(double t, double u);
double neumann_density(double t, double u);

// Diagonal heat densities of -d^2/du^2 + lambda^2 on the half line for the
// two Robin-type conditions attached to a negative channel eigenvalue
// lambda < 0:
//   k1 under (d/du + lambda) phi(0) = 0   (no zero-energy state)
//   k2 under (d/du - lambda) phi(0) = 0   (one zero-energy bound state,
//                                          density -2 lambda e^{2 lambda u})
// Stable closed forms (erfcx-scaled); validated against halfline_oracle.
struct RobinPair {
    double k1;
    double k2;
};
RobinPair robin_density_pair(double t, double u, double lambda);

// Value of an eigenfunction-expansion computation together with an upper
// bound on the dropped tail.
struct OracleValue {
    double value;
    double tail_bound;
};

// Brute-force ground truth: heat kernel of -d^2/du^2 on [0, R] with `bc` at
// u = 0 and Dirichlet at u = R, summed over the first M eigenvalues.
// Preconditions: R >= max(u, v) + 10 sqrt(t); M >= 1.
OracleValue halfline_oracle(double t, double u, double v,
                            const HalfLineCondition& bc, double R, int M);

// The interval eigensystem behind halfline_oracle, exposed so grid sweeps
// can reuse the transcendental root-finding work.
//
// Eigenfunctions (h = -mu for Robin(mu)):
//   Dirichlet: sin(w u),                       w = k pi / R, k >= 1
//   Neumann:   cos(w u),                       w = (k + 1/2) pi / R, k >= 0
//   Robin:     w cos(w u) + h sin(w u),        w cos(wR) + h sin(wR) = 0
// plus one bound state for h < 0 with |h| R > 1:
//   phi0(u) = (kappa + |h|)/2 * e^{-kappa u} (1 - e^{-2 kappa (R - u)}),
//   eigenvalue -kappa^2, tanh(kappa R) = kappa / |h|.
struct HalfLineEigensystem {
    HalfLineCondition bc;
    double R = 0.0;
    std::vector<double> omega;  // oscillatory frequencies, ascending
    std::vector<double> norm2;  // squared L2 norms of the eigenfunctions
    bool has_bound_state = false;
    double kappa = 0.0;
    double bound_norm2 = 0.0;

    double eigenfunction(std::size_t k, double u) const;
    double bound_eigenfunction(double u) const;
};

HalfLineEigensystem halfline_eigensystem(const HalfLineCondition& bc, double R,
                                         int M);
OracleValue oracle_eval(const HalfLineEigensystem& sys, double t, double u,
                        double v);

// Eigenvalues of -d^2/du^2 on [0, L] with Dirichlet/Neumann ends, ascending:
//   D-D: (k pi / L)^2, k >= 1        N-N: (k pi / L)^2, k >= 0
//   D-N, N-D: ((k + 1/2) pi / L)^2, k >= 0
enum class IntervalBC { Dirichlet, Neumann };
std::vector<double> interval_mode_eigenvalues(double L, IntervalBC bc0,
                                              IntervalBC bc1, int count);

}  // namespace diraclab

#endif
