#include "diraclab/validate.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "diraclab/cylinder_oracle.hpp"
#include "diraclab/family_chern.hpp"
#include "diraclab/heat1d.hpp"
#include "diraclab/index_engine.hpp"
#include "diraclab/isospectral.hpp"
#include "diraclab/parallel.hpp"
#include "diraclab/rng.hpp"
#include "diraclab/special.hpp"
#include "diraclab/spectral_models.hpp"

namespace diraclab {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

class Battery {
  public:
    explicit Battery(std::ostream& out) : out_(out) {}

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        ++total_;
        if (!ok) ++failed_;
        out_ << (ok ? "[ok]   " : "[FAIL] ") << name;
        if (!detail.empty()) out_ << "  (" << detail << ")";
        out_ << "\n";
    }

    void close(const std::string& name, double got, double want, double tol) {
        check(name, std::abs(got - want) <= tol,
              "got " + fmt(got) + ", want " + fmt(want) + " within " + fmt(tol));
    }

    void equal_int(const std::string& name, long long got, long long want) {
        check(name, got == want,
              "got " + std::to_string(got) + ", want " + std::to_string(want));
    }

    int failed() const { return failed_; }
    int total() const { return total_; }

  private:
    std::ostream& out_;
    int total_ = 0;
    int failed_ = 0;
};

BoundaryCondition kConditions[3] = {BoundaryCondition::Plus,
                                    BoundaryCondition::Minus,
                                    BoundaryCondition::APS};

Eigen::Matrix2cd random_unitary2(SplitMix64& rng) {
    const double th = rng.uniform(0.0, std::numbers::pi_v<double> / 2);
    const double al = rng.uniform(0.0, 2 * std::numbers::pi_v<double>);
    const double be = rng.uniform(0.0, 2 * std::numbers::pi_v<double>);
    const double ga = rng.uniform(0.0, 2 * std::numbers::pi_v<double>);
    const std::complex<double> I(0.0, 1.0);
    Eigen::Matrix2cd u;
    u << std::cos(th) * std::exp(I * al), std::sin(th) * std::exp(I * be),
        -std::sin(th) * std::exp(-I * be), std::cos(th) * std::exp(-I * al);
    return std::exp(I * ga) * u;
}

void special_checks(Battery& b) {
    b.close("special: erfc(1) reference value", erfc(1.0),
            0.15729920705028513, 1e-15);
    b.close("special: erfc(-1.25) + erfc(1.25) = 2",
            erfc(-1.25) + erfc(1.25), 2.0, 1e-14);
    b.close("special: erfc matches its quadrature on [0,3]",
            erfc(3.0) - erfc(0.0) +
                (2.0 / std::sqrt(std::numbers::pi_v<double>)) *
                    adaptive_integrate([](double x) { return std::exp(-x * x); },
                                       0.0, 3.0, 1e-12),
            0.0, 1e-10);
    b.close("special: erfcx(4) * exp(-16) = erfc(4)",
            erfcx(4.0) * std::exp(-16.0), erfc(4.0), 1e-18);
    b.close("special: GL16 integrates x^7 on [0,2]",
            gl16_integrate([](double x) { return x * x * x * x * x * x * x; },
                           0.0, 2.0, 2),
            32.0, 1e-11);
}

void heat1d_checks(Battery& b) {
    const double t = 0.04, u = 0.1;
    b.close("heat1d: dirichlet + neumann = 2 x free density",
            dirichlet_density(t, u) + neumann_density(t, u),
            2.0 / std::sqrt(4.0 * std::numbers::pi_v<double> * t), 1e-15);

    const double lam = -0.5, tr = 0.02;
    const RobinPair p0 = robin_density_pair(tr, 0.0, lam);
    b.close("heat1d: paired densities split by exactly 2 lambda at u = 0",
            p0.k1 - p0.k2, 2.0 * lam, 1e-12);

    const double integral = adaptive_integrate(
        [&](double uu) {
            const RobinPair p = robin_density_pair(tr, uu, lam);
            return p.k1 - p.k2;
        },
        0.0, 12.0 * std::sqrt(tr), 1e-11);
    b.close("heat1d: integrated pair difference equals erf(lambda sqrt t)",
            integral, erf(lam * std::sqrt(tr)), 1e-9);

    const RobinPair pn = robin_density_pair(tr, 0.3, -1e-14);
    b.close("heat1d: robin pair degenerates to neumann as lambda -> 0-",
            pn.k1, neumann_density(tr, 0.3), 1e-10);

    const std::vector<double> dn = interval_mode_eigenvalues(
        2.0, IntervalBC::Dirichlet, IntervalBC::Neumann, 1);
    b.close("heat1d: first D-N interval eigenvalue on [0,2]", dn[0],
            std::pow(std::numbers::pi_v<double> / 4.0, 2), 1e-15);

    // Half-line eigensystem oracle against the closed forms.
    const double tt = 0.02, R = 6.0;
    const int M = 900;
    {
        const HalfLineEigensystem sys =
            halfline_eigensystem(HalfLineCondition::dirichlet(), R, M);
        const OracleValue got = oracle_eval(sys, tt, 0.25, 0.25);
        b.close("heat1d: dirichlet density vs half-line eigensystem",
                got.value, dirichlet_density(tt, 0.25), 1e-7);
    }
    {
        const HalfLineEigensystem sys =
            halfline_eigensystem(HalfLineCondition::neumann(), R, M);
        const OracleValue got = oracle_eval(sys, tt, 0.4, 0.4);
        b.close("heat1d: neumann density vs half-line eigensystem", got.value,
                neumann_density(tt, 0.4), 1e-7);
    }
    {
        // Both Robin channels of one negative eigenvalue: robin(lambda) is
        // the k1 condition (repulsive boundary), robin(-lambda) the k2 one
        // (attractive, carries the near-zero bound state).  The box bound
        // state converges to the half-line one only like e^{-2|h|R}, so the
        // box is larger than in the image-charge-limited D/N cases.
        const double lam2 = -0.8, Rb = 14.0;
        const RobinPair pr = robin_density_pair(tt, 0.35, lam2);
        const double unshift = std::exp(lam2 * lam2 * tt);
        const HalfLineEigensystem sys1 = halfline_eigensystem(
            HalfLineCondition::robin(lam2), Rb, M);
        const OracleValue got1 = oracle_eval(sys1, tt, 0.35, 0.35);
        b.close("heat1d: robin k1 density vs half-line eigensystem",
                got1.value, pr.k1 * unshift, 1e-7);
        const HalfLineEigensystem sys2 = halfline_eigensystem(
            HalfLineCondition::robin(-lam2), Rb, M);
        const OracleValue got2 = oracle_eval(sys2, tt, 0.35, 0.35);
        b.close("heat1d: robin k2 density vs half-line eigensystem",
                got2.value, pr.k2 * unshift, 1e-7);
    }
}

void spectral_checks(Battery& b) {
    const ChiralSpectrum flat =
        make_flat_torus(2 * std::numbers::pi_v<double>,
                        2 * std::numbers::pi_v<double>, 0.0, 0.0, 12.0);
    b.equal_int("models: periodic flat torus carries one kernel per chirality",
                flat.ker_plus + flat.ker_minus, 2);
    b.close("models: flat torus lowest mode is |(1,0)| = 1",
            flat.positive_modes.front().lambda, 1.0, 1e-12);
    b.equal_int("models: flat torus lowest multiplicity is 4",
                flat.positive_modes.front().multiplicity, 4);

    const ChiralSpectrum anti =
        make_flat_torus(2 * std::numbers::pi_v<double>,
                        2 * std::numbers::pi_v<double>, 0.5, 0.5, 12.0);
    b.equal_int("models: antiperiodic flat torus has no kernel",
                anti.ker_total(), 0);

    const ChiralSpectrum tw = make_twisted_torus(3, std::numbers::pi_v<double>,
                                                 20.0);
    b.equal_int("models: twisted spectrum index equals the flux", tw.index(), 3);
    b.equal_int("models: twisted multiplicities equal |flux|",
                tw.positive_modes.front().multiplicity, 3);
    b.close("models: twisted lowest level is sqrt(2B)",
            tw.positive_modes.front().lambda,
            std::sqrt(2.0 * 2.0 * std::numbers::pi_v<double> * 3.0 /
                      std::numbers::pi_v<double>),
            1e-12);

    const std::string text = save_spectrum(tw);
    const ChiralSpectrum back = load_spectrum(text);
    b.check("models: JSON round trip is byte-identical",
            save_spectrum(back) == text);

    const ChiralSpectrum sph = make_round_sphere(1.0, 60.0);
    for (double t : {0.01, 0.005}) {
        const HeatTraces tr = heat_traces(sph, t, 1e-3);
        b.close("models: sphere trace obeys the Weyl law at t = " + fmt(t),
                2.0 * t * (tr.tr_plus - sph.ker_plus), 2.0, 0.5 * t);
    }
}

void index_checks(Battery& b) {
    const ChiralSpectrum tw = make_twisted_torus(3, std::numbers::pi_v<double>,
                                                 40.0);
    // Heat-trace difference is the integer index at every admissible t.
    for (double t : {0.2, 0.35, 0.5, 0.75, 1.0}) {
        const HeatTraces tr = heat_traces(tw, t, 1e-3);
        b.close("index: trace difference equals the index at t = " + fmt(t),
                tr.difference(), 3.0, 0.0);
    }

    BoundaryComponent comp{tw, BoundaryCondition::Plus, Orientation::Inward};
    const double t = 0.01;
    b.close("index: local density closed form at u = 0",
            local_density(comp, t, 0.0),
            -3.0 / std::sqrt(std::numbers::pi_v<double> * t), 1e-12);
    b.close("index: local density integral saturates at -ind/2",
            local_density_integral(comp, t,
                                   std::numeric_limits<double>::infinity()),
            -1.5, 0.0);
    b.close("index: aps integral matches its closed form",
            aps_density_integral(tw, 0.05, 2.0, 1e-3),
            -0.5 * tw.ker_total() * erf(2.0 / std::sqrt(0.05)), 1e-8);

    BoundaryComponent rev = comp;
    rev.orientation = Orientation::Reversed;
    b.close("index: reversing orientation negates the local density",
            local_density(rev, t, 0.3) + local_density(comp, t, 0.3), 0.0, 0.0);
}

void cylinder_checks(Battery& b) {
    const ChiralSpectrum tw = make_twisted_torus(3, std::numbers::pi_v<double>,
                                                 20.0);
    const int expected[3][3] = {{0, -3, -3}, {3, 0, 0}, {0, -3, -3}};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CylinderProblem prob{tw, 1.0, kConditions[i], kConditions[j]};
            const int oracle = cylinder_index(prob);
            b.equal_int(std::string("cylinder: oracle index for (") +
                            to_string(kConditions[i]) + ", " +
                            to_string(kConditions[j]) + ")",
                        oracle, expected[i][j]);
            std::vector<BoundaryComponent> comps{
                {tw, kConditions[i], Orientation::Inward},
                {tw, kConditions[j], Orientation::Reversed}};
            b.equal_int(std::string("cylinder: prediction matches for (") +
                            to_string(kConditions[i]) + ", " +
                            to_string(kConditions[j]) + ")",
                        predicted_index(comps), oracle);
            b.equal_int(std::string("cylinder: index survives reversal for (") +
                            to_string(kConditions[i]) + ", " +
                            to_string(kConditions[j]) + ")",
                        cylinder_index(reversed(prob)), oracle);
        }
    }

    // Positive channels never contribute kernel directions.
    for (double lam : {0.4, 1.0, 3.7}) {
        int live = 0;
        for (BoundaryCondition e0 : kConditions)
            for (BoundaryCondition e1 : kConditions) {
                const ModeKernelDims d = mode_kernel_dims(lam, 2, 0.8, e0, e1);
                live += d.dim_ker_d + d.dim_ker_dstar;
            }
        b.equal_int("cylinder: positive channels are invertible at lambda = " +
                        fmt(lam),
                    live, 0);
    }

    // Green identity: admissible pairs pair to zero, generic pairs satisfy
    // the integration-by-parts identity.
    SplitMix64 rng(20240817u);
    double worst_adm = 0.0, worst_gen = 0.0;
    for (BoundaryCondition e0 : kConditions)
        for (BoundaryCondition e1 : kConditions)
            for (double lam : {0.0, 1.0, 2.3})
                for (int rep = 0; rep < 20; ++rep) {
                    const ModeSolution phi = random_admissible_solution(
                        rng, lam, 1.0, e0, e1, false);
                    const ModeSolution psi = random_admissible_solution(
                        rng, lam, 1.0, e0, e1, true);
                    worst_adm = std::max(worst_adm,
                                         std::abs(green_form(phi, psi, 1.0)));
                    ModeSolution raw;
                    raw.lambda = lam;
                    for (int k = 0; k < 4; ++k) {
                        raw.a_coef[k] = rng.uniform(-1.0, 1.0);
                        raw.b_coef[k] = rng.uniform(-1.0, 1.0);
                    }
                    worst_gen = std::max(
                        worst_gen, green_identity_residual(phi, raw, 1.0));
                }
    b.check("cylinder: green form vanishes on adjoint pairs",
            worst_adm <= 1e-10, "worst " + fmt(worst_adm));
    b.check("cylinder: green identity holds for generic pairs",
            worst_gen <= 1e-10, "worst " + fmt(worst_gen));
}

void isospectral_checks(Battery& b) {
    const ChiralSpectrum tw = make_twisted_torus(3, std::numbers::pi_v<double>,
                                                 70.0);
    // Both-end mirror swap: spectra coincide exactly.
    SwapCylinder mirror{tw, 1.0, BoundaryCondition::Plus,
                        BoundaryCondition::Minus, BoundaryCondition::Minus,
                        BoundaryCondition::Plus};
    const SwapVerdict vm = necessary_condition(mirror.swap_components());
    b.equal_int("isospectral: mirror swap obstruction s1", vm.s1, -3);
    b.equal_int("isospectral: mirror swap obstruction s2", vm.s2, 3);
    // (s1 - s2)/2 = -3: the mirror swap shifts the trace by a constant.
    const TraceDifference md = trace_difference(mirror, 0.01, 1e-6);
    b.close("isospectral: mirror swap trace constant equals (s1 - s2)/2",
            md.value, 0.5 * (vm.s1 - vm.s2), 1e-6);

    // Chirality-preserving double swap: traces agree identically.
    SwapCylinder both{tw, 1.0, BoundaryCondition::Plus,
                      BoundaryCondition::Minus, BoundaryCondition::Plus,
                      BoundaryCondition::Minus};
    const SwapVerdict vb = necessary_condition(both.swap_components());
    b.equal_int("isospectral: double swap passes the necessary condition",
                vb.ruled_out ? 1 : 0, 0);
    const TraceDifference bd = trace_difference(both, 0.01, 1e-6);
    b.close("isospectral: double swap trace difference vanishes", bd.value,
            0.0, 1e-12);

    // Antisymmetry under exchanging the two condition sets.
    SwapCylinder single{tw, 1.0, BoundaryCondition::Plus,
                        BoundaryCondition::Minus, BoundaryCondition::Plus,
                        BoundaryCondition::Plus};
    SwapCylinder flipped{tw, 1.0, BoundaryCondition::Minus,
                         BoundaryCondition::Plus, BoundaryCondition::Plus,
                         BoundaryCondition::Plus};
    const double v1 = trace_difference(single, 0.02, 1e-6).value;
    const double v2 = trace_difference(flipped, 0.02, 1e-6).value;
    b.close("isospectral: trace difference is antisymmetric", v1 + v2, 0.0,
            0.0);

    // Sweep extraction agrees with the obstruction combination.
    const std::vector<double> grid{0.01, 0.02, 0.05};
    const TraceSweep sw = trace_difference_sweep(single, grid, 1e-6);
    const ExtractedConstant ec = extract_constant(sw, 1e-6);
    const SwapVerdict vs = necessary_condition(single.swap_components());
    b.check("isospectral: sweep constant converges", ec.converged,
            "residual " + fmt(ec.residual_bound));
    b.close("isospectral: sweep constant equals (s1 - s2)/2", ec.constant,
            0.5 * (vs.s1 - vs.s2), 1e-6);
}

void family_checks(Battery& b) {
    // Reference projector: rotated rank-2 kernel inside a 3x3 Hermitian.
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
    h(2, 2) = 5.0;
    const Eigen::MatrixXcd p = kernel_projector(h, 1.0);
    b.close("family: kernel projector rank", p.trace().real(), 2.0, 1e-12);
    b.close("family: kernel projector idempotency defect",
            (p * p - p).cwiseAbs().maxCoeff(), 0.0, 1e-12);

    const BaseGrid grid{16};
    b.equal_int("family: base grid Euler characteristic",
                grid.euler_characteristic(), 0);

    b.equal_int("family: two-band model m = 1 lower band",
                chern_number(two_band_lower_projectors(16, 1.0), grid), 1);
    b.equal_int("family: two-band model m = -1 lower band",
                chern_number(two_band_lower_projectors(16, -1.0), grid), -1);
    b.equal_int("family: two-band model m = 3 is trivial",
                chern_number(two_band_lower_projectors(16, 3.0), grid), 0);

    // Gauge invariance and direct-sum additivity.
    const std::vector<Eigen::MatrixXcd> pa = two_band_lower_projectors(16, 1.0);
    const std::vector<Eigen::MatrixXcd> pb = two_band_lower_projectors(16, -1.0);
    std::vector<Eigen::MatrixXcd> frames(pa.size()), gauged(pa.size()),
        direct(pa.size());
    SplitMix64 rng(77u);
    for (std::size_t v = 0; v < pa.size(); ++v) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ea(pa[v]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eb(pb[v]);
        Eigen::MatrixXcd fa = ea.eigenvectors().rightCols(1);
        Eigen::MatrixXcd fb = eb.eigenvectors().rightCols(1);
        frames[v] = fa;
        Eigen::MatrixXcd f2(4, 2);
        f2.setZero();
        f2.block(0, 0, 2, 1) = fa;
        f2.block(2, 1, 2, 1) = fb;
        direct[v] = f2 * random_unitary2(rng);
        const std::complex<double> I(0.0, 1.0);
        gauged[v] = fa * std::exp(I * rng.uniform(0.0, 6.28));
    }
    b.equal_int("family: chern number is gauge invariant",
                chern_number_frames(gauged, grid), 1);
    b.equal_int("family: chern number adds over direct sums",
                chern_number_frames(direct, grid), 0);

    // Family index theorem data on the two-band model.
    const SpectralFamily fam = make_two_band_family(16, 1.0);
    const KernelBundles kb = family_kernel_bundles(fam);
    b.equal_int("family: two-band kernel sits in the plus chirality",
                kb.dim_plus_kernel * 10 + kb.dim_minus_kernel, 10);
    b.equal_int("family: two-band kernel bundle chern number",
                chern_number_frames(kb.plus_frames, fam.grid), 1);

    struct Case {
        BoundaryCondition e0, e1;
        int want0, want2;
    };
    const Case cases[] = {
        {BoundaryCondition::APS, BoundaryCondition::APS, -1, -1},
        {BoundaryCondition::Plus, BoundaryCondition::Minus, -1, -1},
        {BoundaryCondition::Minus, BoundaryCondition::Plus, 1, 1},
        {BoundaryCondition::Plus, BoundaryCondition::Plus, 0, 0},
    };
    for (const Case& c : cases) {
        const std::vector<FamilyComponent> comps{
            {fam, c.e0, Orientation::Inward},
            {fam, c.e1, Orientation::Reversed}};
        const FamilyIndexData pred = family_predicted_chern(comps);
        const FamilyIndexData oracle =
            family_cylinder_index_bundle(fam, 1.0, c.e0, c.e1);
        const std::string tag = std::string("(") + to_string(c.e0) + ", " +
                                to_string(c.e1) + ")";
        b.equal_int("family: degree-0 prediction for " + tag, pred.degree0,
                    c.want0);
        b.equal_int("family: degree-0 oracle for " + tag, oracle.degree0,
                    c.want0);
        b.equal_int("family: degree-2 prediction for " + tag, pred.degree2,
                    c.want2);
        b.equal_int("family: degree-2 oracle for " + tag, oracle.degree2,
                    c.want2);
    }
}

void parallel_checks(Battery& b) {
    std::vector<double> data(100000);
    SplitMix64 rng(1234u);
    for (double& x : data) x = rng.uniform(-1.0, 1.0);
    const auto term = [&](std::size_t i) { return data[i]; };
    const double serial = par::reduce_sum_serial(data.size(), term);
    const double parallel = par::reduce_sum(data.size(), term);
    b.check("parallel: chunked reduction is thread-count independent",
            serial == parallel,
            "serial " + fmt(serial) + ", parallel " + fmt(parallel));

    SplitMix64 pin(42u);
    const std::uint64_t r1 = pin.next();
    const std::uint64_t r2 = pin.next();
    b.check("parallel: rng sequence is portable",
            r1 == 13679457532755275413ull && r2 == 2949826092126892291ull,
            std::to_string(r1) + ", " + std::to_string(r2));
}

}  // namespace

int run_validation(std::ostream& out) {
    Battery b(out);
    special_checks(b);
    heat1d_checks(b);
    spectral_checks(b);
    index_checks(b);
    cylinder_checks(b);
    isospectral_checks(b);
    family_checks(b);
    parallel_checks(b);
    out << "validation: " << (b.total() - b.failed()) << "/" << b.total()
        << " checks passed\n";
    return b.failed();
}

}  // namespace diraclab
