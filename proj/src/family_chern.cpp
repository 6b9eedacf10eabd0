#include "diraclab/family_chern.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "diraclab/cylinder_oracle.hpp"

namespace diraclab {

void BaseGrid::check() const {
    if (n < 8)
        throw std::invalid_argument(
            "BaseGrid: need n >= 8 for a trustworthy plaquette sum");
}

void SpectralFamily::check() const {
    grid.check();
    if (dim_plus < 1 || dim_minus < 1)
        throw std::invalid_argument("SpectralFamily: chiral dimensions must be >= 1");
    if (a_plus.size() != static_cast<std::size_t>(grid.vertices()))
        throw std::invalid_argument(
            "SpectralFamily: need one block per grid vertex");
    for (const Eigen::MatrixXcd& blk : a_plus)
        if (blk.rows() != dim_minus || blk.cols() != dim_plus)
            throw std::invalid_argument("SpectralFamily: block shape mismatch");
    if (!(gap > 0.0))
        throw std::invalid_argument("SpectralFamily: gap must be positive");
    if (kernel_dim < 0)
        throw std::invalid_argument("SpectralFamily: negative kernel dimension");
    if (shared_modes) {
        shared_modes->check();
        if (shared_modes->ker_plus != 0 || shared_modes->ker_minus != 0)
            throw std::invalid_argument(
                "SpectralFamily: shared modes must not carry kernel "
                "dimensions (kernels belong to the graded blocks)");
    }
}

Eigen::MatrixXcd kernel_projector(const Eigen::MatrixXcd& h, double gap) {
    if (h.rows() != h.cols())
        throw std::invalid_argument("kernel_projector: matrix must be square");
    if (!(gap > 0.0))
        throw std::invalid_argument("kernel_projector: gap must be positive");
    const double scale = 1.0 + h.cwiseAbs().maxCoeff();
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("kernel_projector: matrix must be Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(h.rows(), h.cols());
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        const double mu = std::abs(es.eigenvalues()[k]);
        if (mu <= 0.01 * gap) {
            proj += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
        } else if (mu < gap) {
            throw std::runtime_error(
                "kernel dimension jump: eigenvalue inside the declared gap");
        }
    }
    return proj;
}

namespace {

Eigen::MatrixXcd frame_from_projector(const Eigen::MatrixXcd& p) {
    const double scale = 1.0 + p.cwiseAbs().maxCoeff();
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale ||
        (p * p - p).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw std::invalid_argument(
            "chern_number: input is not an orthogonal projector");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p);
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < p.rows(); ++k)
        if (es.eigenvalues()[k] > 0.5) ++rank;
    // Eigenvalues come out ascending, so the range eigenvectors sit at the
    // right edge.
    return es.eigenvectors().rightCols(rank);
}

std::complex<double> link_det(const Eigen::MatrixXcd& from,
                              const Eigen::MatrixXcd& to) {
    return Eigen::MatrixXcd(from.adjoint() * to).determinant();
}

}  // namespace

int chern_number_frames(const std::vector<Eigen::MatrixXcd>& frames,
                        const BaseGrid& grid) {
    grid.check();
    if (frames.size() != static_cast<std::size_t>(grid.vertices()))
        throw std::invalid_argument("chern_number: need one frame per vertex");
    const Eigen::Index rank = frames.front().cols();
    for (const Eigen::MatrixXcd& f : frames)
        if (f.cols() != rank || f.rows() != frames.front().rows())
            throw std::runtime_error(
                "kernel dimension jump: frame ranks differ across the grid");
    if (rank == 0) return 0;
    for (const Eigen::MatrixXcd& f : frames)
        if ((f.adjoint() * f - Eigen::MatrixXcd::Identity(rank, rank))
                .cwiseAbs()
                .maxCoeff() > 1e-8)
            throw std::invalid_argument("chern_number: frame not orthonormal");

    const int n = grid.n;
    double total = 0.0, comp = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Eigen::MatrixXcd& f00 = frames[grid.vertex(i, j)];
            const Eigen::MatrixXcd& f10 = frames[grid.vertex(i + 1, j)];
            const Eigen::MatrixXcd& f11 = frames[grid.vertex(i + 1, j + 1)];
            const Eigen::MatrixXcd& f01 = frames[grid.vertex(i, j + 1)];
            const std::complex<double> u1 = link_det(f00, f10);
            const std::complex<double> u2 = link_det(f10, f11);
            const std::complex<double> u3 = link_det(f11, f01);
            const std::complex<double> u4 = link_det(f01, f00);
            const double floor_mag = 0.1;
            if (std::abs(u1) < floor_mag || std::abs(u2) < floor_mag ||
                std::abs(u3) < floor_mag || std::abs(u4) < floor_mag)
                throw std::runtime_error(
                    "grid too coarse: near-singular link overlap");
            const std::complex<double> hol = u1 * u2 * u3 * u4;
            const double phase = std::arg(hol);
            if (std::abs(phase) > std::numbers::pi_v<double> - 0.2)
                throw std::runtime_error(
                    "grid too coarse: plaquette phase near the branch cut");
            const double y = phase - comp;
            const double s = total + y;
            comp = (s - total) - y;
            total = s;
        }
    }
    const double raw = total / (2.0 * std::numbers::pi_v<double>);
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) > 0.01)
        throw std::runtime_error(
            "chern_number: plaquette sum is not close to an integer");
    return static_cast<int>(rounded);
}

int chern_number(const std::vector<Eigen::MatrixXcd>& projectors,
                 const BaseGrid& grid) {
    grid.check();
    if (projectors.size() != static_cast<std::size_t>(grid.vertices()))
        throw std::invalid_argument(
            "chern_number: need one projector per vertex");
    std::vector<Eigen::MatrixXcd> frames(projectors.size());
    std::exception_ptr failure;
    const long long nv = static_cast<long long>(projectors.size());
#pragma omp parallel for schedule(static)
    for (long long v = 0; v < nv; ++v) {
        try {
            frames[v] = frame_from_projector(projectors[v]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return chern_number_frames(frames, grid);
}

std::vector<Eigen::MatrixXcd> two_band_lower_projectors(int n, double m) {
    BaseGrid grid{n};
    grid.check();
    std::vector<Eigen::MatrixXcd> out(grid.vertices());
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double k1 = 2.0 * std::numbers::pi_v<double> * i / n;
            const double k2 = 2.0 * std::numbers::pi_v<double> * j / n;
            const double hx = std::sin(k1);
            const double hy = std::sin(k2);
            const double hz = m + std::cos(k1) + std::cos(k2);
            const double norm = std::sqrt(hx * hx + hy * hy + hz * hz);
            if (!(norm > 1e-12))
                throw std::invalid_argument(
                    "two_band_lower_projectors: model is gapless at a grid "
                    "vertex");
            Eigen::Matrix2cd h;
            const std::complex<double> I(0.0, 1.0);
            h << hz, hx - I * hy, hx + I * hy, -hz;
            out[grid.vertex(i, j)] =
                0.5 * (Eigen::Matrix2cd::Identity() - h / norm);
        }
    }
    return out;
}

SpectralFamily make_two_band_family(int n, double m) {
    SpectralFamily fam;
    fam.grid = BaseGrid{n};
    fam.grid.check();
    fam.dim_plus = 2;
    fam.dim_minus = 1;
    fam.gap = 1.0;
    fam.kernel_dim = 1;
    fam.a_plus.resize(fam.grid.vertices());
    const std::vector<Eigen::MatrixXcd> lower = two_band_lower_projectors(n, m);
    for (int v = 0; v < fam.grid.vertices(); ++v) {
        // Upper-band eigenvector: kernel of the lower projector's complement.
        const Eigen::Matrix2cd p_upper =
            Eigen::Matrix2cd::Identity() - lower[v];
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(p_upper);
        const Eigen::Vector2cd psi = es.eigenvectors().col(1);  // eigenvalue 1
        fam.a_plus[v] = psi.adjoint();  // 1 x 2: ker A_plus = lower band
    }
    fam.check();
    return fam;
}

KernelBundles family_kernel_bundles(const SpectralFamily& fam) {
    fam.check();
    KernelBundles out;
    const long long nv = static_cast<long long>(fam.a_plus.size());
    out.plus_frames.resize(nv);
    out.minus_frames.resize(nv);
    std::vector<int> kp(nv), km(nv);
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (long long v = 0; v < nv; ++v) {
        try {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
                fam.a_plus[v], Eigen::ComputeFullU | Eigen::ComputeFullV);
            int rank = 0;
            for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
                const double s = svd.singularValues()[k];
                if (s >= fam.gap * (1.0 - 1e-9)) {
                    ++rank;
                } else if (s > 0.01 * fam.gap) {
                    throw std::runtime_error(
                        "kernel dimension jump: singular value inside the "
                        "declared gap");
                }
            }
            kp[v] = fam.dim_plus - rank;
            km[v] = fam.dim_minus - rank;
            // Singular values are sorted descending, so null directions sit
            // in the trailing columns.
            out.plus_frames[v] = svd.matrixV().rightCols(kp[v]);
            out.minus_frames[v] = svd.matrixU().rightCols(km[v]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (long long v = 1; v < nv; ++v)
        if (kp[v] != kp[0] || km[v] != km[0])
            throw std::runtime_error(
                "kernel dimension jump: kernel dimensions vary across the grid");
    out.dim_plus_kernel = kp[0];
    out.dim_minus_kernel = km[0];
    if (out.dim_plus_kernel + out.dim_minus_kernel != fam.kernel_dim)
        throw std::invalid_argument(
            "family_kernel_bundles: declared kernel dimension does not match "
            "the family");
    return out;
}

namespace {

struct BundleData {
    int kp = 0, km = 0;    // effective kernel dimensions
    int c1p = 0, c1m = 0;  // effective kernel-bundle Chern numbers
};

BundleData effective_bundles(const FamilyComponent& comp) {
    const KernelBundles kb = family_kernel_bundles(comp.family);
    BundleData d;
    d.kp = kb.dim_plus_kernel;
    d.km = kb.dim_minus_kernel;
    d.c1p = d.kp > 0 ? chern_number_frames(kb.plus_frames, comp.family.grid) : 0;
    d.c1m = d.km > 0 ? chern_number_frames(kb.minus_frames, comp.family.grid) : 0;
    if (comp.orientation == Orientation::Reversed) {
        std::swap(d.kp, d.km);
        std::swap(d.c1p, d.c1m);
    }
    return d;
}

int halve(long long twice, const char* what) {
    if (twice % 2 != 0)
        throw std::runtime_error(std::string("inconsistent family data: "
                                             "half-integer ") + what);
    return static_cast<int>(twice / 2);
}

}  // namespace

FamilyIndexData family_predicted_chern(
    const std::vector<FamilyComponent>& components) {
    if (components.empty())
        throw std::invalid_argument("family_predicted_chern: no components");
    const int n = components.front().family.grid.n;
    long long twice0 = 0, twice2 = 0;
    for (const FamilyComponent& comp : components) {
        if (comp.family.grid.n != n)
            throw std::invalid_argument(
                "family_predicted_chern: components must share the base grid");
        const BundleData d = effective_bundles(comp);
        switch (comp.condition) {
            case BoundaryCondition::Plus:
                twice0 -= d.kp - d.km;
                twice2 -= d.c1p - d.c1m;
                break;
            case BoundaryCondition::Minus:
                twice0 += d.kp - d.km;
                twice2 += d.c1p - d.c1m;
                break;
            case BoundaryCondition::APS:
                twice0 -= d.kp + d.km;
                twice2 -= d.c1p + d.c1m;
                break;
        }
    }
    FamilyIndexData out;
    out.degree0 = halve(twice0, "degree-0 prediction");
    out.degree2 = halve(twice2, "degree-2 prediction");
    return out;
}

FamilyIndexData family_cylinder_index_bundle(const SpectralFamily& fam,
                                             double L, BoundaryCondition eps0,
                                             BoundaryCondition eps1) {
    if (!(L > 0.0))
        throw std::invalid_argument(
            "family_cylinder_index_bundle: L must be positive");
    const KernelBundles kb = family_kernel_bundles(fam);

    // Nonzero shared channels never contribute kernel directions; run them
    // through the mode oracle anyway so the claim is computed, not assumed.
    int mode_d = 0, mode_dstar = 0;
    if (fam.shared_modes) {
        for (const SpectralMode& m : fam.shared_modes->positive_modes) {
            const ModeKernelDims dims =
                mode_kernel_dims(m.lambda, m.multiplicity, L, eps0, eps1);
            mode_d += dims.dim_ker_d;
            mode_dstar += dims.dim_ker_dstar;
        }
    }

    const int ambient = fam.dim_plus + fam.dim_minus;
    FamilyIndexData out;
    const ZeroKills direct0 = zero_kills(eps0, false, false);
    const ZeroKills directL = zero_kills(eps1, true, false);
    const ZeroKills adj0 = zero_kills(eps0, false, true);
    const ZeroKills adjL = zero_kills(eps1, true, true);

    auto assemble = [&](bool a_alive, bool b_alive) {
        const int cols = (a_alive ? kb.dim_plus_kernel : 0) +
                         (b_alive ? kb.dim_minus_kernel : 0);
        std::vector<Eigen::MatrixXcd> frames(fam.a_plus.size());
        for (std::size_t v = 0; v < fam.a_plus.size(); ++v) {
            Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(ambient, cols);
            int at = 0;
            if (a_alive) {
                f.block(0, at, fam.dim_plus, kb.dim_plus_kernel) =
                    kb.plus_frames[v];
                at += kb.dim_plus_kernel;
            }
            if (b_alive) {
                f.block(fam.dim_plus, at, fam.dim_minus, kb.dim_minus_kernel) =
                    kb.minus_frames[v];
            }
            frames[v] = f;
        }
        return frames;
    };

    const bool d_a = !direct0.kill_a && !directL.kill_a;
    const bool d_b = !direct0.kill_b && !directL.kill_b;
    const bool s_a = !adj0.kill_a && !adjL.kill_a;
    const bool s_b = !adj0.kill_b && !adjL.kill_b;

    const int dim_d = mode_d + (d_a ? kb.dim_plus_kernel : 0) +
                      (d_b ? kb.dim_minus_kernel : 0);
    const int dim_dstar = mode_dstar + (s_a ? kb.dim_plus_kernel : 0) +
                          (s_b ? kb.dim_minus_kernel : 0);
    out.degree0 = dim_d - dim_dstar;

    const std::vector<Eigen::MatrixXcd> ker_d = assemble(d_a, d_b);
    const std::vector<Eigen::MatrixXcd> ker_dstar = assemble(s_a, s_b);
    const int c1_d = ker_d.front().cols() > 0
                         ? chern_number_frames(ker_d, fam.grid)
                         : 0;
    const int c1_dstar = ker_dstar.front().cols() > 0
                             ? chern_number_frames(ker_dstar, fam.grid)
                             : 0;
    out.degree2 = c1_d - c1_dstar;
    return out;
}

}  // namespace diraclab
