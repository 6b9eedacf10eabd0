#ifndef DIRACLAB_SPECTRAL_MODELS_HPP
#define DIRACLAB_SPECTRAL_MODELS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace diraclab {

// One nonzero eigenvalue of the boundary operator together with its
// multiplicity.  Only lambda > 0 is stored; the full operator has spectrum
// {+lambda, -lambda} with equal multiplicities plus a zero eigenvalue of
// multiplicity ker_plus + ker_minus.
struct SpectralMode {
    double lambda = 0.0;
    int multiplicity = 0;
};

// Finite spectral resolution of a boundary operator A with chiral kernel
// dimensions.  Immutable by convention after construction; check() enforces
// the type invariants.
struct ChiralSpectrum {
    std::vector<SpectralMode> positive_modes;  // strictly ascending lambda
    int ker_plus = 0;
    int ker_minus = 0;
    double cutoff = 0.0;  // every stored lambda is <= cutoff

    int index() const { return ker_plus - ker_minus; }
    int ker_total() const { return ker_plus + ker_minus; }
    std::int64_t total_multiplicity() const;

    // Throws std::invalid_argument if an invariant is violated.
    void check() const;
};

enum class BoundaryCondition { Plus, Minus, APS };
enum class Orientation { Inward, Reversed };

// Adjoint of a local condition (Plus <-> Minus).  The adjoint of APS is not
// a plain condition swap (the zero modes change sides); it is realized
// structurally in cylinder_oracle.  Throws std::invalid_argument for APS.
BoundaryCondition adjoint_local(BoundaryCondition c);

const char* to_string(BoundaryCondition c);
const char* to_string(Orientation o);

// A boundary component: spectral data, a condition, and an orientation flag.
// Reversing orientation swaps the chiral kernels (and so negates the index);
// ker_total is orientation-independent.
struct BoundaryComponent {
    ChiralSpectrum spectrum;
    BoundaryCondition condition = BoundaryCondition::Plus;
    Orientation orientation = Orientation::Inward;

    int effective_index() const {
        return orientation == Orientation::Inward ? spectrum.index()
                                                  : -spectrum.index();
    }
    int effective_ker_plus() const {
        return orientation == Orientation::Inward ? spectrum.ker_plus
                                                  : spectrum.ker_minus;
    }
    int effective_ker_minus() const {
        return orientation == Orientation::Inward ? spectrum.ker_minus
                                                  : spectrum.ker_plus;
    }
    int ker_total() const { return spectrum.ker_total(); }
};

// Flat-torus spectrum: lambda = |2 pi ((k1+d1)/L1, (k2+d2)/L2)| over the
// integer lattice, 0 < lambda <= cutoff.  delta components must be 0 or 1/2;
// the periodic structure (delta = (0,0)) carries one harmonic spinor per
// chirality.
ChiralSpectrum make_flat_torus(double L1, double L2, double delta1,
                               double delta2, double cutoff);

// Landau spectrum for flux c != 0 on area `area`: B = 2 pi |c| / area,
// lambda_n = sqrt(2 B n) with multiplicity |c|; ker_plus = c for c > 0
// (mirrored for c < 0), so index() = c always.
ChiralSpectrum make_twisted_torus(int flux, double area, double cutoff);

// Round-sphere spectrum: lambda_n = n / r with multiplicity 2n; both chiral
// kernels empty.
ChiralSpectrum make_round_sphere(double radius, double cutoff);

// JSON document round trip.  Schema:
//   {"modes": [[lambda, multiplicity], ...], "ker_plus": n, "ker_minus": n,
//    "cutoff": x}
// load_spectrum throws ParseError with the offending field path.
ChiralSpectrum load_spectrum(const std::string& text);
ChiralSpectrum load_spectrum_file(const std::string& path);
std::string save_spectrum(const ChiralSpectrum& spec);
void save_spectrum_file(const ChiralSpectrum& spec, const std::string& path);

}  // namespace diraclab

#endif
