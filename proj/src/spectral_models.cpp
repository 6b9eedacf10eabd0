#include "diraclab/spectral_models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "diraclab/errors.hpp"
#include "json.hpp"

namespace diraclab {

std::int64_t ChiralSpectrum::total_multiplicity() const {
    std::int64_t n = 0;
    for (const SpectralMode& m : positive_modes) n += m.multiplicity;
    return n;
}

void ChiralSpectrum::check() const {
    if (!(cutoff > 0.0)) throw std::invalid_argument("spectrum: cutoff must be positive");
    if (ker_plus < 0 || ker_minus < 0)
        throw std::invalid_argument("spectrum: negative kernel dimension");
    double prev = 0.0;
    for (const SpectralMode& m : positive_modes) {
        if (!(m.lambda > 0.0))
            throw std::invalid_argument("spectrum: eigenvalue must be positive");
        if (!(m.lambda > prev))
            throw std::invalid_argument("spectrum: unsorted eigenvalues");
        if (m.multiplicity < 1)
            throw std::invalid_argument("spectrum: multiplicity must be a positive integer");
        if (m.lambda > cutoff)
            throw std::invalid_argument("spectrum: eigenvalue exceeds cutoff");
        prev = m.lambda;
    }
}

BoundaryCondition adjoint_local(BoundaryCondition c) {
    switch (c) {
        case BoundaryCondition::Plus: return BoundaryCondition::Minus;
        case BoundaryCondition::Minus: return BoundaryCondition::Plus;
        default: break;
    }
    throw std::invalid_argument(
        "adjoint_local: the adjoint of the spectral condition is not a plain "
        "condition swap; it is handled structurally by the cylinder oracle");
}

const char* to_string(BoundaryCondition c) {
    switch (c) {
        case BoundaryCondition::Plus: return "plus";
        case BoundaryCondition::Minus: return "minus";
        case BoundaryCondition::APS: return "aps";
    }
    return "?";
}

const char* to_string(Orientation o) {
    return o == Orientation::Inward ? "inward" : "reversed";
}

namespace {

// Best rational approximation p/q to x with q <= qmax (continued fractions).
// Returns false if the approximation error exceeds `rel` relative accuracy.
bool rational_approx(double x, std::int64_t qmax, double rel, std::int64_t* p,
                     std::int64_t* q) {
    double v = x;
    std::int64_t p0 = 1, q0 = 0, p1 = static_cast<std::int64_t>(std::floor(v)),
                 q1 = 1;
    for (int it = 0; it < 64; ++it) {
        if (std::abs(x * static_cast<double>(q1) - static_cast<double>(p1)) <=
            rel * std::abs(x) * static_cast<double>(q1)) {
            *p = p1;
            *q = q1;
            return true;
        }
        double frac = v - std::floor(v);
        if (frac < 1e-15) break;
        v = 1.0 / frac;
        std::int64_t a = static_cast<std::int64_t>(std::floor(v));
        std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > qmax) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    if (q1 >= 1 && std::abs(x * static_cast<double>(q1) - static_cast<double>(p1)) <=
                       rel * std::abs(x) * static_cast<double>(q1)) {
        *p = p1;
        *q = q1;
        return true;
    }
    return false;
}

ChiralSpectrum finish_spectrum(std::vector<SpectralMode> modes, int kp, int km,
                               double cutoff) {
    ChiralSpectrum s;
    s.positive_modes = std::move(modes);
    s.ker_plus = kp;
    s.ker_minus = km;
    s.cutoff = cutoff;
    s.check();
    return s;
}

}  // namespace

ChiralSpectrum make_flat_torus(double L1, double L2, double delta1,
                               double delta2, double cutoff) {
    if (!(L1 > 0.0) || !(L2 > 0.0))
        throw std::invalid_argument("make_flat_torus: lengths must be positive");
    if (!(cutoff > 0.0))
        throw std::invalid_argument("make_flat_torus: cutoff must be positive");
    auto valid_delta = [](double d) { return d == 0.0 || d == 0.5; };
    if (!valid_delta(delta1) || !valid_delta(delta2))
        throw std::invalid_argument(
            "make_flat_torus: delta components must be 0 or 0.5");

    const double two_pi = 2.0 * std::numbers::pi_v<double>;
    // lambda^2 = pi^2 (a^2 / L1^2 + b^2 / L2^2) with a = 2(k1+delta1),
    // b = 2(k2+delta2) both integers.  Group multiplicities exactly through an
    // integer key when (L1/L2)^2 is (close to) rational; otherwise fall back
    // to grouping lambda^2 with a tight relative tolerance.
    const double ratio2 = (L1 / L2) * (L1 / L2);
    std::int64_t rp = 0, rq = 0;
    const bool exact = rational_approx(ratio2, 1 << 20, 1e-12, &rp, &rq);

    const auto kmax1 = static_cast<std::int64_t>(
        std::floor(cutoff * L1 / two_pi)) + 2;
    const auto kmax2 = static_cast<std::int64_t>(
        std::floor(cutoff * L2 / two_pi)) + 2;

    std::map<std::int64_t, int> by_key;        // exact path
    std::vector<double> loose;                 // fallback path
    const std::int64_t a_shift = (delta1 == 0.5) ? 1 : 0;
    const std::int64_t b_shift = (delta2 == 0.5) ? 1 : 0;
    for (std::int64_t k1 = -kmax1; k1 <= kmax1; ++k1) {
        const std::int64_t a = 2 * k1 + a_shift;
        for (std::int64_t k2 = -kmax2; k2 <= kmax2; ++k2) {
            const std::int64_t b = 2 * k2 + b_shift;
            if (a == 0 && b == 0) continue;  // harmonic mode, not stored
            const double lam2 =
                (std::numbers::pi_v<double> * std::numbers::pi_v<double>) *
                (static_cast<double>(a * a) / (L1 * L1) +
                 static_cast<double>(b * b) / (L2 * L2));
            const double lam = std::sqrt(lam2);
            if (lam > cutoff) continue;
            if (exact) {
                by_key[a * a * rq + b * b * rp] += 1;
            } else {
                loose.push_back(lam2);
            }
        }
    }

    std::vector<SpectralMode> modes;
    if (exact) {
        for (const auto& [key, count] : by_key) {
            const double lam = std::sqrt(static_cast<double>(key) /
                                         static_cast<double>(rq)) *
                               std::numbers::pi_v<double> / L1;
            modes.push_back({lam, count});
        }
    } else {
        std::sort(loose.begin(), loose.end());
        for (std::size_t i = 0; i < loose.size();) {
            std::size_t j = i;
            while (j < loose.size() && loose[j] <= loose[i] * (1.0 + 1e-9)) ++j;
            modes.push_back({std::sqrt(loose[i]), static_cast<int>(j - i)});
            i = j;
        }
    }
    const int ker = (delta1 == 0.0 && delta2 == 0.0) ? 1 : 0;
    return finish_spectrum(std::move(modes), ker, ker, cutoff);
}

ChiralSpectrum make_twisted_torus(int flux, double area, double cutoff) {
    if (flux == 0)
        throw std::invalid_argument("make_twisted_torus: flux must be nonzero");
    if (!(area > 0.0))
        throw std::invalid_argument("make_twisted_torus: area must be positive");
    if (!(cutoff > 0.0))
        throw std::invalid_argument("make_twisted_torus: cutoff must be positive");
    const double B = 2.0 * std::numbers::pi_v<double> * std::abs(flux) / area;
    std::vector<SpectralMode> modes;
    for (std::int64_t n = 1;; ++n) {
        const double lam = std::sqrt(2.0 * B * static_cast<double>(n));
        if (lam > cutoff) break;
        modes.push_back({lam, std::abs(flux)});
    }
    const int kp = flux > 0 ? flux : 0;
    const int km = flux < 0 ? -flux : 0;
    return finish_spectrum(std::move(modes), kp, km, cutoff);
}

ChiralSpectrum make_round_sphere(double radius, double cutoff) {
    if (!(radius > 0.0))
        throw std::invalid_argument("make_round_sphere: radius must be positive");
    if (!(cutoff > 0.0))
        throw std::invalid_argument("make_round_sphere: cutoff must be positive");
    std::vector<SpectralMode> modes;
    for (std::int64_t n = 1;; ++n) {
        const double lam = static_cast<double>(n) / radius;
        if (lam > cutoff) break;
        modes.push_back({lam, static_cast<int>(2 * n)});
    }
    return finish_spectrum(std::move(modes), 0, 0, cutoff);
}

namespace {

using nlohmann::json;

const json& require_field(const json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end()) throw ParseError(name, "missing field");
    return *it;
}

int require_int(const json& v, const std::string& path) {
    if (!v.is_number_integer())
        throw ParseError(path, "expected an integer");
    return v.get<int>();
}

double require_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ParseError(path, "expected a number");
    return v.get<double>();
}

}  // namespace

ChiralSpectrum load_spectrum(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("(document)", e.what());
    }
    if (!doc.is_object()) throw ParseError("(document)", "expected an object");

    ChiralSpectrum s;
    s.cutoff = require_number(require_field(doc, "cutoff"), "cutoff");
    if (!(s.cutoff > 0.0)) throw ParseError("cutoff", "cutoff must be positive");

    s.ker_plus = require_int(require_field(doc, "ker_plus"), "ker_plus");
    if (s.ker_plus < 0) throw ParseError("ker_plus", "negative kernel dimension");
    s.ker_minus = require_int(require_field(doc, "ker_minus"), "ker_minus");
    if (s.ker_minus < 0)
        throw ParseError("ker_minus", "negative kernel dimension");

    const json& modes = require_field(doc, "modes");
    if (!modes.is_array()) throw ParseError("modes", "expected an array");
    double prev = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const std::string base = "modes[" + std::to_string(i) + "]";
        const json& entry = modes[i];
        if (!entry.is_array() || entry.size() != 2)
            throw ParseError(base, "expected a [lambda, multiplicity] pair");
        const double lam = require_number(entry[0], base + "[0]");
        const int mult = require_int(entry[1], base + "[1]");
        if (!(lam > 0.0))
            throw ParseError(base + "[0]", "eigenvalue must be positive");
        if (!(lam > prev)) throw ParseError(base + "[0]", "unsorted eigenvalues");
        if (lam > s.cutoff)
            throw ParseError(base + "[0]", "eigenvalue exceeds cutoff");
        if (mult < 1)
            throw ParseError(base + "[1]", "multiplicity must be a positive integer");
        s.positive_modes.push_back({lam, mult});
        prev = lam;
    }
    s.check();
    return s;
}

ChiralSpectrum load_spectrum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_spectrum_file: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_spectrum(buf.str());
}

std::string save_spectrum(const ChiralSpectrum& spec) {
    json doc;
    doc["modes"] = json::array();
    for (const SpectralMode& m : spec.positive_modes)
        doc["modes"].push_back(json::array({m.lambda, m.multiplicity}));
    doc["ker_plus"] = spec.ker_plus;
    doc["ker_minus"] = spec.ker_minus;
    doc["cutoff"] = spec.cutoff;
    return doc.dump(2);
}

void save_spectrum_file(const ChiralSpectrum& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_spectrum_file: cannot open " + path);
    out << save_spectrum(spec) << "\n";
}

}  // namespace diraclab
