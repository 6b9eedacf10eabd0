#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "diraclab/cylinder_oracle.hpp"
#include "diraclab/errors.hpp"
#include "diraclab/family_chern.hpp"
#include "diraclab/index_engine.hpp"
#include "diraclab/isospectral.hpp"
#include "diraclab/parallel.hpp"
#include "diraclab/spectral_models.hpp"
#include "diraclab/validate.hpp"

namespace {

using nlohmann::json;
using namespace diraclab;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

BoundaryCondition parse_condition(const std::string& s) {
    if (s == "plus") return BoundaryCondition::Plus;
    if (s == "minus") return BoundaryCondition::Minus;
    if (s == "aps") return BoundaryCondition::APS;
    throw std::invalid_argument("unknown boundary condition '" + s +
                                "' (expected plus, minus, or aps)");
}

Orientation parse_orientation(const std::string& s) {
    if (s == "inward") return Orientation::Inward;
    if (s == "reversed") return Orientation::Reversed;
    throw std::invalid_argument("unknown orientation '" + s +
                                "' (expected inward or reversed)");
}

// "a:b:n" -> n samples from a to b, logarithmic or linear spacing.
std::vector<double> parse_grid(const std::string& text, bool log_spaced) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("grid '" + text + "' is not of the form a:b:n");
    double a = 0, bnd = 0;
    long n = 0;
    try {
        a = std::stod(text.substr(0, c1));
        bnd = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        n = std::stol(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("grid '" + text + "' has malformed numbers");
    }
    if (n < 1) throw std::invalid_argument("grid needs at least one sample");
    if (n == 1) {
        if (a != bnd)
            throw std::invalid_argument("single-sample grid needs a == b");
        return {a};
    }
    if (!(bnd > a))
        throw std::invalid_argument("grid needs b > a for ascending samples");
    if (log_spaced && !(a > 0.0))
        throw std::invalid_argument("logarithmic grid needs a > 0");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(n - 1);
        out.push_back(log_spaced ? a * std::pow(bnd / a, f)
                                 : a + (bnd - a) * f);
    }
    out.front() = a;
    out.back() = bnd;
    return out;
}

// Merge a JSON config file into argv: each top-level key becomes --key=value
// unless the flag is already present on the command line (flags win).
std::vector<std::string> merge_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            config_path = args[i].substr(9);
    }
    if (config_path.empty()) return args;

    std::ifstream in(config_path);
    if (!in)
        throw std::invalid_argument("cannot open config file " + config_path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("(config)", e.what());
    }
    if (!doc.is_object())
        throw ParseError("(config)", "expected a JSON object of flag values");

    auto present = [&](const std::string& flag) {
        for (const std::string& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    for (const auto& [key, value] : doc.items()) {
        const std::string flag = "--" + key;
        if (present(flag)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back(flag);
        } else if (value.is_string()) {
            args.push_back(flag + "=" + value.get<std::string>());
        } else if (value.is_number_integer()) {
            args.push_back(flag + "=" + std::to_string(value.get<long long>()));
        } else if (value.is_number()) {
            args.push_back(flag + "=" + fmt(value.get<double>()));
        } else {
            throw ParseError(key, "config values must be scalars");
        }
    }
    return args;
}

void apply_threads(int requested) {
    int cap = 0;
    if (const char* env = std::getenv("DIRACLAB_THREADS")) {
        try {
            cap = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw std::invalid_argument(
                "DIRACLAB_THREADS must be a positive integer");
        }
    }
    int want = requested > 0 ? requested : par::max_threads();
    if (cap > 0) want = std::min(want, cap);
    par::set_threads(std::max(1, want));
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << body;
}

struct CsvWriter {
    std::ostringstream buf;
    void header(const std::string& h) { buf << h << "\n"; }
    void row(const std::vector<double>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) buf << ",";
            buf << fmt(vals[i]);
        }
        buf << "\n";
    }
    void deliver(const std::string& path) {
        if (path.empty())
            std::cout << buf.str();
        else
            write_text(path, buf.str());
    }
};

// ---------------------------------------------------------------------------

int cmd_model(const std::string& kind, double L1, double L2, double d1,
              double d2, int flux, double area, double radius, double cutoff,
              const std::string& out) {
    ChiralSpectrum spec;
    if (kind == "flat")
        spec = make_flat_torus(L1, L2, d1, d2, cutoff);
    else if (kind == "twisted")
        spec = make_twisted_torus(flux, area, cutoff);
    else if (kind == "sphere")
        spec = make_round_sphere(radius, cutoff);
    else
        throw std::invalid_argument("unknown model kind '" + kind +
                                    "' (expected flat, twisted, or sphere)");
    const std::string text = save_spectrum(spec);
    if (out.empty()) {
        std::cout << text << "\n";
        return 0;
    }
    write_text(out, text + "\n");
    json verdict{{"command", "model"},
                 {"kind", kind},
                 {"modes", spec.positive_modes.size()},
                 {"ker_plus", spec.ker_plus},
                 {"ker_minus", spec.ker_minus},
                 {"cutoff", spec.cutoff},
                 {"out", out}};
    std::cout << verdict.dump() << "\n";
    return 0;
}

int cmd_density(const std::string& spectrum_path, const std::string& cond_s,
                const std::string& orient_s, const std::string& t_grid_s,
                const std::string& u_grid_s, double tol,
                const std::string& out) {
    const ChiralSpectrum spec = load_spectrum_file(spectrum_path);
    const BoundaryCondition cond = parse_condition(cond_s);
    const Orientation orient = parse_orientation(orient_s);
    const std::vector<double> t_grid = parse_grid(t_grid_s, true);
    const std::vector<double> u_grid = parse_grid(u_grid_s, false);

    CsvWriter csv;
    csv.header("t,u,value,bound,integral");
    if (cond == BoundaryCondition::APS) {
        for (double t : t_grid)
            for (double u : u_grid)
                csv.row({t, u, aps_density(spec, t, u, tol), 0.0,
                         aps_density_integral(spec, t, u, tol)});
    } else {
        const BoundaryComponent comp{spec, cond, orient};
        for (double t : t_grid)
            for (double u : u_grid)
                csv.row({t, u, local_density(comp, t, u), 0.0,
                         local_density_integral(comp, t, u)});
    }
    csv.deliver(out);

    json verdict{{"command", "density"},
                 {"condition", cond_s},
                 {"orientation", orient_s},
                 {"rows", t_grid.size() * u_grid.size()}};
    if (!out.empty()) std::cout << verdict.dump() << "\n";
    return 0;
}

int cmd_index(const std::string& spectrum_path, double L,
              const std::string& e0_s, const std::string& e1_s) {
    const ChiralSpectrum spec = load_spectrum_file(spectrum_path);
    const BoundaryCondition e0 = parse_condition(e0_s);
    const BoundaryCondition e1 = parse_condition(e1_s);

    CylinderProblem prob{spec, L, e0, e1};
    const ModeKernelDims dims = cylinder_kernel_dims(prob);
    const std::vector<BoundaryComponent> comps{
        {spec, e0, Orientation::Inward}, {spec, e1, Orientation::Reversed}};
    const int predicted = predicted_index(comps);
    const bool match = predicted == dims.index();

    json verdict{{"command", "index"},
                 {"eps0", e0_s},
                 {"eps1", e1_s},
                 {"L", L},
                 {"dim_ker_d", dims.dim_ker_d},
                 {"dim_ker_dstar", dims.dim_ker_dstar},
                 {"oracle_index", dims.index()},
                 {"predicted_index", predicted},
                 {"match", match}};
    std::cout << verdict.dump() << "\n";
    return match ? 0 : 1;
}

int cmd_isospectral(const std::string& spectrum_path, double L,
                    const std::string& e0_s, const std::string& e0p_s,
                    const std::string& e1_s, const std::string& e1p_s,
                    const std::string& t_grid_s, double tol,
                    const std::string& out) {
    const ChiralSpectrum spec = load_spectrum_file(spectrum_path);
    SwapCylinder cyl{spec,
                     L,
                     parse_condition(e0_s),
                     parse_condition(e0p_s),
                     parse_condition(e1_s),
                     parse_condition(e1p_s)};
    const SwapVerdict nc = necessary_condition(cyl.swap_components());
    const std::vector<double> t_grid = parse_grid(t_grid_s, true);
    const TraceSweep sweep = trace_difference_sweep(cyl, t_grid, tol);
    const ExtractedConstant ec = extract_constant(sweep, tol);

    if (!out.empty()) {
        CsvWriter csv;
        csv.header("t,value,bound");
        for (std::size_t i = 0; i < sweep.t.size(); ++i)
            csv.row({sweep.t[i], sweep.values[i], sweep.truncation_bound[i]});
        csv.deliver(out);
    }

    const double theory = 0.5 * (nc.s1 - nc.s2);
    const bool match =
        ec.converged && std::abs(ec.constant - theory) <= 1e-4 + ec.residual_bound;
    json verdict{{"command", "isospectral"},
                 {"ruled_out", nc.ruled_out},
                 {"s1", nc.s1},
                 {"s2", nc.s2},
                 {"constant", ec.constant},
                 {"residual_bound", ec.residual_bound},
                 {"converged", ec.converged},
                 {"theory_constant", theory},
                 {"match", match}};
    std::cout << verdict.dump() << "\n";
    return match ? 0 : 1;
}

int cmd_family(int n, double m, double L, const std::string& e0_s,
               const std::string& e1_s) {
    const BoundaryCondition e0 = parse_condition(e0_s);
    const BoundaryCondition e1 = parse_condition(e1_s);
    const SpectralFamily fam = make_two_band_family(n, m);
    const std::vector<FamilyComponent> comps{
        {fam, e0, Orientation::Inward}, {fam, e1, Orientation::Reversed}};
    const FamilyIndexData pred = family_predicted_chern(comps);
    const FamilyIndexData oracle = family_cylinder_index_bundle(fam, L, e0, e1);
    const bool match =
        pred.degree0 == oracle.degree0 && pred.degree2 == oracle.degree2;

    json verdict{{"command", "family"},
                 {"n", n},
                 {"m", m},
                 {"eps0", e0_s},
                 {"eps1", e1_s},
                 {"degree0_predicted", pred.degree0},
                 {"degree0_oracle", oracle.degree0},
                 {"degree2_predicted", pred.degree2},
                 {"degree2_oracle", oracle.degree2},
                 {"match", match}};
    std::cout << verdict.dump() << "\n";
    return match ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        std::vector<std::string> args = merge_config(argc, argv);

        CLI::App app{"desk-scale laboratory for boundary index theorems"};
        app.require_subcommand(1);
        app.fallthrough();  // let --threads / --config appear after the subcommand
        int threads = 0;
        std::string config_dummy;
        app.add_option("--threads", threads, "worker thread count");
        app.add_option("--config", config_dummy,
                       "JSON file with default flag values (flags win)");

        // model
        auto* model = app.add_subcommand("model", "build a boundary spectrum");
        std::string kind, model_out;
        double L1 = 6.283185307179586, L2 = 6.283185307179586;
        double d1 = 0.0, d2 = 0.0, area = 3.141592653589793, radius = 1.0;
        double cutoff = 20.0;
        int flux = 1;
        model->add_option("--kind", kind, "flat | twisted | sphere")->required();
        model->add_option("--L1", L1, "flat torus length 1");
        model->add_option("--L2", L2, "flat torus length 2");
        model->add_option("--delta1", d1, "flat torus structure shift 1 (0 or 0.5)");
        model->add_option("--delta2", d2, "flat torus structure shift 2 (0 or 0.5)");
        model->add_option("--flux", flux, "twisted torus flux (nonzero integer)");
        model->add_option("--area", area, "twisted torus area");
        model->add_option("--radius", radius, "sphere radius");
        model->add_option("--cutoff", cutoff, "spectral cutoff");
        model->add_option("--out", model_out, "output JSON path (default stdout)");

        // density
        auto* density = app.add_subcommand("density", "boundary index density sweep");
        std::string den_spec, den_cond, den_orient = "inward";
        std::string den_t = "0.01:0.1:5", den_u = "0:1:11", den_out;
        double den_tol = 1e-4;
        density->add_option("--spectrum", den_spec, "spectrum JSON path")->required();
        density->add_option("--condition", den_cond, "plus | minus | aps")->required();
        density->add_option("--orientation", den_orient, "inward | reversed");
        density->add_option("--t-grid", den_t, "a:b:n logarithmic time grid");
        density->add_option("--u-grid", den_u, "a:b:n linear distance grid");
        density->add_option("--tol", den_tol, "truncation tolerance");
        density->add_option("--out", den_out, "CSV path (default stdout)");

        // index
        auto* index = app.add_subcommand(
            "index", "verify the cylinder index against the prediction");
        std::string idx_spec, idx_e0, idx_e1;
        double idx_L = 1.0;
        index->add_option("--spectrum", idx_spec, "spectrum JSON path")->required();
        index->add_option("--L", idx_L, "cylinder length");
        index->add_option("--eps0", idx_e0, "condition at u = 0")->required();
        index->add_option("--eps1", idx_e1, "condition at u = L")->required();

        // isospectral
        auto* iso = app.add_subcommand(
            "isospectral", "condition-swap obstruction and trace difference");
        std::string iso_spec, iso_e0, iso_e0p, iso_e1, iso_e1p;
        std::string iso_t = "0.01:0.05:4", iso_out;
        double iso_L = 1.0, iso_tol = 1e-6;
        iso->add_option("--spectrum", iso_spec, "spectrum JSON path")->required();
        iso->add_option("--L", iso_L, "cylinder length");
        iso->add_option("--eps0", iso_e0, "condition at u = 0")->required();
        iso->add_option("--eps0-prime", iso_e0p, "swapped condition at u = 0")
            ->required();
        iso->add_option("--eps1", iso_e1, "condition at u = L")->required();
        iso->add_option("--eps1-prime", iso_e1p, "swapped condition at u = L")
            ->required();
        iso->add_option("--t-grid", iso_t, "a:b:n logarithmic time grid");
        iso->add_option("--tol", iso_tol, "truncation tolerance");
        iso->add_option("--out", iso_out, "CSV path for the sweep");

        // family
        auto* family = app.add_subcommand(
            "family", "two-band family index in degrees 0 and 2");
        int fam_n = 16;
        double fam_m = 1.0, fam_L = 1.0;
        std::string fam_e0, fam_e1;
        family->add_option("--n", fam_n, "grid resolution (>= 8)");
        family->add_option("--m", fam_m, "two-band mass parameter");
        family->add_option("--L", fam_L, "cylinder length");
        family->add_option("--eps0", fam_e0, "condition at u = 0")->required();
        family->add_option("--eps1", fam_e1, "condition at u = L")->required();

        // validate
        auto* validate = app.add_subcommand(
            "validate", "run the deterministic self-check battery");

        try {
            std::reverse(args.begin(), args.end());  // CLI11 wants reversed args
            app.parse(args);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);  // prints help or the parse error
            return code == 0 ? 0 : 2;
        }

        apply_threads(threads);

        if (*model)
            return cmd_model(kind, L1, L2, d1, d2, flux, area, radius, cutoff,
                             model_out);
        if (*density)
            return cmd_density(den_spec, den_cond, den_orient, den_t, den_u,
                               den_tol, den_out);
        if (*index) return cmd_index(idx_spec, idx_L, idx_e0, idx_e1);
        if (*iso)
            return cmd_isospectral(iso_spec, iso_L, iso_e0, iso_e0p, iso_e1,
                                   iso_e1p, iso_t, iso_tol, iso_out);
        if (*family) return cmd_family(fam_n, fam_m, fam_L, fam_e0, fam_e1);
        if (*validate) {
            const int failures = run_validation(std::cout);
            return failures == 0 ? 0 : 1;
        }
        return 2;
    } catch (const diraclab::ParseError& e) {
        std::cerr << "input error at " << e.path << ": " << e.what() << "\n";
        return 2;
    } catch (const diraclab::TruncationError& e) {
        std::cerr << "truncation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
