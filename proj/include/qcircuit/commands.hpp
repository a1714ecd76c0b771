#pragma once

// Command implementations behind the qcircuit tool. Each returns a SweepTable
// whose metadata echoes every input needed to re-run it.

#include "qcircuit/dirac_circuit.hpp"
#include "qcircuit/landauer.hpp"
#include "qcircuit/schrodinger_circuit.hpp"
#include "qcircuit/sweep_table.hpp"
#include "qcircuit/units.hpp"
#include "qcircuit/validate.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace qcircuit::commands {

/// Bad flag values or combinations; the tool maps this to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline SweepTable make_table(std::vector<std::string> columns, const std::string& command, const UnitSystem& u) {
    SweepTable t(std::move(columns));
    t.set_meta("command", command);
    t.set_meta("version", version);
    t.set_meta("units", std::string(u.name()));
    return t;
}

// Two-site lattice carrying the charge unit for operations that never touch
// the lattice itself.
inline ChargeLattice unit_lattice(const UnitSystem& u) { return {0, 1, Boundary::Periodic, u.e}; }

/// Explicit beta if given, otherwise the calibrated value.
inline double resolve_beta(std::optional<double> beta, bool calibrated, const UnitSystem& u) {
    if (beta && calibrated) throw UsageError("give either --beta or --calibrated, not both");
    if (beta) {
        if (!(*beta > 0.0)) throw UsageError("--beta must be positive");
        return *beta;
    }
    return calibrated_beta(u).beta;
}

struct SchrodingerLevelsOptions {
    UnitSystem units;
    double V = 1.0;
    std::optional<double> beta;
    bool calibrated = false;
    int m_max = 3;
    std::optional<double> energy;
};

inline SweepTable schrodinger_levels(const SchrodingerLevelsOptions& o) {
    if (o.m_max < 0) throw UsageError("--m-max must be non-negative");
    if (!(o.V > 0.0)) throw UsageError("--V must be positive");
    const double beta = resolve_beta(o.beta, o.calibrated, o.units);
    const SchrodingerCircuit c(o.V, beta, unit_lattice(o.units));

    SweepTable t = make_table(o.energy ? std::vector<std::string>{"m", "G", "E_roundtrip"}
                                       : std::vector<std::string>{"m", "G"},
                              "schrodinger-levels", o.units);
    t.set_meta("V", o.V);
    t.set_meta("beta", beta);
    t.set_meta("beta_source", o.beta ? "explicit" : "calibrated");
    t.set_meta("m_max", std::to_string(o.m_max));
    t.set_meta("step", c.step());

    if (o.energy) {
        const double band_top = 2.0 * c.e() * c.V;
        if (!(*o.energy >= 0.0 && *o.energy <= band_top))
            throw UsageError("--energy " + format_number(*o.energy) +
                             " is outside the band 0 <= E/eV <= 2 (band top 2eV = " + format_number(band_top) +
                             ")");
        t.set_meta("energy", *o.energy);
        const ConductanceLevelSet s = conductance_levels_at_energy(c, *o.energy, o.m_max);
        for (int m = 0; m <= o.m_max; ++m) {
            const double G = s.levels[static_cast<std::size_t>(m)];
            t.add_row({static_cast<double>(m), G, dispersion(c, G)});
        }
    } else {
        const ConductanceLevelSet s = zero_energy_levels(c, o.m_max);
        for (int m = 0; m <= o.m_max; ++m) t.add_row({static_cast<double>(m), s.levels[static_cast<std::size_t>(m)]});
    }
    return t;
}

struct SchrodingerBandOptions {
    UnitSystem units;
    double V = 1.0;
    long n_sites = 16;
    Boundary boundary = Boundary::Periodic;
};

inline SweepTable schrodinger_band(const SchrodingerBandOptions& o) {
    if (o.n_sites < 2) throw UsageError("--n-sites must be at least 2");
    if (!(o.V >= 0.0)) throw UsageError("--V must be non-negative");
    const auto lat = ChargeLattice::with_sites(static_cast<std::size_t>(o.n_sites), o.boundary, o.units.e);
    const SchrodingerCircuit c(o.V, calibrated_beta(o.units).beta, lat);
    const bool periodic = o.boundary == Boundary::Periodic;

    SweepTable t = make_table(periodic ? std::vector<std::string>{"index", "E", "E_analytic"}
                                       : std::vector<std::string>{"index", "E"},
                              "schrodinger-band", o.units);
    t.set_meta("V", o.V);
    t.set_meta("n_sites", std::to_string(o.n_sites));
    t.set_meta("boundary", periodic ? "periodic" : "open");

    const RealVector ev = hermitian_eigen(build_hamiltonian(c)).eigenvalues;
    if (periodic) {
        std::vector<double> analytic;
        for (long k = 0; k < o.n_sites; ++k)
            analytic.push_back(c.e() * o.V * (1.0 - std::cos(two_pi * k / static_cast<double>(o.n_sites))));
        std::sort(analytic.begin(), analytic.end());
        double worst = 0.0;
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            t.add_row({static_cast<double>(i), c.e() * ev(i), analytic[static_cast<std::size_t>(i)]});
            worst = std::max(worst, std::abs(c.e() * ev(i) - analytic[static_cast<std::size_t>(i)]));
        }
        t.set_meta("max_mismatch", worst);
    } else {
        for (Eigen::Index i = 0; i < ev.size(); ++i) t.add_row({static_cast<double>(i), c.e() * ev(i)});
    }
    return t;
}

/// Parameters shared by the two Dirac commands.
struct DiracOptions {
    UnitSystem units;
    double V = 1.0;
    std::optional<double> beta_prime;
    std::optional<double> beta;
    bool calibrated = false;
    std::optional<double> vf_over_c;
    std::optional<double> I0;
    std::optional<double> calibrate_G0;
    int m_max = 0;
};

struct ResolvedDirac {
    double base_beta;
    double beta_prime;
    double I0;
};

inline ResolvedDirac resolve_dirac(const DiracOptions& o) {
    if (!(o.V > 0.0)) throw UsageError("--V must be positive");
    if (o.m_max < 0) throw UsageError("--m-max must be non-negative");
    ResolvedDirac r{};
    if (o.beta_prime) {
        if (o.vf_over_c || o.beta || o.calibrated)
            throw UsageError("--beta-prime cannot be combined with --beta, --calibrated or --vf-over-c");
        if (!(*o.beta_prime > 0.0)) throw UsageError("--beta-prime must be positive");
        r.base_beta = r.beta_prime = *o.beta_prime;
    } else {
        r.base_beta = resolve_beta(o.beta, o.calibrated, o.units);
        const double ratio = o.vf_over_c.value_or(1.0);
        if (!(ratio > 0.0 && ratio <= 1.0)) throw UsageError("--vf-over-c must lie in (0, 1]");
        r.beta_prime = graphene_beta(r.base_beta, ratio).beta_prime;
    }
    if (o.I0 && o.calibrate_G0) throw UsageError("give either --I0 or --calibrate-G0, not both");
    if (o.calibrate_G0)
        r.I0 = calibrate_I0(*o.calibrate_G0, o.V, r.beta_prime, o.units.e);
    else
        r.I0 = o.I0.value_or(0.0);
    if (!(r.I0 >= 0.0)) throw UsageError("I0 must be non-negative (a negative calibration lands off the principal branch)");
    return r;
}

inline void echo_dirac(SweepTable& t, const DiracOptions& o, const ResolvedDirac& r) {
    t.set_meta("V", o.V);
    t.set_meta("beta", r.base_beta);
    t.set_meta("beta_prime", r.beta_prime);
    if (o.vf_over_c) t.set_meta("vf_over_c", *o.vf_over_c);
    if (o.calibrate_G0) t.set_meta("calibrate_G0", *o.calibrate_G0);
    t.set_meta("I0", r.I0);
    t.set_meta("m_max", std::to_string(o.m_max));
    const double e = o.units.e;
    t.set_meta("mass", r.I0 * e / r.beta_prime);
    t.set_meta("step", conductance_step(r.beta_prime, e));
    t.set_meta("step_ratio", r.beta_prime / calibrated_beta(o.units).beta);
}

inline void require_roots(const DiracCircuit& c) {
    if (!(std::abs(source_ratio(c)) <= 1.0))
        throw UsageError("no quantization root: |I0 e / (beta' V)| = " + format_number(source_ratio(c)) + " > 1");
}

inline SweepTable dirac_dispersion(const DiracOptions& o, int g_points = 65, bool roots = true) {
    if (g_points < 2) throw UsageError("--g-points must be at least 2");
    const ResolvedDirac r = resolve_dirac(o);
    const DiracCircuit c(o.V, r.beta_prime, r.I0, unit_lattice(o.units));

    SweepTable t = make_table({"G", "E_plus", "E_minus"}, "dirac-dispersion", o.units);
    echo_dirac(t, o, r);
    t.set_meta("g_points", std::to_string(g_points));
    if (roots) {
        require_roots(c);
        for (int m = 0; m <= o.m_max; ++m)
            t.set_meta("root_m" + std::to_string(m), quantization_condition(c, m));
    }
    for (int i = 0; i < g_points; ++i) {
        const double phase = i + 1 == g_points ? two_pi : two_pi * i / (g_points - 1);
        const double G = r.beta_prime / c.e() * phase;
        const auto [plus, minus] = dispersion_branches(c, G);
        t.add_row({G, plus, minus});
    }
    return t;
}

/// Quantization roots with the 2x2 zero-energy determinant evaluated at each.
inline SweepTable dirac_roots(const DiracOptions& o) {
    const ResolvedDirac r = resolve_dirac(o);
    const DiracCircuit c(o.V, r.beta_prime, r.I0, unit_lattice(o.units));
    require_roots(c);
    SweepTable t = make_table({"m", "G", "determinant"}, "dirac-roots", o.units);
    echo_dirac(t, o, r);
    for (int m = 0; m <= o.m_max; ++m) {
        const double G = quantization_condition(c, m);
        t.add_row({static_cast<double>(m), G, zero_energy_determinant(c, G)});
    }
    return t;
}

struct LandauerOptions {
    UnitSystem units;
    double m_eff = 1.0;
    double width = std::numbers::pi;
    double fermi = 12.5;
    landauer::SweepParameter sweep = landauer::SweepParameter::FermiEnergy;
    double from = 0.0;
    double to = 20.0;
    int points = 101;
};

inline SweepTable landauer_staircase(const LandauerOptions& o) {
    if (!(o.from < o.to)) throw UsageError("sweep range needs --from < --to");
    if (o.points < 2) throw UsageError("--points must be at least 2");
    if (!(o.m_eff > 0.0)) throw UsageError("--m-eff must be positive");
    if (!(o.width > 0.0)) throw UsageError("--width must be positive");
    const bool width_sweep = o.sweep == landauer::SweepParameter::Width;
    if (width_sweep && !(o.from > 0.0)) throw UsageError("a width sweep must start above zero");
    if (!width_sweep && o.from < 0.0) throw UsageError("Fermi kinetic energy must be non-negative");

    const landauer::Waveguide2DEG wg(o.m_eff, o.width, 0.0, o.units);
    SweepTable t = make_table({"control", "N", "G"}, "landauer-staircase", o.units);
    t.set_meta("sweep", width_sweep ? "width" : "fermi");
    t.set_meta("m_eff", o.m_eff);
    if (width_sweep)
        t.set_meta("fermi", o.fermi);
    else
        t.set_meta("width", o.width);
    t.set_meta("from", o.from);
    t.set_meta("to", o.to);
    t.set_meta("points", std::to_string(o.points));
    t.set_meta("step", landauer::conductance(1, o.units));

    for (const auto& p : landauer::staircase_sweep(wg, {o.sweep, o.from, o.to, o.points, o.fermi}))
        t.add_row({p.control, static_cast<double>(p.N), p.G});
    return t;
}

struct CalibrateOptions {
    UnitSystem units;
    std::optional<double> vf_over_c;
    int degeneracy = 4;
};

inline SweepTable calibrate(const CalibrateOptions& o) {
    if (o.degeneracy < 1) throw UsageError("--degeneracy must be at least 1");
    std::vector<std::string> cols{"e", "hbar", "h", "conductance_quantum", "beta", "step", "min_conductivity"};
    if (o.vf_over_c) {
        cols.emplace_back("beta_prime");
        cols.emplace_back("step_prime");
    }
    SweepTable t = make_table(cols, "calibrate", o.units);
    t.set_meta("degeneracy", std::to_string(o.degeneracy));
    const BetaCalibration b = calibrated_beta(o.units);
    std::vector<double> row{o.units.e, o.units.hbar, o.units.h, conductance_quantum(o.units), b.beta, b.step,
                            min_conductivity(o.units, o.degeneracy)};
    if (o.vf_over_c) {
        if (!(*o.vf_over_c > 0.0 && *o.vf_over_c <= 1.0)) throw UsageError("--vf-over-c must lie in (0, 1]");
        t.set_meta("vf_over_c", *o.vf_over_c);
        const GrapheneScaling g = graphene_beta(b.beta, *o.vf_over_c);
        row.push_back(g.beta_prime);
        row.push_back(g.step(o.units.e));
    }
    t.add_row(std::move(row));
    return t;
}

}  // namespace qcircuit::commands
