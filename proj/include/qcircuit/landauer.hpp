#pragma once

// Reference model: ballistic constriction in a 2DEG with hard-wall transverse
// confinement, and its zero-temperature Landauer staircase G = N 2e^2/h.

#include "qcircuit/units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcircuit::landauer {

/// Constriction of width W for carriers of effective mass m_eff. E0 (band edge
/// plus z-subband cutoff) is carried for reporting; occupancy compares subband
/// energies against the Fermi kinetic energy, where it cancels.
struct Waveguide2DEG {
    double m_eff;
    double W;
    double E0 = 0.0;
    UnitSystem u = UnitSystem::dimensionless();

    Waveguide2DEG(double m, double width, double e0 = 0.0, UnitSystem units = UnitSystem::dimensionless())
        : m_eff(m), W(width), E0(e0), u(units) {
        if (!(m_eff > 0.0)) throw std::invalid_argument("effective mass must be positive");
        if (!(W > 0.0)) throw std::invalid_argument("constriction width must be positive");
    }

    /// Hard-wall level (hbar pi n / W)^2 / (2 m_eff).
    double subband_energy(long n) const {
        const double kt = u.hbar * (std::numbers::pi / W) * static_cast<double>(n);
        return kt * kt / (2.0 * m_eff);
    }

    /// hbar^2 k^2 / (2 m_eff).
    double kinetic_energy(double k) const {
        const double p = u.hbar * k;
        return p * p / (2.0 * m_eff);
    }
};

inline std::vector<double> subband_energies(const Waveguide2DEG& wg, int n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) out.push_back(wg.subband_energy(n));
    return out;
}

/// Count of subbands with eps_n strictly below `fermi_kinetic`, searching n = 1..n_max.
/// Throws if eps_{n_max} itself is below the Fermi kinetic energy, since the
/// count would then be truncated.
inline int occupied_subbands_below(const Waveguide2DEG& wg, double fermi_kinetic, int n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    if (wg.subband_energy(n_max) < fermi_kinetic)
        throw std::out_of_range("n_max = " + std::to_string(n_max) +
                                " does not bound the occupied subbands; raise it");
    int count = 0;
    for (int n = 1; n <= n_max && wg.subband_energy(n) < fermi_kinetic; ++n) ++count;
    return count;
}

/// N = #{n : eps_n < hbar^2 k_F^2 / 2m}.
inline int occupied_subbands(const Waveguide2DEG& wg, double k_F, int n_max) {
    if (!(k_F >= 0.0)) throw std::invalid_argument("Fermi wavenumber must be non-negative");
    return occupied_subbands_below(wg, wg.kinetic_energy(k_F), n_max);
}

/// Smallest n_max that bounds the occupancy at `fermi_kinetic`.
inline int subband_bound(const Waveguide2DEG& wg, double fermi_kinetic) {
    const double k_max = std::sqrt(2.0 * wg.m_eff * std::max(fermi_kinetic, 0.0)) / wg.u.hbar;
    int n = std::max(1, static_cast<int>(std::ceil(k_max * wg.W / std::numbers::pi)));
    while (wg.subband_energy(n) < fermi_kinetic) ++n;
    return n;
}

/// N 2e^2/h (spin degenerate, unit transmission, zero temperature).
inline double conductance(int N, const UnitSystem& u) {
    if (N < 0) throw std::invalid_argument("occupied subband count must be non-negative");
    return N * (2.0 * conductance_quantum(u));
}

/// v = hbar k / m_eff.
inline double electron_velocity(double k, const Waveguide2DEG& wg) { return wg.u.hbar * k / wg.m_eff; }

enum class SweepParameter { Width, FermiEnergy };

/// Uniform grid from `from` to `to`. A Width sweep holds the Fermi kinetic
/// energy at `fermi_energy`; a FermiEnergy sweep holds the waveguide width.
struct SweepSpec {
    SweepParameter parameter;
    double from;
    double to;
    int points;
    double fermi_energy = 0.0;
};

struct StaircasePoint {
    double control;
    int N;
    double G;
};

inline std::vector<StaircasePoint> staircase_sweep(const Waveguide2DEG& wg, const SweepSpec& sweep) {
    if (!(sweep.from < sweep.to)) throw std::invalid_argument("sweep needs from < to");
    if (sweep.points < 2) throw std::invalid_argument("sweep needs at least two points");
    if (sweep.parameter == SweepParameter::Width && !(sweep.from > 0.0))
        throw std::invalid_argument("width sweep must stay positive");

    std::vector<StaircasePoint> out;
    out.reserve(static_cast<std::size_t>(sweep.points));
    const double span = sweep.to - sweep.from;
    for (int i = 0; i < sweep.points; ++i) {
        const double x = i + 1 == sweep.points
                             ? sweep.to
                             : sweep.from + span * static_cast<double>(i) / (sweep.points - 1);
        Waveguide2DEG point = wg;
        double fermi = sweep.fermi_energy;
        if (sweep.parameter == SweepParameter::Width)
            point.W = x;
        else
            fermi = x;
        const int N = occupied_subbands_below(point, fermi, subband_bound(point, fermi));
        out.push_back({x, N, conductance(N, wg.u)});
    }
    return out;
}

}  // namespace qcircuit::landauer
