#pragma once

// Quantized biased conductance: H = V (e G / beta)^2 / 2 on the charge lattice,
// realized as the finite-difference operator -(V/2)(Q + Q^dagger - 2).

#include "qcircuit/charge_lattice.hpp"
#include "qcircuit/eigensolver.hpp"
#include "qcircuit/units.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qcircuit {

/// A bias V across a conductance whose conjugate charge lives on `lattice`.
/// V = 0 is accepted as the degenerate zero-bias limit (flat band at 0).
struct SchrodingerCircuit {
    double V;
    double beta;
    ChargeLattice lattice;

    SchrodingerCircuit(double V_, double beta_, ChargeLattice lat) : V(V_), beta(beta_), lattice(lat) {
        if (!(V >= 0.0)) throw std::invalid_argument("bias V must be non-negative");
        if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    }

    double e() const { return lattice.e(); }
    double step() const { return conductance_step(beta, e()); }
};

/// Ascending conductance values spaced by `step`.
struct ConductanceLevelSet {
    std::vector<double> levels;
    double step = 0.0;
};

/// -(V/2)(Q + Q^dagger - 2). Eigenvalues are E/e.
inline OperatorMatrix build_hamiltonian(const SchrodingerCircuit& c) {
    const Eigen::Index n = c.lattice.size();
    const double hop = -0.5 * c.V;
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) h(i, i) = c.V;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        h(i + 1, i) += hop;
        h(i, i + 1) += hop;
    }
    if (c.lattice.boundary() == Boundary::Periodic) {
        // N = 2 wraps onto the existing bond, giving hopping -V.
        h(0, n - 1) += hop;
        h(n - 1, 0) += hop;
    }
    return OperatorMatrix::hermitian(std::move(h));
}

/// E(G) = e V (1 - cos(e G / beta)).
inline double dispersion(const SchrodingerCircuit& c, double G) {
    return c.e() * c.V * (1.0 - std::cos(c.e() * G / c.beta));
}

/// Conductances reaching energy E: (beta/e)(Arccos(1 - E/(eV)) + 2 m pi), m = 0..m_max.
///
/// Only the principal Arccos branch is enumerated. The mirror solutions
/// -Arccos(.) + 2 m pi also solve the dispersion but are not emitted, so no
/// negative conductance appears.
inline ConductanceLevelSet conductance_levels_at_energy(const SchrodingerCircuit& c, double E, int m_max) {
    if (m_max < 0) throw std::invalid_argument("m_max must be non-negative");
    const double band_top = 2.0 * c.e() * c.V;
    if (!(E >= 0.0 && E <= band_top))
        throw std::domain_error("energy outside the band: need 0 <= E/eV <= 2");
    const double x = c.V > 0.0 ? E / (c.e() * c.V) : 0.0;
    const double base = std::acos(std::clamp(1.0 - x, -1.0, 1.0));
    ConductanceLevelSet out;
    out.step = c.step();
    out.levels.reserve(static_cast<std::size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m) out.levels.push_back(c.beta / c.e() * (base + two_pi * m));
    return out;
}

/// G_m = 2 pi m beta / e: the circuit's conductance staircase at zero excess energy.
inline ConductanceLevelSet zero_energy_levels(const SchrodingerCircuit& c, int m_max) {
    return conductance_levels_at_energy(c, 0.0, m_max);
}

/// Comparison of a numerical spectrum against its closed form.
struct BandReport {
    Eigen::Index sites = 0;
    double max_mismatch = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

namespace detail {

inline BandReport compare_sorted(std::vector<double> numeric, std::vector<double> analytic, double tolerance) {
    std::sort(numeric.begin(), numeric.end());
    std::sort(analytic.begin(), analytic.end());
    BandReport r;
    r.sites = static_cast<Eigen::Index>(numeric.size());
    r.tolerance = tolerance;
    for (std::size_t i = 0; i < numeric.size(); ++i)
        r.max_mismatch = std::max(r.max_mismatch, std::abs(numeric[i] - analytic[i]));
    r.passed = numeric.size() == analytic.size() && r.max_mismatch < tolerance;
    return r;
}

}  // namespace detail

/// Cosine band e V (1 - cos(2 pi k / N)) of the periodic lattice against the
/// diagonalized Hamiltonian. Tolerance 1e-10 e V.
inline BandReport band_check(const SchrodingerCircuit& c) {
    if (c.lattice.boundary() != Boundary::Periodic)
        throw std::invalid_argument("band_check needs a periodic lattice");
    const Eigen::Index n = c.lattice.size();
    const Spectrum s = hermitian_eigen(build_hamiltonian(c));
    std::vector<double> numeric(static_cast<std::size_t>(n)), analytic(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
        numeric[k] = c.e() * s.eigenvalues(k);
        analytic[k] = c.e() * c.V * (1.0 - std::cos(two_pi * k / static_cast<double>(n)));
    }
    BandReport r = detail::compare_sorted(std::move(numeric), std::move(analytic), 1e-10 * c.e() * c.V);
    if (c.V == 0.0) r.passed = r.max_mismatch == 0.0;
    r.sites = n;
    return r;
}

}  // namespace qcircuit
