#pragma once

// Graphene-analog circuit: bias V across a conductance in parallel with a
// current source I0, quantized with spinor states. The source enters as a mass
// term mu = I0 e / beta'.
//
// Pauli convention: sigma_z = diag(1, -1), sigma_y = [[0, -i], [i, 0]].

#include "qcircuit/charge_lattice.hpp"
#include "qcircuit/eigensolver.hpp"
#include "qcircuit/schrodinger_circuit.hpp"
#include "qcircuit/units.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qcircuit {

struct DiracCircuit {
    double V;
    double beta_prime;
    double I0;
    ChargeLattice lattice;

    DiracCircuit(double V_, double beta_prime_, double I0_, ChargeLattice lat)
        : V(V_), beta_prime(beta_prime_), I0(I0_), lattice(lat) {
        if (!(V >= 0.0)) throw std::invalid_argument("bias V must be non-negative");
        if (!(beta_prime > 0.0)) throw std::invalid_argument("beta' must be positive");
        if (!(I0 >= 0.0)) throw std::invalid_argument("source intensity I0 must be non-negative");
    }

    double e() const { return lattice.e(); }
    /// I0 e / beta', the mass-like coupling multiplying sigma_y.
    double mass() const { return I0 * e() / beta_prime; }
    double step() const { return conductance_step(beta_prime, e()); }
};

/// beta' = (v_F / c) beta.
struct GrapheneScaling {
    double vf_over_c;
    double beta;
    double beta_prime;

    double step(double e) const { return conductance_step(beta_prime, e); }
};

inline GrapheneScaling graphene_beta(double beta, double vf_over_c) {
    if (!(vf_over_c > 0.0 && vf_over_c <= 1.0))
        throw std::invalid_argument("v_F/c must lie in (0, 1]");
    return {vf_over_c, beta, vf_over_c * beta};
}

/// sigma_z (x) V (Q - Q^dagger)/(2i)  -  sigma_y (x) mu 1, dimension 2N.
/// Upper block is the sigma_z = +1 spinor component.
inline OperatorMatrix build_dirac_operator(const DiracCircuit& c) {
    const Eigen::Index n = c.lattice.size();
    const ComplexMatrix q = ladder_operator(c.lattice).entries();
    const ComplexMatrix kinetic = c.V * (q - q.adjoint()) / complex(0.0, 2.0);
    const complex coupling(0.0, c.mass());  // -sigma_y * mu has +i mu in the upper-right block

    ComplexMatrix d = ComplexMatrix::Zero(2 * n, 2 * n);
    d.topLeftCorner(n, n) = kinetic;
    d.bottomRightCorner(n, n) = -kinetic;
    d.topRightCorner(n, n).diagonal().setConstant(coupling);
    d.bottomLeftCorner(n, n).diagonal().setConstant(std::conj(coupling));
    return OperatorMatrix::hermitian(std::move(d));
}

/// Energies (E+, E-) = +-e sqrt(V^2 sin^2(e G / beta') + mu^2) of the 2x2 problem at fixed G.
inline std::pair<double, double> dispersion_branches(const DiracCircuit& c, double G) {
    const double s = c.V * std::sin(c.e() * G / c.beta_prime);
    const double half_width = c.e() * std::hypot(s, c.mass());
    return {half_width, -half_width};
}

/// det of V sigma_z sin(e G / beta') - sigma_y mu at E = 0, i.e. -(V^2 sin^2 + mu^2).
///
/// This vanishes only where both terms vanish, so for I0 > 0 it is nonzero at
/// every root returned by quantization_condition. Exposed so that tension can
/// be inspected next to the roots.
inline double zero_energy_determinant(const DiracCircuit& c, double G) {
    const double s = c.V * std::sin(c.e() * G / c.beta_prime);
    const double mu = c.mass();
    return -(s * s + mu * mu);
}

/// I0 e / (beta' V). Zero when I0 = 0, even at V = 0.
inline double source_ratio(const DiracCircuit& c) {
    if (c.I0 == 0.0) return 0.0;
    if (c.V == 0.0) return std::numeric_limits<double>::infinity();
    return c.mass() / c.V;
}

/// G = (beta'/e)(Arcsin(I0 e / (beta' V)) + 2 m pi), principal Arcsin branch.
inline double quantization_condition(const DiracCircuit& c, int m) {
    if (m < 0) throw std::invalid_argument("quantization index m must be non-negative");
    const double ratio = source_ratio(c);
    if (!(std::abs(ratio) <= 1.0))
        throw std::domain_error("no solution: |I0 e / (beta' V)| > 1");
    return c.beta_prime / c.e() * (std::asin(ratio) + two_pi * m);
}

/// I0 = V (beta'/e) sin(G0 e / beta').
///
/// quantization_condition(m = 0) returns G0 again only while G0 e / beta' lies
/// in [0, pi/2]; beyond that Arcsin folds back onto the principal branch.
inline double calibrate_I0(double G0, double V, double beta_prime, double e = 1.0) {
    if (!(V > 0.0)) throw std::invalid_argument("calibrate_I0: V must be positive");
    if (!(beta_prime > 0.0)) throw std::invalid_argument("calibrate_I0: beta' must be positive");
    return V * (beta_prime / e) * std::sin(G0 * e / beta_prime);
}

/// degeneracy * e^2/h; 4 covers spin and valley.
inline double min_conductivity(const UnitSystem& u, int degeneracy = 4) {
    if (degeneracy < 1) throw std::invalid_argument("degeneracy must be at least 1");
    return degeneracy * conductance_quantum(u);
}

/// Periodic-lattice spinor spectrum against +-e sqrt(V^2 sin^2(2 pi k/N) + mu^2).
/// Tolerance 1e-10 max(e V, e mu).
inline BandReport spinor_band_check(const DiracCircuit& c) {
    if (c.lattice.boundary() != Boundary::Periodic)
        throw std::invalid_argument("spinor_band_check needs a periodic lattice");
    const Eigen::Index n = c.lattice.size();
    const Spectrum s = hermitian_eigen(build_dirac_operator(c));
    std::vector<double> numeric, analytic;
    numeric.reserve(2 * n);
    analytic.reserve(2 * n);
    for (Eigen::Index i = 0; i < 2 * n; ++i) numeric.push_back(c.e() * s.eigenvalues(i));
    for (Eigen::Index k = 0; k < n; ++k) {
        const double w = c.e() * std::hypot(c.V * std::sin(two_pi * k / static_cast<double>(n)), c.mass());
        analytic.push_back(w);
        analytic.push_back(-w);
    }
    const double scale = std::max(c.e() * c.V, c.e() * c.mass());
    BandReport r = detail::compare_sorted(std::move(numeric), std::move(analytic), 1e-10 * scale);
    if (scale == 0.0) r.passed = r.max_mismatch == 0.0;
    r.sites = n;
    return r;
}

}  // namespace qcircuit
