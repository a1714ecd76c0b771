#pragma once

// Self-test harness: runs the band oracles, calibration roundtrips, the
// cross-model step comparison and the operator algebra on one lattice size.

#include "qcircuit/charge_lattice.hpp"
#include "qcircuit/dirac_circuit.hpp"
#include "qcircuit/eigensolver.hpp"
#include "qcircuit/landauer.hpp"
#include "qcircuit/schrodinger_circuit.hpp"
#include "qcircuit/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace qcircuit {

struct CheckResult {
    std::string name;
    double residual;
    double tolerance;
    bool passed;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }
};

struct ValidateOptions {
    long n_sites = 64;
    std::uint64_t seed = 1;
    UnitSystem units = UnitSystem::dimensionless();
    /// Negative control: perturbs the calibrated beta by 1%.
    bool corrupt_beta = false;
};

namespace detail {

inline double rel_err(double got, double want) {
    if (want == 0.0) return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}

inline CheckResult check(std::string name, double residual, double tolerance) {
    return {std::move(name), residual, tolerance, residual < tolerance};
}

inline double max_abs(const ComplexVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Largest deviation over the operator identities on one lattice: ladder shift,
// periodic unitarity, [q, Q] = e Q below n_max, and the derivative actions on
// f(n) = 1, n, n^2 at interior sites.
inline double operator_algebra_residual(long n_sites, double e) {
    double worst = 0.0;
    for (Boundary b : {Boundary::Open, Boundary::Periodic}) {
        const ChargeLattice lat(-n_sites / 2, -n_sites / 2 + n_sites - 1, b, e);
        const Eigen::Index n = lat.size();
        const ComplexMatrix q = charge_operator(lat).entries();
        const ComplexMatrix Q = ladder_operator(lat).entries();
        const OperatorMatrix dr = discrete_derivative_right(lat);
        const OperatorMatrix dl = discrete_derivative_left(lat);

        for (Eigen::Index i = 0; i < n; ++i) {
            ComplexVector basis = ComplexVector::Zero(n);
            basis(i) = 1.0;
            ComplexVector want = ComplexVector::Zero(n);
            if (i + 1 < n)
                want(i + 1) = 1.0;
            else if (b == Boundary::Periodic)
                want(0) = 1.0;
            worst = std::max(worst, max_abs(Q * basis - want));
            if (b == Boundary::Open && i + 1 < n)
                worst = std::max(worst, max_abs((q * Q - Q * q) * basis - e * (Q * basis)) / e);
        }
        if (b == Boundary::Periodic) {
            const ComplexMatrix id = ComplexMatrix::Identity(n, n);
            worst = std::max(worst, (Q * Q.adjoint() - id).cwiseAbs().maxCoeff());
            worst = std::max(worst, (Q.adjoint() * Q - id).cwiseAbs().maxCoeff());
        }

        ComplexVector one(n), lin(n), sq(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double x = static_cast<double>(lat.charge_index(i));
            one(i) = 1.0;
            lin(i) = x;
            sq(i) = x * x;
        }
        const ComplexVector r1 = dr.apply_to_function(one), l1 = dl.apply_to_function(one);
        const ComplexVector rn = dr.apply_to_function(lin), ln = dl.apply_to_function(lin);
        const ComplexVector r2 = dr.apply_to_function(sq), l2 = dl.apply_to_function(sq);
        // Derivative residuals in units of 1/e, relative to the size of f near n.
        for (Eigen::Index i = 1; i + 1 < n; ++i) {
            const double x = static_cast<double>(lat.charge_index(i));
            const double scale = 1.0 + (std::abs(x) + 1.0) * (std::abs(x) + 1.0);
            auto dev = [&](complex got, double want) { return std::abs(e * got - want) / scale; };
            worst = std::max({worst, dev(r1(i), 0.0), dev(l1(i), 0.0), dev(rn(i), 1.0), dev(ln(i), 1.0),
                              dev(r2(i), 2.0 * x + 1.0), dev(l2(i), 2.0 * x - 1.0)});
        }
    }
    return worst;
}

}  // namespace detail

inline ValidationReport run_validation(const ValidateOptions& opt) {
    using detail::check;
    using detail::rel_err;

    if (opt.n_sites < 2) throw std::invalid_argument("validation needs at least two sites");
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const UnitSystem& u = opt.units;
    const double e = u.e;
    const double perturb = opt.corrupt_beta ? 1.01 : 1.0;
    const double beta = calibrated_beta(u).beta * perturb;
    const double g0 = conductance_quantum(u);
    const auto lat = ChargeLattice::with_sites(static_cast<std::size_t>(opt.n_sites), Boundary::Periodic, e);

    ValidationReport report;

    {
        double worst = 0.0;
        for (const UnitSystem& sys : {UnitSystem::dimensionless(), UnitSystem::si()}) {
            const double b = calibrated_beta(sys).beta * perturb;
            const SchrodingerCircuit c(1.0, b, ChargeLattice(0, 1, Boundary::Periodic, sys.e));
            worst = std::max(worst, rel_err(zero_energy_levels(c, 1).step, conductance_quantum(sys)));
            worst = std::max(worst, rel_err(2.0 * c.step(), landauer::conductance(1, sys)));
        }
        report.checks.push_back(check("conductance_step", worst, 1e-12));
    }

    {
        const double V = 10.0 * (1.0 - unit(rng));  // (0, 10]
        const BandReport r = band_check(SchrodingerCircuit(V, beta, lat));
        report.checks.push_back(check("schrodinger_band", r.max_mismatch / (e * V), 1e-10));
    }

    {
        const double V = 0.1 + 2.0 * unit(rng);
        const double mu = 1.5 * unit(rng);
        const DiracCircuit c(V, beta, mu * beta / e, lat);
        const BandReport r = spinor_band_check(c);
        const double scale = std::max(e * V, e * mu);
        report.checks.push_back(check("dirac_band", r.max_mismatch / scale, 1e-10));

        const RealVector ev = hermitian_eigen(build_dirac_operator(c)).eigenvalues;
        double asym = 0.0, gap = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            asym = std::max(asym, std::abs(ev(i) + ev(ev.size() - 1 - i)));
            gap = std::min(gap, std::abs(e * ev(i)));
        }
        report.checks.push_back(check("dirac_particle_hole", asym, 1e-12));
        report.checks.push_back(check("gap_law", rel_err(gap, c.I0 * e * e / c.beta_prime), 1e-10));
    }

    {
        const double reference = calibrated_beta(u).beta;
        const SchrodingerCircuit s(1.0, reference, lat);
        const DiracCircuit d(1.0, beta, 0.0, lat);
        const ConductanceLevelSet levels = zero_energy_levels(s, 10);
        double worst = 0.0;
        for (int m = 0; m <= 10; ++m) {
            const double want = levels.levels[static_cast<std::size_t>(m)];
            const double got = quantization_condition(d, m);
            worst = std::max(worst, m == 0 ? std::abs(got - want) / g0 : rel_err(got, want));
        }
        report.checks.push_back(check("massless_reduction", worst, 1e-14));
    }

    {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double phase = std::numbers::pi / 2 * (1.0 - unit(rng));  // (0, pi/2]
            const double V = 0.5 + unit(rng);
            const double I0 = calibrate_I0(phase * beta / e, V, beta, e);
            const DiracCircuit c(V, beta, I0, lat);
            worst = std::max(worst, rel_err(quantization_condition(c, 0), phase * beta / e));
        }
        report.checks.push_back(check("calibration_roundtrip", worst, 1e-12));
    }

    {
        const GrapheneScaling gs = graphene_beta(beta, 1.0 / 300.0);
        report.checks.push_back(check("graphene_step", rel_err(gs.step(e), g0 / 300.0), 1e-12));
    }

    {
        const landauer::Waveguide2DEG wg(1.0, std::numbers::pi);
        const int N = landauer::occupied_subbands(wg, 5.0, 10);
        const double G = landauer::conductance(N, UnitSystem::dimensionless());
        const double residual = std::abs(N - 4) + std::abs(G - 8.0 / two_pi);
        report.checks.push_back(check("landauer_worked_example", residual, 1e-14));
    }

    report.checks.push_back(
        check("operator_algebra", detail::operator_algebra_residual(std::min(opt.n_sites, 256L), e), 1e-14));

    return report;
}

}  // namespace qcircuit
