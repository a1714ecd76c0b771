#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qcircuit/dirac_circuit.hpp"

#include <random>

using namespace qcircuit;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> spectrum(const DiracCircuit& c) {
    const RealVector ev = hermitian_eigen(build_dirac_operator(c)).eigenvalues;
    return {ev.data(), ev.data() + ev.size()};
}

// V, beta' and the mass mu = I0 e / beta' on an N-site ring with e = 1.
DiracCircuit ring(long n, double V, double mu, double beta_prime = 1.0) {
    return {V, beta_prime, mu * beta_prime, ChargeLattice::with_sites(static_cast<std::size_t>(n), Boundary::Periodic)};
}

}  // namespace

TEST_CASE("circuit parameters", "[dirac]") {
    const auto lat = ChargeLattice::with_sites(4);
    CHECK_THROWS_AS(DiracCircuit(1.0, 0.0, 0.0, lat), std::invalid_argument);
    CHECK_THROWS_AS(DiracCircuit(1.0, 1.0, -0.1, lat), std::invalid_argument);
    CHECK_THROWS_AS(DiracCircuit(-1.0, 1.0, 0.0, lat), std::invalid_argument);
    CHECK(DiracCircuit(1.0, 2.0, 3.0, ChargeLattice(0, 1, Boundary::Open, 0.5)).mass() == 0.75);
}

TEST_CASE("spinor operator structure", "[dirac]") {
    for (Boundary b : {Boundary::Open, Boundary::Periodic}) {
        const auto lat = ChargeLattice::with_sites(5, b);
        const DiracCircuit c(1.3, 0.9, 0.4, lat);
        const ComplexMatrix q = ladder_operator(lat).entries();
        const ComplexMatrix kinetic = c.V * (q - q.adjoint()) / complex(0, 2);
        Eigen::Matrix2cd sz, sy;
        sz << 1, 0, 0, -1;
        sy << 0, complex(0, -1), complex(0, 1), 0;
        // sigma (x) A with the spinor index outermost
        ComplexMatrix want = ComplexMatrix::Zero(10, 10);
        for (int r = 0; r < 2; ++r)
            for (int s = 0; s < 2; ++s)
                want.block(5 * r, 5 * s, 5, 5) =
                    sz(r, s) * kinetic - sy(r, s) * c.mass() * ComplexMatrix::Identity(5, 5);
        const OperatorMatrix d = build_dirac_operator(c);
        CHECK(d.is_hermitian());
        CHECK((d.entries() - want).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("spinor spectra", "[dirac]") {
    CHECK(oracle::max_abs_diff(oracle::dirac_periodic_spectrum(4, 1.0, 0.0), {-1, -1, 0, 0, 0, 0, 1, 1}) < 1e-14);
    CHECK(oracle::max_abs_diff(spectrum(ring(4, 1.0, 0.0)), {-1, -1, 0, 0, 0, 0, 1, 1}) < 1e-12);

    const double mu = 0.8;
    const DiracCircuit flat(0.0, 1.0, mu, ChargeLattice(0, 1, Boundary::Open));
    CHECK(oracle::max_abs_diff(spectrum(flat), {-mu, -mu, mu, mu}) < 1e-14);

    SECTION("particle-hole symmetry on rings") {
        std::mt19937_64 rng(41);
        std::uniform_int_distribution<long> n(2, 40);
        std::uniform_real_distribution<double> x(0.0, 3.0);
        for (int i = 0; i < 20; ++i) {
            const std::vector<double> ev = spectrum(ring(n(rng), x(rng), x(rng)));
            for (std::size_t k = 0; k < ev.size(); ++k) CHECK(std::abs(ev[k] + ev[ev.size() - 1 - k]) < 1e-12);
        }
    }
}

TEST_CASE("dispersion branches", "[dirac]") {
    const DiracCircuit massless(2.0, 0.5, 0.0, ChargeLattice::with_sites(4));
    const auto [p0, m0] = dispersion_branches(massless, 0.0);
    CHECK(p0 == 0.0);
    CHECK(m0 == 0.0);
    for (double phase : {0.3, 1.0, 2.5, 4.0, 6.0}) {
        const double G = phase * massless.beta_prime / massless.e();
        const auto [plus, minus] = dispersion_branches(massless, G);
        CHECK_THAT(plus, WithinRel(massless.V * std::abs(std::sin(phase)), 1e-14));
        CHECK(minus == -plus);
    }

    const DiracCircuit massive(2.0, 0.5, 0.2, ChargeLattice(0, 1, Boundary::Periodic, 1.0));
    // gap half-width I0 e^2 / beta'
    CHECK_THAT(dispersion_branches(massive, 0.0).first, WithinRel(0.2 / 0.5, 1e-15));
}

TEST_CASE("quantization condition", "[dirac]") {
    const auto lat = ChargeLattice::with_sites(4);
    const DiracCircuit massless(1.0, 0.7, 0.0, lat);
    CHECK(quantization_condition(massless, 0) == 0.0);
    CHECK_THAT(quantization_condition(massless, 1), WithinRel(2 * pi * 0.7, 1e-15));

    // I0 e / (beta' V) = 1
    const DiracCircuit saturated(2.0, 0.5, 1.0, lat);
    CHECK(source_ratio(saturated) == 1.0);
    CHECK_THAT(quantization_condition(saturated, 0), WithinRel(0.5 * pi / 2, 1e-15));

    const DiracCircuit over(1.0, 0.7, 0.71, lat);
    CHECK_THROWS_AS(quantization_condition(over, 0), std::domain_error);
    CHECK_THROWS_AS(quantization_condition(massless, -1), std::invalid_argument);

    const DiracCircuit unbiased(0.0, 0.7, 0.1, lat);
    CHECK_THROWS_AS(quantization_condition(unbiased, 0), std::domain_error);
    CHECK(quantization_condition(DiracCircuit(0.0, 0.7, 0.0, lat), 2) == quantization_condition(massless, 2));
}

TEST_CASE("zero-energy determinant", "[dirac]") {
    const auto lat = ChargeLattice::with_sites(4);
    const DiracCircuit c(1.5, 1.0, 0.3, lat);
    for (int m = 0; m < 3; ++m) {
        const double G = quantization_condition(c, m);
        // direct 2x2 determinant
        const double s = c.V * std::sin(c.e() * G / c.beta_prime);
        Eigen::Matrix2cd h;
        h << s, complex(0, c.mass()), complex(0, -c.mass()), -s;
        CHECK_THAT(zero_energy_determinant(c, G), WithinAbs(h.determinant().real(), 1e-14));
        CHECK(zero_energy_determinant(c, G) < 0.0);
    }
    CHECK(zero_energy_determinant(DiracCircuit(1.0, 1.0, 0.0, lat), 0.0) == 0.0);
}

TEST_CASE("graphene scaling", "[dirac]") {
    const UnitSystem u = UnitSystem::dimensionless();
    const double beta = calibrated_beta(u).beta;

    const GrapheneScaling g = graphene_beta(beta, 1.0 / 300.0);
    CHECK_THAT(g.step(u.e), WithinRel(conductance_quantum(u) / 300.0, 1e-12));
    CHECK(graphene_beta(beta, 1.0).beta_prime == beta);
    CHECK(graphene_beta(1.0, 0.5).beta_prime == 0.5);
    CHECK_THROWS_AS(graphene_beta(beta, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(graphene_beta(beta, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(graphene_beta(beta, 1.5), std::invalid_argument);

    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> r(1e-4, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double ratio = r(rng);
        CHECK_THAT(graphene_beta(beta, ratio).step(u.e), WithinRel(ratio * conductance_step(beta, u.e), 1e-15));
    }
}

TEST_CASE("source calibration", "[dirac]") {
    const double V = 1.7, bp = 0.9, e = 1.0;
    CHECK_THAT(calibrate_I0(bp * pi / 2, V, bp, e), WithinRel(V * bp / e, 1e-15));
    CHECK(calibrate_I0(0.0, V, bp, e) == 0.0);
    CHECK_THROWS_AS(calibrate_I0(1.0, 0.0, bp, e), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_I0(1.0, V, 0.0, e), std::invalid_argument);

    const double I0 = calibrate_I0(0.3 * bp / e, V, bp, e);
    CHECK_THAT(I0, WithinRel(V * bp * std::sin(0.3) / e, 1e-15));
    const DiracCircuit c(V, bp, I0, ChargeLattice::with_sites(4));
    CHECK_THAT(quantization_condition(c, 0) * e / bp, WithinRel(0.3, 1e-12));

    // beyond pi/2 the principal Arcsin branch folds back to pi - g
    const double folded = calibrate_I0(2.0 * bp / e, V, bp, e);
    CHECK_THAT(quantization_condition(DiracCircuit(V, bp, folded, ChargeLattice::with_sites(4)), 0) * e / bp,
               WithinRel(pi - 2.0, 1e-12));
}

TEST_CASE("minimum conductivity", "[dirac]") {
    CHECK_THAT(min_conductivity(UnitSystem::si()), WithinRel(0.00015496183469222106, 1e-12));
    CHECK(min_conductivity(UnitSystem::si(), 1) == conductance_quantum(UnitSystem::si()));
    CHECK_THAT(min_conductivity(UnitSystem::si(), 2), WithinRel(2 * conductance_quantum(UnitSystem::si()), 1e-15));
    CHECK_THROWS_AS(min_conductivity(UnitSystem::si(), 0), std::invalid_argument);
}

TEST_CASE("spinor band check", "[dirac]") {
    const BandReport massless = spinor_band_check(ring(8, 1.0, 0.0));
    CHECK(massless.passed);
    CHECK(massless.max_mismatch < 1e-10);

    const DiracCircuit gapped = ring(8, 1.0, 0.5);
    const BandReport r = spinor_band_check(gapped);
    CHECK(r.passed);
    double gap = INFINITY;
    for (double lam : spectrum(gapped)) gap = std::min(gap, std::abs(lam));
    CHECK_THAT(gap, WithinRel(0.5, 1e-10));

    const DiracCircuit flat = ring(8, 0.0, 0.5);
    CHECK(spinor_band_check(flat).passed);
    for (double lam : spectrum(flat)) CHECK_THAT(std::abs(lam), WithinRel(0.5, 1e-14));

    CHECK_THROWS_AS(spinor_band_check(DiracCircuit(1.0, 1.0, 0.0, ChargeLattice::with_sites(4, Boundary::Open))),
                    std::invalid_argument);

    SECTION("against the Fourier-block oracle") {
        for (long n : {2L, 3L, 8L, 33L}) {
            const std::vector<double> want = oracle::dirac_periodic_spectrum(static_cast<std::size_t>(n), 1.3, 0.7);
            CHECK(oracle::max_abs_diff(spectrum(ring(n, 1.3, 0.7)), want) < 1e-10 * 1.3);
        }
    }
}
