#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qcircuit/charge_lattice.hpp"
#include "qcircuit/eigensolver.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace qcircuit;

namespace {

OperatorMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> d;
    ComplexMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = complex(d(rng), d(rng));
    return OperatorMatrix::hermitian(0.5 * (a + a.adjoint()));
}

std::vector<double> as_vector(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST_CASE("small spectra", "[eigensolver]") {
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    CHECK(oracle::max_abs_diff(as_vector(hermitian_eigen(OperatorMatrix::hermitian(x)).eigenvalues), {-1, 1}) < 1e-14);

    const ComplexMatrix d = Eigen::Vector3cd(3, 1, 2).asDiagonal();
    CHECK(oracle::max_abs_diff(as_vector(hermitian_eigen(OperatorMatrix::hermitian(d)).eigenvalues), {1, 2, 3}) <
          1e-14);

    const auto ring = ChargeLattice::with_sites(4, Boundary::Periodic);
    const ComplexMatrix q = ladder_operator(ring).entries();
    const Spectrum s = hermitian_eigen(OperatorMatrix::hermitian(q + q.adjoint()));
    // first column (0, 1, 0, 1) of the circulant
    std::vector<double> want;
    for (const auto& z : oracle::circulant_eigenvalues({0.0, 1.0, 0.0, 1.0})) want.push_back(z.real());
    std::sort(want.begin(), want.end());
    CHECK(oracle::max_abs_diff(want, {-2, 0, 0, 2}) < 1e-14);
    CHECK(oracle::max_abs_diff(as_vector(s.eigenvalues), want) < 1e-12);
}

TEST_CASE("input validation", "[eigensolver]") {
    ComplexMatrix m(2, 2);
    m << 1, 2, 3, 4;
    CHECK_THROWS_AS(hermitian_eigen(OperatorMatrix::general(m)), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_eigen(OperatorMatrix::hermitian(ComplexMatrix(0, 0))), std::invalid_argument);
}

TEST_CASE("eigenpairs of random Hermitian matrices", "[eigensolver][property]") {
    std::mt19937_64 rng(17);
    for (Eigen::Index n : {1, 2, 5, 16, 40}) {
        const OperatorMatrix m = random_hermitian(rng, n);
        const Spectrum s = hermitian_eigen(m, true);
        REQUIRE(s.eigenvectors);
        const ComplexMatrix& v = *s.eigenvectors;
        const double norm = m.entries().norm();

        CHECK(std::is_sorted(s.eigenvalues.data(), s.eigenvalues.data() + n));
        CHECK((v.adjoint() * v - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
        for (Eigen::Index j = 0; j < n; ++j) {
            const double lam = s.eigenvalues(j);
            CHECK((m.entries() * v.col(j) - lam * v.col(j)).norm() <= 1e-9 * (std::abs(lam) + norm));

            // phase convention: the largest component is real and positive
            Eigen::Index pivot = 0;
            v.col(j).cwiseAbs().maxCoeff(&pivot);
            CHECK(v(pivot, j).imag() == 0.0);
            CHECK(v(pivot, j).real() > 0.0);
        }

        // trace preservation
        CHECK(std::abs(s.eigenvalues.sum() - m.entries().trace().real()) < 1e-10 * norm);

        // invariance under a random permutation similarity
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Eigen::PermutationMatrix<Eigen::Dynamic> p(n);
        for (Eigen::Index i = 0; i < n; ++i) p.indices()(i) = perm[static_cast<std::size_t>(i)];
        const ComplexMatrix permuted = p * m.entries() * p.transpose();
        const Spectrum sp = hermitian_eigen(OperatorMatrix::hermitian(permuted));
        CHECK((sp.eigenvalues - s.eigenvalues).cwiseAbs().maxCoeff() < 1e-10 * (1 + norm));

        // deterministic
        const Spectrum again = hermitian_eigen(m, true);
        CHECK(again.eigenvalues == s.eigenvalues);
        CHECK(*again.eigenvectors == v);
    }
}

TEST_CASE("real and complex paths agree", "[eigensolver]") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> d;
    const Eigen::Index n = 12;
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = d(rng);
    const Eigen::MatrixXd sym = a + a.transpose();
    const Spectrum real_path = hermitian_eigen(OperatorMatrix::hermitian(sym.cast<complex>()));

    // unitary diagonal phase twist keeps the spectrum but forces the complex solver
    ComplexMatrix u = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) u(i, i) = std::polar(1.0, 0.3 * static_cast<double>(i));
    ComplexMatrix twisted = u * sym.cast<complex>() * u.adjoint();
    twisted = 0.5 * (twisted + twisted.adjoint()).eval();
    const Spectrum complex_path = hermitian_eigen(OperatorMatrix::hermitian(twisted));
    CHECK((real_path.eigenvalues - complex_path.eigenvalues).cwiseAbs().maxCoeff() < 1e-12);
}
