#pragma once

// Truncated charge lattice {n_min, ..., n_max} and the dense operators built on
// it: charge q, ladder Q, its adjoint, and the right/left discrete derivatives.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcircuit {

using complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class Boundary { Open, Periodic };

class ChargeLattice {
public:
    ChargeLattice(long n_min, long n_max, Boundary boundary = Boundary::Periodic, double e = 1.0)
        : n_min_(n_min), n_max_(n_max), boundary_(boundary), e_(e) {
        if (n_max <= n_min)
            throw std::invalid_argument("charge lattice needs n_max > n_min (at least two sites)");
        if (!(e > 0.0))
            throw std::invalid_argument("charge unit e must be positive");
    }

    /// Lattice of `sites` charge states starting at n = 0.
    static ChargeLattice with_sites(std::size_t sites, Boundary boundary = Boundary::Periodic,
                                    double e = 1.0) {
        if (sites < 2) throw std::invalid_argument("charge lattice needs at least two sites");
        return {0, static_cast<long>(sites) - 1, boundary, e};
    }

    long n_min() const { return n_min_; }
    long n_max() const { return n_max_; }
    Boundary boundary() const { return boundary_; }
    double e() const { return e_; }
    Eigen::Index size() const { return static_cast<Eigen::Index>(n_max_ - n_min_ + 1); }

    long charge_index(Eigen::Index site) const { return n_min_ + static_cast<long>(site); }
    Eigen::Index site_of(long n) const {
        if (n < n_min_ || n > n_max_)
            throw std::out_of_range("charge index " + std::to_string(n) + " is off the lattice");
        return static_cast<Eigen::Index>(n - n_min_);
    }
    double charge(Eigen::Index site) const { return static_cast<double>(charge_index(site)) * e_; }

private:
    long n_min_;
    long n_max_;
    Boundary boundary_;
    double e_;
};

/// Dense complex square matrix with a verified Hermiticity flag.
class OperatorMatrix {
public:
    static constexpr double hermitian_tolerance = 1e-12;

    /// Wraps `m` as a Hermitian operator; throws if max|m - m^dagger| >= 1e-12.
    static OperatorMatrix hermitian(ComplexMatrix m) {
        require_square(m);
        if (hermiticity_defect(m) >= hermitian_tolerance)
            throw std::invalid_argument("matrix flagged Hermitian is not Hermitian");
        return OperatorMatrix(std::move(m), true);
    }

    static OperatorMatrix general(ComplexMatrix m) {
        require_square(m);
        return OperatorMatrix(std::move(m), false);
    }

    Eigen::Index dim() const { return entries_.rows(); }
    bool is_hermitian() const { return hermitian_; }
    const ComplexMatrix& entries() const { return entries_; }
    complex operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

    OperatorMatrix adjoint() const { return OperatorMatrix(entries_.adjoint(), hermitian_); }

    /// Column action on a state vector, M*psi.
    ComplexVector apply(const ComplexVector& psi) const { return entries_ * psi; }

    /// Action on a sampled function f(n), with f taken as the bra sum_n f(n)<n|.
    ///
    /// Returns (f^T M)^T, so the ladder Q (which raises |n> to |n+1>) sends
    /// f(n) to f(n+1) and the derivatives act as forward/backward differences.
    ComplexVector apply_to_function(const ComplexVector& f) const {
        return entries_.transpose() * f;
    }

    static double hermiticity_defect(const ComplexMatrix& m) {
        double worst = 0.0;
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i <= j; ++i)
                worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
        return worst;
    }

private:
    OperatorMatrix(ComplexMatrix m, bool hermitian) : entries_(std::move(m)), hermitian_(hermitian) {}

    static void require_square(const ComplexMatrix& m) {
        if (m.rows() != m.cols()) throw std::invalid_argument("operator matrix must be square");
    }

    ComplexMatrix entries_;
    bool hermitian_;
};

/// q|n> = n e |n>.
inline OperatorMatrix charge_operator(const ChargeLattice& lat) {
    RealVector diag(lat.size());
    for (Eigen::Index i = 0; i < lat.size(); ++i) diag(i) = lat.charge(i);
    return OperatorMatrix::hermitian(diag.cast<complex>().asDiagonal());
}

/// Raising shift Q|n> = |n+1>. Periodic lattices wrap |n_max> to |n_min>;
/// open lattices send |n_max> to zero.
inline OperatorMatrix ladder_operator(const ChargeLattice& lat) {
    const Eigen::Index n = lat.size();
    ComplexMatrix q = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) q(i + 1, i) = 1.0;
    if (lat.boundary() == Boundary::Periodic) q(0, n - 1) = 1.0;
    return OperatorMatrix::general(std::move(q));
}

/// (Q - 1)/e.
inline OperatorMatrix discrete_derivative_right(const ChargeLattice& lat) {
    const Eigen::Index n = lat.size();
    ComplexMatrix d = ladder_operator(lat).entries();
    d -= ComplexMatrix::Identity(n, n);
    d /= lat.e();
    return OperatorMatrix::general(std::move(d));
}

/// (1 - Q^dagger)/e.
inline OperatorMatrix discrete_derivative_left(const ChargeLattice& lat) {
    const Eigen::Index n = lat.size();
    ComplexMatrix d = ComplexMatrix::Identity(n, n) - ladder_operator(lat).entries().adjoint();
    d /= lat.e();
    return OperatorMatrix::general(std::move(d));
}

/// Truncated conductance eigenfunction: component exp(i n e G / beta)/sqrt(N) at charge n.
///
/// Uniform amplitudes on the finite lattice. Only on a periodic lattice with
/// e*G/beta on the grid 2*pi*k/N is this an exact eigenvector of the circuit
/// Hamiltonians; elsewhere it is approximate.
inline ComplexVector conductance_plane_wave(const ChargeLattice& lat, double G, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    const Eigen::Index n = lat.size();
    const double phase = lat.e() * G / beta;
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = std::polar(norm, static_cast<double>(lat.charge_index(i)) * phase);
    return v;
}

}  // namespace qcircuit
