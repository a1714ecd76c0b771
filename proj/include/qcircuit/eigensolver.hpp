#pragma once

// Dense Hermitian eigenproblem used by both circuit models.

#include "qcircuit/charge_lattice.hpp"

#include <Eigen/Eigenvalues>

#include <optional>
#include <stdexcept>

namespace qcircuit {

/// Ascending eigenvalues, optionally with orthonormal eigenvectors in matching columns.
struct Spectrum {
    RealVector eigenvalues;
    std::optional<ComplexMatrix> eigenvectors;
};

namespace detail {

// Makes the largest-magnitude component of each column real and positive.
// Ties go to the lowest row index.
inline void fix_eigenvector_phases(ComplexMatrix& vectors) {
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
            const double mag = std::abs(vectors(i, j));
            if (mag > best * (1.0 + 1e-12)) {
                best = mag;
                pivot = i;
            }
        }
        const complex z = vectors(pivot, j);
        if (std::abs(z) > 0.0) vectors.col(j) *= std::conj(z) / std::abs(z);
        vectors(pivot, j) = std::abs(vectors(pivot, j));
    }
}

inline bool is_real_valued(const ComplexMatrix& m) {
    return (m.imag().array() == 0.0).all();
}

}  // namespace detail

/// Full spectrum of a Hermitian operator.
///
/// Real symmetric inputs (all imaginary parts exactly zero) go through the
/// real solver, which is about four times cheaper at large N.
inline Spectrum hermitian_eigen(const OperatorMatrix& m, bool want_vectors = false) {
    if (!m.is_hermitian()) throw std::invalid_argument("hermitian_eigen: operator is not flagged Hermitian");
    if (m.dim() == 0) throw std::invalid_argument("hermitian_eigen: empty operator");

    const int options = want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    Spectrum out;
    if (detail::is_real_valued(m.entries())) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries().real(), options);
        if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigen: no convergence");
        out.eigenvalues = solver.eigenvalues();
        if (want_vectors) out.eigenvectors = solver.eigenvectors().cast<complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.entries(), options);
        if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eigen: no convergence");
        out.eigenvalues = solver.eigenvalues();
        if (want_vectors) out.eigenvectors = solver.eigenvectors();
    }
    if (out.eigenvectors) detail::fix_eigenvector_phases(*out.eigenvectors);
    return out;
}

}  // namespace qcircuit
