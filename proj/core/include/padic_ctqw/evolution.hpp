#pragma once

// Time evolution driven by a finite Hermitian Hamiltonian.
//
// The Schrödinger flow i d/dt psi = H psi is evaluated through one real
// symmetric eigendecomposition H = Q Lambda Q^T, after which any time is a
// diagonal phase: e^{-itH} = Q e^{-it Lambda} Q^T.  Transition probabilities
// are the squared moduli of propagator entries, so every column sums to 1
// (unitarity) for every t.
//
// The dissipative counterpart runs u' = M u forward with e^{tau M} for a
// generator M whose off-diagonal entries are nonnegative.  Such semigroups
// preserve positivity; when the escape rates dominate the hopping rates the
// total mass is non-increasing, with equality in the balanced case.

#include <complex>

#include <Eigen/Core>

#include "padic_ctqw/function_space.hpp"
#include "padic_ctqw/operators.hpp"
#include "padic_ctqw/padic.hpp"

namespace ctqw {

// Eigensystem of a real symmetric Hamiltonian.  Eigenvalues ascend; each
// eigenvector's first component of magnitude > 1e-12 is made positive, so
// the decomposition of a given matrix is reproducible bit for bit.
class SpectralDecomposition {
public:
    SpectralDecomposition(SupportSet support, Eigen::VectorXd eigenvalues,
                          Eigen::MatrixXd eigenvectors);

    [[nodiscard]] const SupportSet& support() const noexcept { return support_; }
    [[nodiscard]] const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
    [[nodiscard]] const Eigen::MatrixXd& eigenvectors() const noexcept { return eigenvectors_; }

    // e^{-itH} = Q e^{-it Lambda} Q^T.
    [[nodiscard]] Eigen::MatrixXcd propagator(double t) const;

    // e^{-itH} v without forming the full propagator.
    [[nodiscard]] Eigen::VectorXcd apply(double t, const Eigen::VectorXcd& v) const;

private:
    SupportSet support_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

// Orthonormality defect ||Q^T Q - Id||_max <= 1e-10 and reconstruction
// defect ||Q Lambda Q^T - H||_max <= 1e-10 ||H||_max are enforced before the
// decomposition is returned.
[[nodiscard]] SpectralDecomposition spectral_decompose(const HermitianHamiltonian& h);

[[nodiscard]] TestFunction propagate(const SpectralDecomposition& decomposition,
                                     const TestFunction& psi0, double t);
[[nodiscard]] TestFunction propagate(const HermitianHamiltonian& h, const TestFunction& psi0,
                                     double t);

// Matrix of walk probabilities pi_{I,J}(t) = |<e_I| e^{-itH} |e_J>|^2; column
// J holds the distribution of a walk started in basis state J.
class TransitionMatrix {
public:
    TransitionMatrix(SupportSet support, double time, Eigen::MatrixXd probabilities);

    [[nodiscard]] const SupportSet& support() const noexcept { return support_; }
    [[nodiscard]] double time() const noexcept { return time_; }
    [[nodiscard]] const Eigen::MatrixXd& probabilities() const noexcept { return probabilities_; }

    // max_J |sum_I pi_{I,J} - 1|, the unitarity defect.
    [[nodiscard]] double column_sum_defect() const;

private:
    SupportSet support_;
    double time_;
    Eigen::MatrixXd probabilities_;
};

[[nodiscard]] TransitionMatrix transition_matrix(const SpectralDecomposition& decomposition,
                                                 double t);
[[nodiscard]] TransitionMatrix transition_matrix(const HermitianHamiltonian& h, double t);

// Ball-resolved measurement statistics of a fine state, coarse-grained to
// depth l.
struct BornDistribution {
    SupportSet support;
    Eigen::VectorXd probabilities;
};

// Sums |coefficient|^2 over the depth-r children of each depth-l parent.
// Requires a unit-norm state (within 1e-9) whose support tiles its parents
// completely; the output then sums to 1 up to the same defect.
[[nodiscard]] BornDistribution born_transitions(const TestFunction& psi, Level l);

// Generator of a positivity-preserving semigroup: off-diagonal entries must
// be >= -1e-12.  No sign constraint on the diagonal.
class HeatGenerator {
public:
    HeatGenerator(SupportSet support, Eigen::MatrixXd matrix);

    // amplitude - diag(escape row sums); the balanced case conserves mass.
    [[nodiscard]] static HeatGenerator from_biweights(const BiWeights& weights);

    // M = -H.  All three Hamiltonian constructions have nonpositive
    // off-diagonal entries, so their negatives qualify.
    [[nodiscard]] static HeatGenerator from_hamiltonian(const HermitianHamiltonian& h);

    [[nodiscard]] const SupportSet& support() const noexcept { return support_; }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

private:
    SupportSet support_;
    Eigen::MatrixXd matrix_;
};

// e^X by scaling and squaring with a truncated Taylor series: X/2^s is
// brought to max-norm <= 1/2, the series stops once the next term falls
// below 1e-16 of the running sum in max-norm (at most 200 terms), then the
// result is squared s times.
[[nodiscard]] Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& x);

// u(tau) = e^{tau M} u0 for tau >= 0 and entrywise nonnegative u0.
[[nodiscard]] Eigen::VectorXd heat_evolve(const HeatGenerator& generator,
                                          const Eigen::VectorXd& u0, double tau);

}  // namespace ctqw
