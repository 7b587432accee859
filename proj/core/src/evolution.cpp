#include "padic_ctqw/evolution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace ctqw {

namespace {

constexpr double kOrthonormalityTolerance = 1e-10;
constexpr double kReconstructionTolerance = 1e-10;
constexpr double kSignPivotThreshold = 1e-12;
constexpr double kMetzlerTolerance = 1e-12;
constexpr double kBornNormTolerance = 1e-9;

}  // namespace

SpectralDecomposition::SpectralDecomposition(SupportSet support, Eigen::VectorXd eigenvalues,
                                             Eigen::MatrixXd eigenvectors)
    : support_(std::move(support)),
      eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)) {
    const auto n = static_cast<Eigen::Index>(support_.size());
    if (eigenvalues_.size() != n || eigenvectors_.rows() != n || eigenvectors_.cols() != n) {
        throw std::invalid_argument("spectral decomposition dimensions do not match the support");
    }
}

namespace {

Eigen::VectorXcd unit_phases(const Eigen::VectorXd& eigenvalues, double t) {
    Eigen::VectorXcd phases(eigenvalues.size());
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        phases[i] = std::polar(1.0, -t * eigenvalues[i]);
    }
    return phases;
}

}  // namespace

Eigen::MatrixXcd SpectralDecomposition::propagator(double t) const {
    const Eigen::VectorXcd phases = unit_phases(eigenvalues_, t);
    return eigenvectors_.cast<std::complex<double>>() * phases.asDiagonal() *
           eigenvectors_.transpose().cast<std::complex<double>>();
}

Eigen::VectorXcd SpectralDecomposition::apply(double t, const Eigen::VectorXcd& v) const {
    if (v.size() != eigenvalues_.size()) {
        throw std::invalid_argument("SpectralDecomposition::apply: vector size mismatch");
    }
    const Eigen::VectorXcd phases = unit_phases(eigenvalues_, t);
    const Eigen::VectorXcd modal = eigenvectors_.transpose().cast<std::complex<double>>() * v;
    return eigenvectors_.cast<std::complex<double>>() * phases.cwiseProduct(modal);
}

SpectralDecomposition spectral_decompose(const HermitianHamiltonian& h) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("spectral_decompose: eigensolver failed to converge on a " +
                                 std::to_string(h.dim()) + "x" + std::to_string(h.dim()) +
                                 " matrix with max-norm " +
                                 std::to_string(h.matrix().cwiseAbs().maxCoeff()));
    }
    Eigen::VectorXd values = solver.eigenvalues();
    Eigen::MatrixXd vectors = solver.eigenvectors();

    // Fix the per-column sign so repeated runs agree bit for bit.
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
            const double q = vectors(i, j);
            if (std::abs(q) > kSignPivotThreshold) {
                if (q < 0.0) vectors.col(j) = -vectors.col(j);
                break;
            }
        }
    }

    const auto n = vectors.rows();
    const double ortho_defect =
        (vectors.transpose() * vectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (ortho_defect > kOrthonormalityTolerance) {
        throw std::runtime_error("spectral_decompose: orthonormality defect " +
                                 std::to_string(ortho_defect) + " exceeds 1e-10");
    }
    const double scale = std::max(h.matrix().cwiseAbs().maxCoeff(), 1.0);
    const double recon_defect =
        (vectors * values.asDiagonal() * vectors.transpose() - h.matrix()).cwiseAbs().maxCoeff();
    if (recon_defect > kReconstructionTolerance * scale) {
        throw std::runtime_error("spectral_decompose: reconstruction defect " +
                                 std::to_string(recon_defect) + " exceeds tolerance");
    }
    return SpectralDecomposition(h.support(), std::move(values), std::move(vectors));
}

TestFunction propagate(const SpectralDecomposition& decomposition, const TestFunction& psi0,
                       double t) {
    if (psi0.support() != decomposition.support()) {
        throw std::invalid_argument("propagate: state support does not match the Hamiltonian");
    }
    return TestFunction(psi0.support(), decomposition.apply(t, psi0.coefficients()));
}

TestFunction propagate(const HermitianHamiltonian& h, const TestFunction& psi0, double t) {
    return propagate(spectral_decompose(h), psi0, t);
}

TransitionMatrix::TransitionMatrix(SupportSet support, double time, Eigen::MatrixXd probabilities)
    : support_(std::move(support)), time_(time), probabilities_(std::move(probabilities)) {
    const auto n = static_cast<Eigen::Index>(support_.size());
    if (probabilities_.rows() != n || probabilities_.cols() != n) {
        throw std::invalid_argument("transition matrix dimensions do not match the support");
    }
}

double TransitionMatrix::column_sum_defect() const {
    return (probabilities_.colwise().sum().array() - 1.0).abs().maxCoeff();
}

TransitionMatrix transition_matrix(const SpectralDecomposition& decomposition, double t) {
    return TransitionMatrix(decomposition.support(), t, decomposition.propagator(t).cwiseAbs2());
}

TransitionMatrix transition_matrix(const HermitianHamiltonian& h, double t) {
    return transition_matrix(spectral_decompose(h), t);
}

BornDistribution born_transitions(const TestFunction& psi, Level l) {
    if (l > psi.level()) {
        throw std::invalid_argument("born_transitions: coarse level exceeds the state level");
    }
    const double norm_defect = std::abs(psi.norm() - 1.0);
    if (norm_defect > kBornNormTolerance) {
        throw std::invalid_argument("born_transitions: state norm deviates from 1 by " +
                                    std::to_string(norm_defect));
    }
    const SupportSet coarse = psi.support().coarsened(l);
    if (coarse.refined(psi.level()) != psi.support()) {
        throw std::invalid_argument(
            "born_transitions: state support does not tile its depth-" +
            std::to_string(l.value()) + " parents");
    }
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(coarse.size()));
    for (std::size_t p = 0; p < psi.support().size(); ++p) {
        const std::uint32_t parent = coarse_parent(psi.support().values()[p], l);
        const auto q = coarse.position(parent);
        probs[static_cast<Eigen::Index>(*q)] +=
            std::norm(psi.coefficients()[static_cast<Eigen::Index>(p)]);
    }
    return BornDistribution{coarse, std::move(probs)};
}

HeatGenerator::HeatGenerator(SupportSet support, Eigen::MatrixXd matrix)
    : support_(std::move(support)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() ||
        static_cast<std::size_t>(matrix_.rows()) != support_.size()) {
        throw std::invalid_argument("heat generator dimensions do not match the support");
    }
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
        for (Eigen::Index k = 0; k < matrix_.cols(); ++k) {
            if (i != k && matrix_(i, k) < -kMetzlerTolerance) {
                throw std::invalid_argument(
                    "heat generator has a negative off-diagonal entry at (" + std::to_string(i) +
                    ", " + std::to_string(k) + "): " + std::to_string(matrix_(i, k)));
            }
        }
    }
}

HeatGenerator HeatGenerator::from_biweights(const BiWeights& weights) {
    Eigen::MatrixXd m = weights.amplitude();
    m.diagonal() -= weights.escape_row_sums();
    return HeatGenerator(weights.support(), std::move(m));
}

HeatGenerator HeatGenerator::from_hamiltonian(const HermitianHamiltonian& h) {
    return HeatGenerator(h.support(), -h.matrix());
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& x) {
    if (x.rows() != x.cols()) {
        throw std::invalid_argument("matrix_exponential: matrix is not square");
    }
    const auto n = x.rows();
    const double norm = x.cwiseAbs().maxCoeff();

    int squarings = 0;
    while (std::ldexp(norm, -squarings) > 0.5) ++squarings;
    const Eigen::MatrixXd scaled = x / std::ldexp(1.0, squarings);

    Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= 200; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-16 * sum.cwiseAbs().maxCoeff()) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

Eigen::VectorXd heat_evolve(const HeatGenerator& generator, const Eigen::VectorXd& u0,
                            double tau) {
    if (static_cast<std::size_t>(u0.size()) != generator.support().size()) {
        throw std::invalid_argument("heat_evolve: initial vector size does not match the support");
    }
    if (!(tau >= 0.0)) {
        throw std::invalid_argument("heat_evolve: time must be nonnegative");
    }
    if (u0.size() > 0 && u0.minCoeff() < 0.0) {
        throw std::invalid_argument("heat_evolve: initial vector must be entrywise nonnegative");
    }
    return matrix_exponential(tau * generator.matrix()) * u0;
}

}  // namespace ctqw
