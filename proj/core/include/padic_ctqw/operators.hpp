#pragma once

// Finite Hermitian Hamiltonians for walks on dyadic ball partitions.
//
// Three constructions share one shape, H = -(hopping) + (diagonal):
//
//   graph        H = -m A + diag(m val(I) + V_I)  on an unweighted graph A,
//                where val(I) counts neighbours other than I itself,
//   biweighted   H = -A + diag(row sums of B)     for symmetric rate
//                matrices A (amplitude) and B (escape),
//   convolution  H = -m (C - Id) + diag(V)        for a radial jump profile,
//                C_{IK} = 2^-l j(valuation2(I, K)) acting on the full
//                partition.
//
// C is symmetric and row-stochastic whenever the profile satisfies the mass
// rule sum_v j_v 2^-(v+1) + j_deep 2^-l = 1: a depth-l residue has exactly
// 2^(l-v-1) partners at valuation v < l and one at valuation l (itself).

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "padic_ctqw/padic.hpp"

namespace ctqw {

enum class HamiltonianKind { graph, biweighted, convolution };

// Symmetric 0/1 hopping pattern over a support.  Self loops are allowed but
// do not move amplitude; they drop out of the Hamiltonian.
class AdjacencyMatrix {
public:
    AdjacencyMatrix(SupportSet support, Eigen::MatrixXi entries);

    [[nodiscard]] const SupportSet& support() const noexcept { return support_; }
    [[nodiscard]] const Eigen::MatrixXi& entries() const noexcept { return entries_; }

    // Row sum (self loop included).
    [[nodiscard]] int degree(std::size_t pos) const;
    // Neighbours other than the vertex itself.
    [[nodiscard]] int valence(std::size_t pos) const;

private:
    SupportSet support_;
    Eigen::MatrixXi entries_;
};

// Pair of symmetric nonnegative rate matrices on one support: `amplitude`
// feeds the off-diagonal part, `escape` the diagonal.  Equal matrices give
// the plain graph walk; amplitude <= escape entrywise is the dissipative
// (heat) regime.
class BiWeights {
public:
    BiWeights(SupportSet support, Eigen::MatrixXd amplitude, Eigen::MatrixXd escape);

    [[nodiscard]] const SupportSet& support() const noexcept { return support_; }
    [[nodiscard]] const Eigen::MatrixXd& amplitude() const noexcept { return amplitude_; }
    [[nodiscard]] const Eigen::MatrixXd& escape() const noexcept { return escape_; }

    [[nodiscard]] Eigen::VectorXd amplitude_row_sums() const { return amplitude_.rowwise().sum(); }
    [[nodiscard]] Eigen::VectorXd escape_row_sums() const { return escape_.rowwise().sum(); }

private:
    SupportSet support_;
    Eigen::MatrixXd amplitude_;
    Eigen::MatrixXd escape_;
};

// Radial jump density at depth l: one nonnegative value per shell
// valuation v = 0 .. l-1 plus one value shared by everything deeper.
// Construction enforces the unit-mass rule within 1e-12.
class RadialProfile {
public:
    RadialProfile(Level level, std::vector<double> shell_values, double deep_value);

    [[nodiscard]] Level level() const noexcept { return level_; }
    [[nodiscard]] const std::vector<double>& shell_values() const noexcept { return shells_; }
    [[nodiscard]] double deep_value() const noexcept { return deep_; }

    // j_v for v < level, the deep value from v = level on.
    [[nodiscard]] double value_at_valuation(int v) const;

    // sum_v j_v 2^-(v+1) + deep * 2^-l; equals 1 within 1e-12 by construction.
    [[nodiscard]] double mass() const;

    // Same density expressed at depth r >= level: shells extend with the
    // deep value, which stays the tail.
    [[nodiscard]] RadialProfile refined(Level r) const;

private:
    Level level_;
    std::vector<double> shells_;
    double deep_;
};

// Real symmetric Hamiltonian over a support, tagged with the construction it
// came from.  Construction rejects matrices whose symmetry defect exceeds
// 1e-12.
class HermitianHamiltonian {
public:
    HermitianHamiltonian(SupportSet support, Eigen::MatrixXd matrix, HamiltonianKind kind);

    [[nodiscard]] const SupportSet& support() const noexcept { return support_; }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
    [[nodiscard]] HamiltonianKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t dim() const noexcept { return support_.size(); }

private:
    SupportSet support_;
    Eigen::MatrixXd matrix_;
    HamiltonianKind kind_;
};

// max |M_IK - M_KI| over all pairs; 0 for non-square input is not defined,
// non-square input throws.
[[nodiscard]] double hermiticity_defect(const Eigen::MatrixXd& matrix);
[[nodiscard]] double hermiticity_defect(const HermitianHamiltonian& h);

// H = -m A + diag(m val(I) + V_I).  Requires m > 0 and V sized like the
// support.
[[nodiscard]] HermitianHamiltonian graph_hamiltonian(const AdjacencyMatrix& adjacency,
                                                     double mass,
                                                     const Eigen::VectorXd& potential);

// H = -amplitude + diag(escape row sums).  With amplitude = escape = m A this
// reduces to graph_hamiltonian(A, m, 0) exactly.
[[nodiscard]] HermitianHamiltonian biweighted_hamiltonian(const BiWeights& weights);

// Row-stochastic jump matrix C of a radial profile on the full partition.
[[nodiscard]] Eigen::MatrixXd convolution_matrix(const RadialProfile& profile);

// H = -m (C - Id) + diag(V) on the full depth-l partition.  The hopping part
// satisfies ||-m (C - Id)||_2 <= 2m.
[[nodiscard]] HermitianHamiltonian convolution_hamiltonian(const RadialProfile& profile,
                                                           double mass,
                                                           const Eigen::VectorXd& potential);

// Ball-pair discretization of a general jump kernel: W_IK = 2^-l * average
// of the kernel over the ball pair, the average being supplied by the
// callback.  With `symmetric` set, a symmetry defect above 1e-12 throws.
[[nodiscard]] Eigen::MatrixXd discretize_kernel(
    const std::function<double(const BallIndex&, const BallIndex&)>& pair_average,
    const SupportSet& support,
    bool symmetric);

// Pointwise value of the order-alpha fractional derivative of the unit-ball
// indicator, as a function of |x|_2 (which must be a positive power of two).
// With c = (1 - 2^alpha)/(1 - 2^(-alpha-1)) the value is the constant
// -c * 2^(-alpha-1)/(1 - 2^-alpha) on the ball and the tail c |x|^-(alpha+1)
// outside; alpha = 1 gives 2/3 inside and -(4/3)|x|^-2 outside.
[[nodiscard]] double vladimirov_indicator(double alpha, double x_norm);

}  // namespace ctqw
