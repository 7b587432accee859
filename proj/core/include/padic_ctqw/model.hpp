#pragma once

// Validated model descriptions.
//
// A ModelSpec bundles everything needed to build a Hamiltonian: the kind of
// construction, the payload for that kind (adjacency pattern, rate matrix
// pair, or radial profile), a mass and a potential.  The factory functions
// are the only way to make one, so a ModelSpec in hand is always coherent:
// payload dimensions match the support, convolution models live on the full
// partition, the potential has one entry per ball.

#include <optional>
#include <variant>

#include <Eigen/Core>

#include "padic_ctqw/operators.hpp"
#include "padic_ctqw/padic.hpp"

namespace ctqw {

class ModelSpec {
public:
    // Potential defaults to zeros; mass must be positive.
    [[nodiscard]] static ModelSpec graph(AdjacencyMatrix adjacency, double mass = 1.0,
                                         std::optional<Eigen::VectorXd> potential = std::nullopt);
    // Mass scales both rate matrices.
    [[nodiscard]] static ModelSpec biweighted(BiWeights weights, double mass = 1.0,
                                              std::optional<Eigen::VectorXd> potential = std::nullopt);
    [[nodiscard]] static ModelSpec convolution(RadialProfile profile, double mass = 1.0,
                                               std::optional<Eigen::VectorXd> potential = std::nullopt);

    [[nodiscard]] HamiltonianKind kind() const noexcept;
    [[nodiscard]] Level level() const noexcept { return support_.level(); }
    [[nodiscard]] const SupportSet& support() const noexcept { return support_; }
    [[nodiscard]] double mass() const noexcept { return mass_; }
    [[nodiscard]] const Eigen::VectorXd& potential() const noexcept { return potential_; }

    // Kind-specific payload access; throws on kind mismatch.
    [[nodiscard]] const AdjacencyMatrix& adjacency() const;
    [[nodiscard]] const BiWeights& weights() const;
    [[nodiscard]] const RadialProfile& profile() const;

    friend bool operator==(const ModelSpec& a, const ModelSpec& b);

private:
    ModelSpec(SupportSet support, double mass, Eigen::VectorXd potential,
              std::variant<AdjacencyMatrix, BiWeights, RadialProfile> payload);

    SupportSet support_;
    double mass_;
    Eigen::VectorXd potential_;
    std::variant<AdjacencyMatrix, BiWeights, RadialProfile> payload_;
};

// Hamiltonian of the model at its own level:
//   graph        -m A + diag(m val + V)
//   biweighted   m (-amplitude + diag(escape row sums)) + diag(V)
//   convolution  -m (C - Id) + diag(V)
[[nodiscard]] HermitianHamiltonian build_hamiltonian(const ModelSpec& spec);

}  // namespace ctqw
