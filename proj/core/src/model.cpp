#include "padic_ctqw/model.hpp"

#include <stdexcept>
#include <utility>

namespace ctqw {

namespace {

Eigen::VectorXd resolve_potential(std::optional<Eigen::VectorXd> potential, std::size_t n) {
    if (!potential) return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    if (static_cast<std::size_t>(potential->size()) != n) {
        throw std::invalid_argument("potential has " + std::to_string(potential->size()) +
                                    " entries for a support of size " + std::to_string(n));
    }
    return *std::move(potential);
}

void require_positive_mass(double mass) {
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
}

template <typename M>
bool exact_equal(const M& a, const M& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

}  // namespace

ModelSpec::ModelSpec(SupportSet support, double mass, Eigen::VectorXd potential,
                     std::variant<AdjacencyMatrix, BiWeights, RadialProfile> payload)
    : support_(std::move(support)),
      mass_(mass),
      potential_(std::move(potential)),
      payload_(std::move(payload)) {}

ModelSpec ModelSpec::graph(AdjacencyMatrix adjacency, double mass,
                           std::optional<Eigen::VectorXd> potential) {
    require_positive_mass(mass);
    SupportSet support = adjacency.support();
    Eigen::VectorXd v = resolve_potential(std::move(potential), support.size());
    return ModelSpec(std::move(support), mass, std::move(v), std::move(adjacency));
}

ModelSpec ModelSpec::biweighted(BiWeights weights, double mass,
                                std::optional<Eigen::VectorXd> potential) {
    require_positive_mass(mass);
    SupportSet support = weights.support();
    Eigen::VectorXd v = resolve_potential(std::move(potential), support.size());
    return ModelSpec(std::move(support), mass, std::move(v), std::move(weights));
}

ModelSpec ModelSpec::convolution(RadialProfile profile, double mass,
                                 std::optional<Eigen::VectorXd> potential) {
    require_positive_mass(mass);
    SupportSet support = SupportSet::full(profile.level());
    Eigen::VectorXd v = resolve_potential(std::move(potential), support.size());
    return ModelSpec(std::move(support), mass, std::move(v), std::move(profile));
}

HamiltonianKind ModelSpec::kind() const noexcept {
    if (std::holds_alternative<AdjacencyMatrix>(payload_)) return HamiltonianKind::graph;
    if (std::holds_alternative<BiWeights>(payload_)) return HamiltonianKind::biweighted;
    return HamiltonianKind::convolution;
}

const AdjacencyMatrix& ModelSpec::adjacency() const {
    if (const auto* a = std::get_if<AdjacencyMatrix>(&payload_)) return *a;
    throw std::logic_error("model is not a graph model");
}

const BiWeights& ModelSpec::weights() const {
    if (const auto* w = std::get_if<BiWeights>(&payload_)) return *w;
    throw std::logic_error("model is not a biweighted model");
}

const RadialProfile& ModelSpec::profile() const {
    if (const auto* p = std::get_if<RadialProfile>(&payload_)) return *p;
    throw std::logic_error("model is not a convolution model");
}

bool operator==(const ModelSpec& a, const ModelSpec& b) {
    if (a.kind() != b.kind() || a.support_ != b.support_ || a.mass_ != b.mass_ ||
        !exact_equal(a.potential_, b.potential_)) {
        return false;
    }
    switch (a.kind()) {
        case HamiltonianKind::graph:
            return exact_equal(a.adjacency().entries(), b.adjacency().entries());
        case HamiltonianKind::biweighted:
            return exact_equal(a.weights().amplitude(), b.weights().amplitude()) &&
                   exact_equal(a.weights().escape(), b.weights().escape());
        case HamiltonianKind::convolution:
            return a.profile().shell_values() == b.profile().shell_values() &&
                   a.profile().deep_value() == b.profile().deep_value();
    }
    return false;
}

HermitianHamiltonian build_hamiltonian(const ModelSpec& spec) {
    switch (spec.kind()) {
        case HamiltonianKind::graph:
            return graph_hamiltonian(spec.adjacency(), spec.mass(), spec.potential());
        case HamiltonianKind::biweighted: {
            const BiWeights scaled(spec.support(), spec.mass() * spec.weights().amplitude(),
                                   spec.mass() * spec.weights().escape());
            Eigen::MatrixXd h = biweighted_hamiltonian(scaled).matrix();
            h.diagonal() += spec.potential();
            return HermitianHamiltonian(spec.support(), std::move(h),
                                        HamiltonianKind::biweighted);
        }
        case HamiltonianKind::convolution:
            return convolution_hamiltonian(spec.profile(), spec.mass(), spec.potential());
    }
    throw std::logic_error("unreachable model kind");
}

}  // namespace ctqw
