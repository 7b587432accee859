#include "padic_ctqw/scaling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "padic_ctqw/evolution.hpp"

namespace ctqw {

namespace {

// Coarse support position of each fine support position.
std::vector<std::size_t> parent_positions(const SupportSet& fine, const SupportSet& coarse) {
    std::vector<std::size_t> map(fine.size());
    for (std::size_t p = 0; p < fine.size(); ++p) {
        const std::uint32_t parent = coarse_parent(fine.values()[p], coarse.level());
        const auto q = coarse.position(parent);
        if (!q) {
            throw std::invalid_argument("fine support is not a refinement of the model support");
        }
        map[p] = *q;
    }
    return map;
}

// Off-diagonal kernel block of the coarse model, i.e. the coarse matrix with
// its diagonal construction stripped: -m A for graph, -m amplitude for
// biweighted, -m C off the diagonal for convolution.  diag holds the
// depth-independent diagonal (escape rates plus potential).
struct CoarseParts {
    Eigen::MatrixXd hopping;  // symmetric, zero diagonal contribution excluded
    Eigen::VectorXd diagonal;
};

CoarseParts coarse_parts(const ModelSpec& spec) {
    const auto n = static_cast<Eigen::Index>(spec.support().size());
    CoarseParts parts;
    parts.hopping = Eigen::MatrixXd::Zero(n, n);
    parts.diagonal = Eigen::VectorXd::Zero(n);
    switch (spec.kind()) {
        case HamiltonianKind::graph: {
            parts.hopping = -spec.mass() * spec.adjacency().entries().cast<double>();
            for (std::size_t i = 0; i < spec.support().size(); ++i) {
                parts.diagonal[static_cast<Eigen::Index>(i)] =
                    spec.mass() * spec.adjacency().degree(i);
            }
            break;
        }
        case HamiltonianKind::biweighted: {
            parts.hopping = -spec.mass() * spec.weights().amplitude();
            parts.diagonal = spec.mass() * spec.weights().escape_row_sums();
            break;
        }
        case HamiltonianKind::convolution: {
            parts.hopping = -spec.mass() * convolution_matrix(spec.profile());
            parts.diagonal.setConstant(spec.mass());
            break;
        }
    }
    parts.diagonal += spec.potential();
    return parts;
}

}  // namespace

HermitianHamiltonian refine_hamiltonian(const ModelSpec& spec, Level r) {
    const Level l = spec.level();
    if (r < l) {
        throw std::invalid_argument("refine_hamiltonian: target level below the model level");
    }
    if (r == l) return build_hamiltonian(spec);

    if (spec.kind() == HamiltonianKind::convolution) {
        // The radial density refines directly; rebuilding from it keeps the
        // row-stochastic structure exact.
        Eigen::VectorXd fine_potential(static_cast<Eigen::Index>(Level(r).dim()));
        const SupportSet fine = SupportSet::full(r);
        for (std::size_t p = 0; p < fine.size(); ++p) {
            const std::uint32_t parent = coarse_parent(fine.values()[p], l);
            fine_potential[static_cast<Eigen::Index>(p)] =
                spec.potential()[static_cast<Eigen::Index>(*spec.support().position(parent))];
        }
        return convolution_hamiltonian(spec.profile().refined(r), spec.mass(), fine_potential);
    }

    const CoarseParts parts = coarse_parts(spec);
    const SupportSet fine = spec.support().refined(r);
    const std::vector<std::size_t> parent = parent_positions(fine, spec.support());
    const double block_scale = std::ldexp(1.0, l.value() - r.value());

    const auto n = static_cast<Eigen::Index>(fine.size());
    Eigen::MatrixXd h(n, n);
    for (Eigen::Index p = 0; p < n; ++p) {
        const auto ip = static_cast<Eigen::Index>(parent[static_cast<std::size_t>(p)]);
        for (Eigen::Index q = 0; q < n; ++q) {
            const auto iq = static_cast<Eigen::Index>(parent[static_cast<std::size_t>(q)]);
            h(p, q) = block_scale * parts.hopping(ip, iq);
        }
        h(p, p) += parts.diagonal(ip);
    }
    return HermitianHamiltonian(fine, std::move(h), spec.kind());
}

RefinementReport convergence_study(const ModelSpec& spec, const TestFunction& psi0, double t,
                                   const std::vector<int>& fine_levels) {
    if (fine_levels.empty()) {
        throw std::invalid_argument("convergence_study: no fine levels requested");
    }
    for (std::size_t i = 0; i < fine_levels.size(); ++i) {
        if (fine_levels[i] < spec.level().value()) {
            throw std::invalid_argument("convergence_study: fine level below the model level");
        }
        if (i > 0 && fine_levels[i] <= fine_levels[i - 1]) {
            throw std::invalid_argument("convergence_study: fine levels must ascend strictly");
        }
    }
    const Level top(fine_levels.back());
    if (top < psi0.level()) {
        throw std::invalid_argument("convergence_study: psi0 lives deeper than the finest level");
    }

    const TestFunction psi_top = embed(psi0, top);
    if (psi_top.support() != spec.support().refined(top)) {
        throw std::invalid_argument(
            "convergence_study: psi0 support does not refine the model support");
    }
    const SpectralDecomposition reference = spectral_decompose(refine_hamiltonian(spec, top));

    RefinementReport report;
    report.coarse_level = spec.level().value();
    report.time = t;
    report.fine_levels = fine_levels;
    report.deviations.reserve(fine_levels.size());
    report.projection_residuals.reserve(fine_levels.size());

    for (const int r_value : fine_levels) {
        const Level r(r_value);
        const TestFunction averaged = project_average(psi_top, r);
        const TestFunction averaged_top = embed(averaged, top);

        report.projection_residuals.push_back(
            (psi_top.coefficients() - averaged_top.coefficients()).norm());

        const TestFunction via_reference = propagate(reference, averaged_top, t);
        const TestFunction via_depth_r =
            embed(propagate(refine_hamiltonian(spec, r), averaged, t), top);
        report.deviations.push_back(
            (via_reference.coefficients() - via_depth_r.coefficients()).norm());
    }
    return report;
}

RefinementReport convergence_study(
    const ModelSpec& spec, const std::function<std::complex<double>(const BallIndex&)>& sampler,
    double t, const std::vector<int>& fine_levels) {
    if (fine_levels.empty()) {
        throw std::invalid_argument("convergence_study: no fine levels requested");
    }
    const Level top(fine_levels.back());
    TestFunction psi0 = TestFunction::from_sampler(spec.support().refined(top), sampler);
    const double norm = psi0.norm();
    if (norm <= 0.0) {
        throw std::invalid_argument("convergence_study: sampled state is zero");
    }
    psi0 = TestFunction(psi0.support(), psi0.coefficients() / norm);
    return convergence_study(spec, psi0, t, fine_levels);
}

}  // namespace ctqw
