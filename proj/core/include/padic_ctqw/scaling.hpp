#pragma once

// Refinement of a model to finer partitions and the associated limit study.
//
// A depth-l model induces a Hamiltonian on every depth r >= l: the kernel is
// constant on depth-l ball pairs, so each off-diagonal block of the fine
// matrix repeats the coarse entry scaled by the fine ball measure ratio
// 2^(l-r), while the diagonal (escape rates plus potential) only depends on
// the depth-l parent.  Built this way, the fine flow commutes with the
// embedding: e^{-it H^(r)} embed(psi) = embed(e^{-it H^(l)} psi), so the
// family has a common strong limit and refining changes nothing for states
// that are already locally constant at depth l.  What refinement does add is
// resolution: the study below tracks how much of a given fine state survives
// averaging to each intermediate depth.

#include <complex>
#include <functional>
#include <vector>

#include "padic_ctqw/function_space.hpp"
#include "padic_ctqw/model.hpp"
#include "padic_ctqw/operators.hpp"
#include "padic_ctqw/padic.hpp"

namespace ctqw {

// Depth-r Hamiltonian induced by a depth-l model, r >= l.  At r = l this is
// exactly build_hamiltonian(spec).
[[nodiscard]] HermitianHamiltonian refine_hamiltonian(const ModelSpec& spec, Level r);

// One row per requested depth r: how far the walk started from the averaged
// state P_r psi0 deviates between the finest Hamiltonian and the depth-r
// one, and how much of psi0 the averaging discards.
struct RefinementReport {
    int coarse_level = 0;                      // model depth l
    double time = 0.0;
    std::vector<int> fine_levels;              // ascending, first >= l
    std::vector<double> deviations;            // || e^{-itH} P_r psi0 - e^{-itH^(r)} P_r psi0 ||_2
    std::vector<double> projection_residuals;  // || psi0 - embed(P_r psi0) ||_2
};

// Runs the walk at every depth in fine_levels against the depth-max(fine_levels)
// reference.  psi0 lives at some depth <= max(fine_levels) on a support
// refining the model support; fine_levels must be ascending and start at or
// above the model level.
[[nodiscard]] RefinementReport convergence_study(const ModelSpec& spec, const TestFunction& psi0,
                                                 double t, const std::vector<int>& fine_levels);

// Same, with psi0 sampled pointwise on the finest partition and normalized.
[[nodiscard]] RefinementReport convergence_study(
    const ModelSpec& spec,
    const std::function<std::complex<double>(const BallIndex&)>& sampler, double t,
    const std::vector<int>& fine_levels);

}  // namespace ctqw
