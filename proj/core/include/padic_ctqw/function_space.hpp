#pragma once

// Finite-dimensional test-function spaces over the dyadic partition.
//
// A depth-l test function is a locally constant function on the unit ball
// with step 2^-l, expanded in the orthonormal basis of scaled ball
// indicators e_I = 2^(l/2) * 1_{ball I}.  The coefficient vector therefore
// identifies the space with C^n (n = support size) isometrically: the L^2
// inner product is the plain Hermitian dot product of coefficients.
//
// Two maps connect depths.  embed() rewrites a coarse function on a finer
// partition without changing it as a function (each coefficient spreads to
// the 2^(r-l) children, scaled by 2^((l-r)/2) to keep the basis orthonormal).
// project_average() replaces a fine function by its ball averages on the
// coarser partition; it is the adjoint of embed() and an L^2 contraction,
// and project_average(embed(f)) recovers f exactly.

#include <complex>
#include <functional>

#include <Eigen/Core>

#include "padic_ctqw/padic.hpp"

namespace ctqw {

class TestFunction {
public:
    // Coefficients are listed in the ascending residue order of the support.
    TestFunction(SupportSet support, Eigen::VectorXcd coefficients);

    // Basis function e_I for the given residue; throws if absent from support.
    [[nodiscard]] static TestFunction basis_state(const SupportSet& support, std::uint32_t value);

    // Builds the function taking the given pointwise value on each ball,
    // i.e. coefficient = value * 2^(-l/2).
    [[nodiscard]] static TestFunction from_ball_values(const SupportSet& support,
                                                       const Eigen::VectorXcd& values);

    // Samples a pointwise value per ball from a callback.
    [[nodiscard]] static TestFunction from_sampler(
        const SupportSet& support,
        const std::function<std::complex<double>(const BallIndex&)>& sampler);

    [[nodiscard]] const SupportSet& support() const noexcept { return support_; }
    [[nodiscard]] Level level() const noexcept { return support_.level(); }
    [[nodiscard]] const Eigen::VectorXcd& coefficients() const noexcept { return coefficients_; }

    // Pointwise value on the ball at the given support position.
    [[nodiscard]] std::complex<double> ball_value(std::size_t pos) const;

    [[nodiscard]] double norm() const { return coefficients_.norm(); }       // L^2
    [[nodiscard]] double sup_norm() const;                                   // L^inf
    [[nodiscard]] double l1_norm() const;                                    // L^1

private:
    SupportSet support_;
    Eigen::VectorXcd coefficients_;
};

// L^2 pairing <f, g> = sum_I f_I conj(g_I).  Supports must match exactly.
[[nodiscard]] std::complex<double> inner_product(const TestFunction& f, const TestFunction& g);

// Ball-average coarsening to depth l <= f.level().  The result lives on the
// distinct depth-l parents of f's support; f is treated as zero outside its
// support.
[[nodiscard]] TestFunction project_average(const TestFunction& f, Level l);

// Isometric rewrite of f on the depth-r refinement of its support, r >= f.level().
[[nodiscard]] TestFunction embed(const TestFunction& f, Level r);

}  // namespace ctqw
