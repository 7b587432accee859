#pragma once

// Reference implementations used only by tests.  Each one recomputes a
// quantity along a deliberately different route from the library so that
// agreement is evidence, not tautology.

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace oracles {

// Trailing zero bits by repeated division; v must be nonzero.
inline int trailing_zeros(std::uint32_t v) {
    int count = 0;
    while (v % 2 == 0) {
        v /= 2;
        ++count;
    }
    return count;
}

// Matrix exponential by plain Taylor summation with fixed term count after
// scaling the argument below norm 1/4; independent of the spectral route.
inline Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& m, int terms = 60) {
    const auto n = m.rows();
    double norm = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        norm = std::max(norm, m.row(i).cwiseAbs().sum());
    }
    int halvings = 0;
    while (std::ldexp(norm, -halvings) > 0.25) ++halvings;
    const Eigen::MatrixXcd scaled = m / std::ldexp(1.0, halvings);

    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 1; k <= terms; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < halvings; ++s) sum = sum * sum;
    return sum;
}

// Schrödinger propagator e^{-itH} through the Taylor oracle.
inline Eigen::MatrixXcd propagator_taylor(const Eigen::MatrixXd& h, double t) {
    return expm_taylor(std::complex<double>(0.0, -t) * h.cast<std::complex<double>>());
}

// Tail of the fractional-derivative constant as an explicit shell sum:
// integrating |y|^(-alpha-1) over 1 < |y| <= 2^shells shell by shell, each
// shell |y| = 2^k carrying measure 2^(k-1).
inline double tail_shell_sum(double alpha, int shells) {
    double sum = 0.0;
    for (int k = 1; k <= shells; ++k) {
        const double radius = std::ldexp(1.0, k);
        const double measure = std::ldexp(1.0, k - 1);
        sum += measure * std::pow(radius, -alpha - 1.0);
    }
    return sum;
}

// Value of the order-alpha fractional derivative of the unit-ball indicator
// from the defining integral c * int (Omega(x - y) - Omega(x)) |y|^(-alpha-1) dy,
// evaluated shell by shell instead of through closed forms.
inline double indicator_derivative_shells(double alpha, double x_norm, int shells = 60) {
    const double c = (1.0 - std::pow(2.0, alpha)) / (1.0 - std::pow(2.0, -alpha - 1.0));
    if (x_norm <= 1.0) {
        // Inside the ball the difference is -1 exactly on |y| > 1 (where
        // |x - y| = |y|) and 0 on the ball itself.
        return -c * tail_shell_sum(alpha, shells);
    }
    // Outside, Omega(x) = 0 and Omega(x - y) = 1 exactly on the set
    // |y - x| <= 1, which has measure 1 and constant |y| = |x| on it.
    return c * std::pow(x_norm, -alpha - 1.0);
}

}  // namespace oracles
