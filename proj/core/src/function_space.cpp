#include "padic_ctqw/function_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctqw {

namespace {

// 2^(e/2), exact for even e and correctly rounded otherwise.
double half_power_of_two(int e) {
    return std::sqrt(std::ldexp(1.0, e));
}

}  // namespace

TestFunction::TestFunction(SupportSet support, Eigen::VectorXcd coefficients)
    : support_(std::move(support)), coefficients_(std::move(coefficients)) {
    if (static_cast<std::size_t>(coefficients_.size()) != support_.size()) {
        throw std::invalid_argument("test function has " + std::to_string(coefficients_.size()) +
                                    " coefficients for a support of size " +
                                    std::to_string(support_.size()));
    }
}

TestFunction TestFunction::basis_state(const SupportSet& support, std::uint32_t value) {
    const auto pos = support.position(value);
    if (!pos) {
        throw std::invalid_argument("basis_state: residue " + std::to_string(value) +
                                    " is not in the support");
    }
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(support.size()));
    c[static_cast<Eigen::Index>(*pos)] = 1.0;
    return TestFunction(support, std::move(c));
}

TestFunction TestFunction::from_ball_values(const SupportSet& support,
                                            const Eigen::VectorXcd& values) {
    if (static_cast<std::size_t>(values.size()) != support.size()) {
        throw std::invalid_argument("from_ball_values: size mismatch with support");
    }
    const double scale = half_power_of_two(-support.level().value());
    return TestFunction(support, values * scale);
}

TestFunction TestFunction::from_sampler(
    const SupportSet& support,
    const std::function<std::complex<double>(const BallIndex&)>& sampler) {
    Eigen::VectorXcd values(static_cast<Eigen::Index>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i) {
        values[static_cast<Eigen::Index>(i)] = sampler(support.at(i));
    }
    return from_ball_values(support, values);
}

std::complex<double> TestFunction::ball_value(std::size_t pos) const {
    if (pos >= support_.size()) {
        throw std::out_of_range("ball_value: position out of range");
    }
    return coefficients_[static_cast<Eigen::Index>(pos)] *
           half_power_of_two(support_.level().value());
}

double TestFunction::sup_norm() const {
    const double peak = coefficients_.cwiseAbs().maxCoeff();
    return peak * half_power_of_two(support_.level().value());
}

double TestFunction::l1_norm() const {
    const double total = coefficients_.cwiseAbs().sum();
    return total * half_power_of_two(-support_.level().value());
}

std::complex<double> inner_product(const TestFunction& f, const TestFunction& g) {
    if (f.support() != g.support()) {
        throw std::invalid_argument("inner_product: supports differ");
    }
    return g.coefficients().dot(f.coefficients());
}

TestFunction project_average(const TestFunction& f, Level l) {
    const Level r = f.level();
    if (r < l) {
        throw std::invalid_argument("project_average: target level exceeds the function level");
    }
    const SupportSet coarse = f.support().coarsened(l);
    Eigen::VectorXcd sums = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(coarse.size()));
    for (std::size_t p = 0; p < f.support().size(); ++p) {
        const std::uint32_t parent = coarse_parent(f.support().values()[p], l);
        const auto q = coarse.position(parent);
        sums[static_cast<Eigen::Index>(*q)] += f.coefficients()[static_cast<Eigen::Index>(p)];
    }
    // Aver(f, ball I) in coefficient form: 2^((l-r)/2) * sum over children.
    sums *= half_power_of_two(l.value() - r.value());
    return TestFunction(coarse, std::move(sums));
}

TestFunction embed(const TestFunction& f, Level r) {
    const Level l = f.level();
    if (r < l) {
        throw std::invalid_argument("embed: target level below the function level");
    }
    const SupportSet fine = f.support().refined(r);
    const double spread = half_power_of_two(l.value() - r.value());
    Eigen::VectorXcd c(static_cast<Eigen::Index>(fine.size()));
    for (std::size_t p = 0; p < fine.size(); ++p) {
        const std::uint32_t parent = coarse_parent(fine.values()[p], l);
        const auto q = f.support().position(parent);
        c[static_cast<Eigen::Index>(p)] =
            f.coefficients()[static_cast<Eigen::Index>(*q)] * spread;
    }
    return TestFunction(fine, std::move(c));
}

}  // namespace ctqw
