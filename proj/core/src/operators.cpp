#include "padic_ctqw/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctqw {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kProfileMassTolerance = 1e-12;

void require_square(const Eigen::Index rows, const Eigen::Index cols, const char* what) {
    if (rows != cols) {
        throw std::invalid_argument(std::string(what) + ": matrix is not square");
    }
}

void require_support_size(std::size_t n, Eigen::Index rows, const char* what) {
    if (static_cast<std::size_t>(rows) != n) {
        throw std::invalid_argument(std::string(what) + ": matrix size " + std::to_string(rows) +
                                    " does not match support size " + std::to_string(n));
    }
}

}  // namespace

AdjacencyMatrix::AdjacencyMatrix(SupportSet support, Eigen::MatrixXi entries)
    : support_(std::move(support)), entries_(std::move(entries)) {
    require_square(entries_.rows(), entries_.cols(), "adjacency");
    require_support_size(support_.size(), entries_.rows(), "adjacency");
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
        for (Eigen::Index k = 0; k < entries_.cols(); ++k) {
            const int e = entries_(i, k);
            if (e != 0 && e != 1) {
                throw std::invalid_argument("adjacency: entries must be 0 or 1");
            }
            if (e != entries_(k, i)) {
                throw std::invalid_argument("adjacency: matrix is not symmetric");
            }
        }
    }
}

int AdjacencyMatrix::degree(std::size_t pos) const {
    return entries_.row(static_cast<Eigen::Index>(pos)).sum();
}

int AdjacencyMatrix::valence(std::size_t pos) const {
    const auto i = static_cast<Eigen::Index>(pos);
    return degree(pos) - entries_(i, i);
}

BiWeights::BiWeights(SupportSet support, Eigen::MatrixXd amplitude, Eigen::MatrixXd escape)
    : support_(std::move(support)),
      amplitude_(std::move(amplitude)),
      escape_(std::move(escape)) {
    require_square(amplitude_.rows(), amplitude_.cols(), "amplitude weights");
    require_square(escape_.rows(), escape_.cols(), "escape weights");
    require_support_size(support_.size(), amplitude_.rows(), "amplitude weights");
    require_support_size(support_.size(), escape_.rows(), "escape weights");
    if (amplitude_.minCoeff() < 0.0 || escape_.minCoeff() < 0.0) {
        throw std::invalid_argument("rate weights must be nonnegative");
    }
    if (hermiticity_defect(amplitude_) > kSymmetryTolerance ||
        hermiticity_defect(escape_) > kSymmetryTolerance) {
        throw std::invalid_argument("rate weights must be symmetric");
    }
}

RadialProfile::RadialProfile(Level level, std::vector<double> shell_values, double deep_value)
    : level_(level), shells_(std::move(shell_values)), deep_(deep_value) {
    if (shells_.size() != static_cast<std::size_t>(level_.value())) {
        throw std::invalid_argument("radial profile needs exactly " +
                                    std::to_string(level_.value()) + " shell values, got " +
                                    std::to_string(shells_.size()));
    }
    for (const double j : shells_) {
        if (!(j >= 0.0)) throw std::invalid_argument("radial profile shells must be nonnegative");
    }
    if (!(deep_ >= 0.0)) throw std::invalid_argument("radial profile deep value must be nonnegative");
    const double m = mass();
    if (std::abs(m - 1.0) > kProfileMassTolerance) {
        throw std::invalid_argument("radial profile mass is " + std::to_string(m) +
                                    ", expected 1 within 1e-12");
    }
}

double RadialProfile::value_at_valuation(int v) const {
    if (v < 0) throw std::invalid_argument("valuation must be nonnegative");
    if (v < level_.value()) return shells_[static_cast<std::size_t>(v)];
    return deep_;
}

double RadialProfile::mass() const {
    // Shell v carries measure 2^-(v+1); everything at valuation >= l sits in
    // one ball of measure 2^-l.
    double m = 0.0;
    for (int v = 0; v < level_.value(); ++v) {
        m += shells_[static_cast<std::size_t>(v)] * std::ldexp(1.0, -(v + 1));
    }
    m += deep_ * std::ldexp(1.0, -level_.value());
    return m;
}

RadialProfile RadialProfile::refined(Level r) const {
    if (r < level_) {
        throw std::invalid_argument("RadialProfile::refined: target level below current level");
    }
    std::vector<double> shells = shells_;
    shells.resize(static_cast<std::size_t>(r.value()), deep_);
    return RadialProfile(r, std::move(shells), deep_);
}

HermitianHamiltonian::HermitianHamiltonian(SupportSet support, Eigen::MatrixXd matrix,
                                           HamiltonianKind kind)
    : support_(std::move(support)), matrix_(std::move(matrix)), kind_(kind) {
    require_square(matrix_.rows(), matrix_.cols(), "hamiltonian");
    require_support_size(support_.size(), matrix_.rows(), "hamiltonian");
    const double defect = hermiticity_defect(matrix_);
    if (defect > kSymmetryTolerance) {
        throw std::invalid_argument("hamiltonian symmetry defect " + std::to_string(defect) +
                                    " exceeds 1e-12");
    }
}

double hermiticity_defect(const Eigen::MatrixXd& matrix) {
    require_square(matrix.rows(), matrix.cols(), "hermiticity_defect");
    if (matrix.rows() == 0) return 0.0;
    return (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
}

double hermiticity_defect(const HermitianHamiltonian& h) {
    return hermiticity_defect(h.matrix());
}

HermitianHamiltonian graph_hamiltonian(const AdjacencyMatrix& adjacency, double mass,
                                       const Eigen::VectorXd& potential) {
    if (!(mass > 0.0)) throw std::invalid_argument("graph_hamiltonian: mass must be positive");
    const std::size_t n = adjacency.support().size();
    require_support_size(n, potential.size(), "potential");

    Eigen::MatrixXd h = -mass * adjacency.entries().cast<double>();
    for (std::size_t i = 0; i < n; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        // The -m A term contributes -m to the diagonal when a self loop is
        // present; adding m*degree leaves m*valence + V there either way.
        h(ii, ii) += mass * adjacency.degree(i) + potential[ii];
    }
    return HermitianHamiltonian(adjacency.support(), std::move(h), HamiltonianKind::graph);
}

HermitianHamiltonian biweighted_hamiltonian(const BiWeights& weights) {
    Eigen::MatrixXd h = -weights.amplitude();
    const Eigen::VectorXd escape = weights.escape_row_sums();
    h.diagonal() += escape;
    return HermitianHamiltonian(weights.support(), std::move(h), HamiltonianKind::biweighted);
}

Eigen::MatrixXd convolution_matrix(const RadialProfile& profile) {
    const Level l = profile.level();
    const auto n = static_cast<Eigen::Index>(l.dim());
    const double cell = std::ldexp(1.0, -l.value());
    Eigen::MatrixXd c(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k <= i; ++k) {
            const int v = valuation2(BallIndex(static_cast<std::uint32_t>(i), l),
                                     BallIndex(static_cast<std::uint32_t>(k), l));
            const double w = cell * profile.value_at_valuation(v);
            c(i, k) = w;
            c(k, i) = w;
        }
    }
    return c;
}

HermitianHamiltonian convolution_hamiltonian(const RadialProfile& profile, double mass,
                                             const Eigen::VectorXd& potential) {
    if (!(mass > 0.0)) throw std::invalid_argument("convolution_hamiltonian: mass must be positive");
    const SupportSet support = SupportSet::full(profile.level());
    require_support_size(support.size(), potential.size(), "potential");

    Eigen::MatrixXd h = -mass * convolution_matrix(profile);
    h.diagonal().array() += mass;
    h.diagonal() += potential;
    return HermitianHamiltonian(support, std::move(h), HamiltonianKind::convolution);
}

Eigen::MatrixXd discretize_kernel(
    const std::function<double(const BallIndex&, const BallIndex&)>& pair_average,
    const SupportSet& support, bool symmetric) {
    const auto n = static_cast<Eigen::Index>(support.size());
    const double cell = std::ldexp(1.0, -support.level().value());
    Eigen::MatrixXd w(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
            w(i, k) = cell * pair_average(support.at(static_cast<std::size_t>(i)),
                                          support.at(static_cast<std::size_t>(k)));
        }
    }
    if (symmetric) {
        const double defect = hermiticity_defect(w);
        if (defect > kSymmetryTolerance) {
            throw std::invalid_argument("discretize_kernel: kernel declared symmetric but defect is " +
                                        std::to_string(defect));
        }
    }
    return w;
}

double vladimirov_indicator(double alpha, double x_norm) {
    if (!(alpha > 0.0)) throw std::invalid_argument("vladimirov_indicator: alpha must be positive");
    if (!(x_norm > 0.0)) throw std::invalid_argument("vladimirov_indicator: |x| must be positive");
    int exp = 0;
    const double mant = std::frexp(x_norm, &exp);
    if (mant != 0.5) {
        throw std::invalid_argument("vladimirov_indicator: |x| must be a power of two");
    }
    const double c = (1.0 - std::pow(2.0, alpha)) / (1.0 - std::pow(2.0, -alpha - 1.0));
    if (x_norm <= 1.0) {
        const double tail = std::pow(2.0, -alpha - 1.0) / (1.0 - std::pow(2.0, -alpha));
        return -c * tail;
    }
    return c * std::pow(x_norm, -alpha - 1.0);
}

}  // namespace ctqw
