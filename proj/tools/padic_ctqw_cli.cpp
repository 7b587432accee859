// Command line front end: loads a model config, runs one of the walk or
// diffusion computations, and emits deterministic CSV.
//
// Exit codes: 0 success, 1 invalid input or config, 2 usage error,
// 3 numerical contract violation (with the measured defect on stderr).

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padic_ctqw/evolution.hpp"
#include "padic_ctqw/function_space.hpp"
#include "padic_ctqw/io.hpp"
#include "padic_ctqw/model.hpp"
#include "padic_ctqw/operators.hpp"
#include "padic_ctqw/padic.hpp"
#include "padic_ctqw/scaling.hpp"

namespace {

using namespace ctqw;

constexpr double kCliContractTolerance = 1e-6;

// A computed quantity failed a property that is supposed to hold by
// construction (unitarity, positivity, unit total mass, ...).
class ContractViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::invalid_argument("cannot open output file: " + path);
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::uint32_t resolve_initial(const SupportSet& support, std::int64_t requested) {
    if (requested < 0) return support.values().front();
    const auto value = static_cast<std::uint32_t>(requested);
    if (!support.contains(value)) {
        throw std::invalid_argument("initial ball " + std::to_string(requested) +
                                    " is not in the model support");
    }
    return value;
}

struct CommonOptions {
    std::string config;
    std::string grid_text;
    std::string out_path;
    std::int64_t initial = -1;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_grid = true) {
    cmd->add_option("--config", opts.config, "model config JSON file")->required();
    if (with_grid) {
        cmd->add_option("--t", opts.grid_text, "time grid start:end:steps (both endpoints included)")
            ->required();
    }
    cmd->add_option("--out", opts.out_path, "output CSV file (default: stdout)");
    cmd->add_option("--initial", opts.initial,
                    "initial ball residue (default: lowest residue in the support)");
}

int run_transitions(const CommonOptions& opts, bool single_source) {
    const ModelSpec spec = parse_model(opts.config);
    const TimeGrid grid = parse_time_grid(opts.grid_text);
    const SpectralDecomposition decomposition = spectral_decompose(build_hamiltonian(spec));
    const SupportSet& support = spec.support();

    std::vector<std::size_t> sources;
    if (single_source) {
        const std::uint32_t from = resolve_initial(support, opts.initial);
        sources.push_back(*support.position(from));
    } else {
        for (std::size_t j = 0; j < support.size(); ++j) sources.push_back(j);
    }

    OutputTarget target(opts.out_path);
    std::ostream& out = target.stream();
    out << "t,from,to,prob\n";
    for (const double t : grid.points()) {
        const TransitionMatrix walk = transition_matrix(decomposition, t);
        const double defect = walk.column_sum_defect();
        if (defect > kCliContractTolerance) {
            throw ContractViolation("transition columns deviate from unit sum by " +
                                    format_number(defect) + " at t = " + format_number(t));
        }
        for (const std::size_t j : sources) {
            for (std::size_t i = 0; i < support.size(); ++i) {
                out << format_number(t) << ',' << support.values()[j] << ','
                    << support.values()[i] << ','
                    << format_number(walk.probabilities()(static_cast<Eigen::Index>(i),
                                                          static_cast<Eigen::Index>(j)))
                    << '\n';
            }
        }
    }
    return 0;
}

int run_evolve(const CommonOptions& opts) {
    const ModelSpec spec = parse_model(opts.config);
    const TimeGrid grid = parse_time_grid(opts.grid_text);
    const SpectralDecomposition decomposition = spectral_decompose(build_hamiltonian(spec));
    const std::uint32_t from = resolve_initial(spec.support(), opts.initial);
    const TestFunction psi0 = TestFunction::basis_state(spec.support(), from);

    OutputTarget target(opts.out_path);
    std::ostream& out = target.stream();
    out << "t,index,re,im\n";
    for (const double t : grid.points()) {
        const TestFunction psi = propagate(decomposition, psi0, t);
        const double drift = std::abs(psi.norm() - psi0.norm());
        if (drift > kCliContractTolerance) {
            throw ContractViolation("state norm drifts by " + format_number(drift) +
                                    " at t = " + format_number(t));
        }
        for (std::size_t i = 0; i < spec.support().size(); ++i) {
            const std::complex<double> c = psi.coefficients()[static_cast<Eigen::Index>(i)];
            out << format_number(t) << ',' << spec.support().values()[i] << ','
                << format_number(c.real()) << ',' << format_number(c.imag()) << '\n';
        }
    }
    return 0;
}

int run_heat(const CommonOptions& opts, bool check_hypothesis) {
    const ModelSpec spec = parse_model(opts.config);
    const TimeGrid grid = parse_time_grid(opts.grid_text);

    if (check_hypothesis && spec.kind() == HamiltonianKind::biweighted) {
        const Eigen::MatrixXd& a = spec.weights().amplitude();
        const Eigen::MatrixXd& b = spec.weights().escape();
        const double excess = (a - b).maxCoeff();
        if (excess > 1e-12) {
            throw std::invalid_argument(
                "amplitude rates exceed escape rates by " + format_number(excess) +
                "; the dissipative regime needs amplitude <= escape entrywise");
        }
    }

    const HeatGenerator generator =
        spec.kind() == HamiltonianKind::biweighted
            ? HeatGenerator::from_biweights(BiWeights(spec.support(),
                                                      spec.mass() * spec.weights().amplitude(),
                                                      spec.mass() * spec.weights().escape()))
            : HeatGenerator::from_hamiltonian(build_hamiltonian(spec));

    const std::uint32_t from = resolve_initial(spec.support(), opts.initial);
    Eigen::VectorXd u0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec.support().size()));
    u0[static_cast<Eigen::Index>(*spec.support().position(from))] = 1.0;
    const double mass0 = u0.sum();

    OutputTarget target(opts.out_path);
    std::ostream& out = target.stream();
    out << "t,index,value\n";
    for (const double t : grid.points()) {
        const Eigen::VectorXd u = heat_evolve(generator, u0, t);
        const double lowest = u.minCoeff();
        if (lowest < -kCliContractTolerance) {
            throw ContractViolation("heat state dips to " + format_number(lowest) +
                                    " at t = " + format_number(t));
        }
        if (check_hypothesis && u.sum() > mass0 + 1e-9) {
            throw ContractViolation("total mass grows to " + format_number(u.sum()) +
                                    " at t = " + format_number(t));
        }
        for (std::size_t i = 0; i < spec.support().size(); ++i) {
            out << format_number(t) << ',' << spec.support().values()[i] << ','
                << format_number(u[static_cast<Eigen::Index>(i)]) << '\n';
        }
    }
    return 0;
}

int run_born(const CommonOptions& opts, int refine_to) {
    const ModelSpec spec = parse_model(opts.config);
    const TimeGrid grid = parse_time_grid(opts.grid_text);
    const Level l = spec.level();
    const Level r(refine_to < 0 ? l.value() + 2 : refine_to);
    if (r < l) {
        throw std::invalid_argument("--refine must not be below the model level");
    }

    const std::uint32_t from = resolve_initial(spec.support(), opts.initial);
    const TestFunction psi0 = embed(TestFunction::basis_state(spec.support(), from), r);
    const SpectralDecomposition decomposition = spectral_decompose(refine_hamiltonian(spec, r));

    OutputTarget target(opts.out_path);
    std::ostream& out = target.stream();
    out << "t,index,prob\n";
    for (const double t : grid.points()) {
        const TestFunction psi = propagate(decomposition, psi0, t);
        const BornDistribution distribution = born_transitions(psi, l);
        const double total = distribution.probabilities.sum();
        if (std::abs(total - 1.0) > kCliContractTolerance) {
            throw ContractViolation("ball probabilities sum to " + format_number(total) +
                                    " at t = " + format_number(t));
        }
        for (std::size_t i = 0; i < distribution.support.size(); ++i) {
            out << format_number(t) << ',' << distribution.support.values()[i] << ','
                << format_number(distribution.probabilities[static_cast<Eigen::Index>(i)])
                << '\n';
        }
    }
    return 0;
}

int run_scaling(const CommonOptions& opts, const std::string& levels_text, double t) {
    const ModelSpec spec = parse_model(opts.config);
    const LevelRange range = parse_level_range(levels_text);
    const std::vector<int> fine_levels = range.values();

    RefinementReport report;
    if (opts.initial >= 0) {
        const std::uint32_t from = resolve_initial(spec.support(), opts.initial);
        const TestFunction psi0 = TestFunction::basis_state(spec.support(), from);
        report = convergence_study(spec, psi0, t, fine_levels);
    } else {
        // Default probe: pointwise ultrametric distance to the origin ball,
        // which is not locally constant at any coarser depth.
        const Level top(fine_levels.back());
        const BallIndex origin(0, top);
        report = convergence_study(
            spec,
            [&origin](const BallIndex& ball) {
                return std::complex<double>(ultra_distance(ball, origin), 0.0);
            },
            t, fine_levels);
    }

    OutputTarget target(opts.out_path);
    std::ostream& out = target.stream();
    out << "r,deviation,projection_residual\n";
    for (std::size_t i = 0; i < report.fine_levels.size(); ++i) {
        const double deviation = report.deviations[i];
        if (deviation > kCliContractTolerance) {
            throw ContractViolation("walk deviates from its refinement by " +
                                    format_number(deviation) + " at depth " +
                                    std::to_string(report.fine_levels[i]));
        }
        out << report.fine_levels[i] << ',' << format_number(deviation) << ','
            << format_number(report.projection_residuals[i]) << '\n';
    }
    return 0;
}

int run_vladimirov(double alpha, double max_norm, const std::string& out_path) {
    int exp = 0;
    if (!(max_norm >= 1.0) || std::frexp(max_norm, &exp) != 0.5) {
        throw std::invalid_argument("--max-norm must be a power of two >= 1");
    }
    OutputTarget target(out_path);
    std::ostream& out = target.stream();
    out << "norm,value\n";
    for (double norm = 1.0; norm <= max_norm; norm *= 2.0) {
        out << format_number(norm) << ',' << format_number(vladimirov_indicator(alpha, norm))
            << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hierarchical-lattice quantum walks and diffusions"};
    app.require_subcommand(1);

    CommonOptions transitions_opts;
    auto* transitions_cmd =
        app.add_subcommand("transitions", "Walk probabilities pi_{I,J}(t) over a time grid");
    add_common(transitions_cmd, transitions_opts);

    CommonOptions evolve_opts;
    auto* evolve_cmd =
        app.add_subcommand("evolve", "Wave-function coefficients over a time grid");
    add_common(evolve_cmd, evolve_opts);

    CommonOptions heat_opts;
    bool check_hypothesis = false;
    auto* heat_cmd = app.add_subcommand("heat", "Dissipative semigroup from unit mass on a ball");
    add_common(heat_cmd, heat_opts);
    heat_cmd->add_flag("--check-hypothesis", check_hypothesis,
                       "require amplitude <= escape and verify mass never grows");

    CommonOptions born_opts;
    int refine_to = -1;
    auto* born_cmd = app.add_subcommand(
        "born", "Measurement statistics of a refined walk, coarse-grained to the model depth");
    add_common(born_cmd, born_opts);
    born_cmd->add_option("--refine", refine_to, "depth of the refined walk (default: level + 2)");

    CommonOptions scaling_opts;
    std::string levels_text;
    double scaling_time = 1.0;
    auto* scaling_cmd =
        app.add_subcommand("scaling", "Refinement study against the finest requested depth");
    scaling_cmd->add_option("--config", scaling_opts.config, "model config JSON file")->required();
    scaling_cmd->add_option("--levels", levels_text, "inclusive depth range lo:hi")->required();
    scaling_cmd->add_option("--t", scaling_time, "evolution time")->required();
    scaling_cmd->add_option("--out", scaling_opts.out_path, "output CSV file (default: stdout)");
    scaling_cmd->add_option("--initial", scaling_opts.initial,
                            "probe with a basis state instead of the radial default");

    double alpha = 1.0;
    double max_norm = 4.0;
    std::string vlad_out;
    auto* vlad_cmd = app.add_subcommand(
        "vladimirov", "Fractional derivative of the unit-ball indicator by |x|");
    vlad_cmd->add_option("--alpha", alpha, "derivative order, > 0")->required();
    vlad_cmd->add_option("--max-norm", max_norm, "largest |x| to report (power of two, >= 1)");
    vlad_cmd->add_option("--out", vlad_out, "output CSV file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    try {
        if (transitions_cmd->parsed()) {
            return run_transitions(transitions_opts, transitions_opts.initial >= 0);
        }
        if (evolve_cmd->parsed()) return run_evolve(evolve_opts);
        if (heat_cmd->parsed()) return run_heat(heat_opts, check_hypothesis);
        if (born_cmd->parsed()) return run_born(born_opts, refine_to);
        if (scaling_cmd->parsed()) return run_scaling(scaling_opts, levels_text, scaling_time);
        if (vlad_cmd->parsed()) return run_vladimirov(alpha, max_norm, vlad_out);
    } catch (const ContractViolation& e) {
        std::cerr << "numerical contract violation: " << e.what() << std::endl;
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
