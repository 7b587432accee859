#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "generators.hpp"
#include "padic_ctqw/io.hpp"
#include "padic_ctqw/model.hpp"

using namespace ctqw;

namespace {

// The parser reports every schema violation as "model config: "<key>" ...".
void check_rejects(const std::string& text, const std::string& key_fragment) {
    try {
        static_cast<void>(parse_model_text(text));
        FAIL("accepted: ", text);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find(key_fragment) != std::string::npos);
    }
}

}  // namespace

TEST_CASE("minimal graph config parses into the exchange Hamiltonian") {
    const ModelSpec spec = parse_model_text(R"({
        "kind": "graph",
        "level": 1,
        "adjacency": [[0, 1], [1, 0]]
    })");
    CHECK(spec.kind() == HamiltonianKind::graph);
    CHECK(spec.level() == Level(1));
    CHECK(spec.support().is_full());
    CHECK(spec.mass() == 1.0);
    CHECK(spec.potential().cwiseAbs().maxCoeff() == 0.0);

    const Eigen::MatrixXd h = build_hamiltonian(spec).matrix();
    CHECK(h(0, 0) == 1.0);
    CHECK(h(0, 1) == -1.0);
    CHECK(h(1, 0) == -1.0);
    CHECK(h(1, 1) == 1.0);
}

TEST_CASE("optional fields override the defaults") {
    const ModelSpec spec = parse_model_text(R"({
        "kind": "graph",
        "level": 2,
        "support": [0, 2, 3],
        "mass": 0.5,
        "potential": [1.0, 2.0, 3.0],
        "adjacency": [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    })");
    CHECK(spec.mass() == 0.5);
    CHECK(spec.support() == SupportSet(Level(2), {0, 2, 3}));
    CHECK(spec.potential()[2] == 3.0);
}

TEST_CASE("biweighted and convolution configs parse") {
    const ModelSpec weighted = parse_model_text(R"({
        "kind": "biweighted",
        "level": 1,
        "A": [[0.0, 1.0], [1.0, 0.0]],
        "B": [[0.5, 1.0], [1.0, 0.5]]
    })");
    CHECK(weighted.kind() == HamiltonianKind::biweighted);
    CHECK(weighted.weights().escape()(0, 0) == 0.5);

    const ModelSpec conv = parse_model_text(R"({
        "kind": "convolution",
        "level": 2,
        "profile": {"shells": [1.0, 1.0], "deep": 1.0}
    })");
    CHECK(conv.kind() == HamiltonianKind::convolution);
    CHECK(conv.profile().deep_value() == 1.0);
}

TEST_CASE("schema violations name the offending key") {
    check_rejects(R"({"kind": "graph", "level": 1})", "\"adjacency\"");
    check_rejects(R"({"kind": "walk", "level": 1})", "\"kind\"");
    check_rejects(R"({"level": 1, "adjacency": [[0]]})", "\"kind\"");
    check_rejects(R"({"kind": "graph", "level": -1, "adjacency": [[0]]})", "\"level\"");
    check_rejects(
        R"({"kind": "graph", "level": 1, "adjacency": [[0, 1], [1, 0]], "extra": 3})",
        "\"extra\"");
    check_rejects(
        R"({"kind": "graph", "level": 1, "adjacency": [[0, 1], [1, 0]], "A": [[1]]})",
        "\"A\"");
    check_rejects(
        R"({"kind": "biweighted", "level": 1, "A": [[0,1],[1,0]], "B": [[0,1],[1,0]],
            "profile": {"shells": [1], "deep": 1}})",
        "\"profile\"");
    check_rejects(
        R"({"kind": "graph", "level": 1, "support": [0, 2], "adjacency": [[0, 1], [1, 0]]})",
        "\"support\"");
    check_rejects(
        R"({"kind": "graph", "level": 1, "support": [], "adjacency": [[0, 1], [1, 0]]})",
        "\"support\"");
    check_rejects(
        R"({"kind": "graph", "level": 1, "support": [-1, 0], "adjacency": [[0, 1], [1, 0]]})",
        "\"support\"");
    check_rejects(
        R"({"kind": "graph", "level": 1, "mass": 0.0, "adjacency": [[0, 1], [1, 0]]})",
        "\"mass\"");
    check_rejects(
        R"({"kind": "graph", "level": 1, "potential": [0.0], "adjacency": [[0, 1], [1, 0]]})",
        "\"potential\"");
    check_rejects(
        R"({"kind": "graph", "level": 1, "adjacency": [[0, 1], [0, 0]]})",
        "\"adjacency\"");
    check_rejects(
        R"({"kind": "graph", "level": 1, "adjacency": [[0, 2], [2, 0]]})",
        "\"adjacency\"");
    check_rejects(
        R"({"kind": "graph", "level": 1, "adjacency": [[0, 1]]})",
        "\"adjacency\"");
    // Unit-mass rule: these shells integrate to 0.9, not 1.
    check_rejects(
        R"({"kind": "convolution", "level": 1, "profile": {"shells": [1.0], "deep": 0.8}})",
        "\"profile\"");
    check_rejects(
        R"({"kind": "convolution", "level": 1, "profile": {"shells": [1.0], "deep": 1.0,
            "tail": 2}})",
        "\"profile.tail\"");
    check_rejects(
        R"({"kind": "convolution", "level": 1, "support": [0],
            "profile": {"shells": [1.0], "deep": 1.0}})",
        "\"support\"");
    CHECK_THROWS_AS(static_cast<void>(parse_model_text("not json")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_model_text("[1, 2]")), std::invalid_argument);
}

TEST_CASE("write and parse round-trip every model exactly") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> mass_dist(0.25, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Level level(1 + static_cast<int>(rng() % 3));
        const SupportSet support = SupportSet::full(level);
        const auto n = static_cast<Eigen::Index>(support.size());
        Eigen::VectorXd potential = gen::random_vector(n, rng, -2.0, 2.0);
        const double mass = mass_dist(rng);

        ModelSpec spec = [&] {
            switch (trial % 3) {
                case 0:
                    return ModelSpec::graph(
                        AdjacencyMatrix(support, gen::random_adjacency(n, rng, true)), mass,
                        potential);
                case 1:
                    return ModelSpec::biweighted(
                        BiWeights(support, gen::random_symmetric_nonneg(n, rng),
                                  gen::random_symmetric_nonneg(n, rng)),
                        mass, potential);
                default:
                    return ModelSpec::convolution(gen::random_profile(level, rng), mass,
                                                  potential);
            }
        }();

        const std::string text = write_model(spec);
        CHECK(!text.empty());
        CHECK(text.back() == '\n');
        CHECK(parse_model_text(text) == spec);
    }
}

TEST_CASE("model files round-trip through the filesystem") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "ctqw_io_roundtrip.json";
    Eigen::MatrixXi a(2, 2);
    a << 0, 1, 1, 0;
    const ModelSpec spec =
        ModelSpec::graph(AdjacencyMatrix(SupportSet::full(Level(1)), a), 2.0);
    write_model_file(spec, path);
    CHECK(parse_model(path) == spec);
    fs::remove(path);
    CHECK_THROWS_AS(static_cast<void>(parse_model(path)), std::invalid_argument);
}

TEST_CASE("time grids land on both endpoints") {
    const TimeGrid grid = parse_time_grid("0:3.2:64");
    CHECK(grid.start == 0.0);
    CHECK(grid.end == 3.2);
    CHECK(grid.steps == 64);
    const std::vector<double> points = grid.points();
    REQUIRE(points.size() == 65);
    CHECK(points.front() == 0.0);
    CHECK(points.back() == 3.2);
    for (std::size_t i = 1; i < points.size(); ++i) {
        CHECK(points[i] > points[i - 1] - 1e-15);
    }

    const TimeGrid single = parse_time_grid("1.5:1.5:1");
    CHECK(single.points() == std::vector<double>{1.5, 1.5});

    CHECK_THROWS_AS(static_cast<void>(parse_time_grid("0:1")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_time_grid("0:1:0")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_time_grid("0:1:-3")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_time_grid("a:1:4")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_time_grid("0:inf:4")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_time_grid("")), std::invalid_argument);
}

TEST_CASE("level ranges are inclusive and ordered") {
    const LevelRange range = parse_level_range("2:6");
    CHECK(range.values() == std::vector<int>{2, 3, 4, 5, 6});
    CHECK(parse_level_range("3:3").values() == std::vector<int>{3});

    CHECK_THROWS_AS(static_cast<void>(parse_level_range("3:1")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_level_range("-1:2")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_level_range("4")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_level_range("1:2:3")), std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(parse_level_range("x:y")), std::invalid_argument);
}

TEST_CASE("formatted numbers reconstruct their doubles exactly") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(0.0) == "0");

    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double value = trial % 7 == 0 ? std::exp(dist(rng)) : dist(rng);
        const std::string text = format_number(value);
        CHECK(std::strtod(text.c_str(), nullptr) == value);
        CHECK(text.find(',') == std::string::npos);
    }
    CHECK(std::strtod(format_number(1.0 / 3.0).c_str(), nullptr) == 1.0 / 3.0);
    CHECK(std::strtod(format_number(3.2).c_str(), nullptr) == 3.2);
}
