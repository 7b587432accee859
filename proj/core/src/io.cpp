#include "padic_ctqw/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace ctqw {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
    throw std::invalid_argument("model config: \"" + key + "\" " + what);
}

double as_number(const json& j, const std::string& key) {
    if (!j.is_number()) fail(key, "must be a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& key) {
    if (!j.is_number_integer()) fail(key, "must be an integer");
    return j.get<int>();
}

Eigen::MatrixXd as_matrix(const json& j, const std::string& key) {
    if (!j.is_array() || j.empty()) fail(key, "must be a non-empty array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    Eigen::MatrixXd m;
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array()) fail(key, "must contain array rows");
        if (i == 0) {
            cols = row.size();
            m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        }
        if (row.size() != cols) fail(key, "has ragged rows");
        for (std::size_t k = 0; k < cols; ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                as_number(row[k], key);
        }
    }
    return m;
}

Eigen::VectorXd as_vector(const json& j, const std::string& key) {
    if (!j.is_array()) fail(key, "must be an array of numbers");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = as_number(j[i], key);
    }
    return v;
}

// Wraps the domain constructors so their complaints point at a config key.
template <typename F>
auto with_key(const std::string& key, F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        fail(key, std::string("is invalid: ") + e.what());
    }
}

const json& require_key(const json& root, const std::string& key) {
    const auto it = root.find(key);
    if (it == root.end()) fail(key, "is required but missing");
    return *it;
}

}  // namespace

ModelSpec parse_model_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("model config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw std::invalid_argument("model config: top level must be a JSON object");
    }

    static const std::vector<std::string> kCommon = {"kind", "level", "support", "mass",
                                                     "potential"};
    static const std::vector<std::string> kPayload = {"adjacency", "A", "B", "profile"};
    for (const auto& [key, value] : root.items()) {
        (void)value;
        const bool known =
            std::find(kCommon.begin(), kCommon.end(), key) != kCommon.end() ||
            std::find(kPayload.begin(), kPayload.end(), key) != kPayload.end();
        if (!known) fail(key, "is not a recognized key");
    }

    const std::string kind_name = [&] {
        const json& j = require_key(root, "kind");
        if (!j.is_string()) fail("kind", "must be a string");
        return j.get<std::string>();
    }();
    if (kind_name != "graph" && kind_name != "biweighted" && kind_name != "convolution") {
        fail("kind", "must be one of \"graph\", \"biweighted\", \"convolution\"");
    }

    const Level level = with_key("level", [&] {
        return Level(as_int(require_key(root, "level"), "level"));
    });

    const auto allowed_payload = [&](const char* key) {
        const bool allowed = (kind_name == "graph" && std::string(key) == "adjacency") ||
                             (kind_name == "biweighted" &&
                              (std::string(key) == "A" || std::string(key) == "B")) ||
                             (kind_name == "convolution" && std::string(key) == "profile");
        if (root.contains(key) && !allowed) {
            fail(key, "is not allowed for kind \"" + kind_name + "\"");
        }
    };
    for (const auto& key : kPayload) allowed_payload(key.c_str());

    SupportSet support = [&] {
        if (!root.contains("support")) return SupportSet::full(level);
        const json& j = root["support"];
        if (!j.is_array() || j.empty()) fail("support", "must be a non-empty array of indices");
        std::vector<std::uint32_t> values;
        values.reserve(j.size());
        for (const json& item : j) {
            const int v = as_int(item, "support");
            if (v < 0) fail("support", "contains a negative index");
            values.push_back(static_cast<std::uint32_t>(v));
        }
        return with_key("support", [&] { return SupportSet(level, std::move(values)); });
    }();

    const double mass = [&] {
        if (!root.contains("mass")) return 1.0;
        const double m = as_number(root["mass"], "mass");
        if (!(m > 0.0)) fail("mass", "must be positive");
        return m;
    }();

    std::optional<Eigen::VectorXd> potential;
    if (root.contains("potential")) {
        Eigen::VectorXd v = as_vector(root["potential"], "potential");
        if (static_cast<std::size_t>(v.size()) != support.size()) {
            fail("potential", "has " + std::to_string(v.size()) +
                                  " entries but the support has " + std::to_string(support.size()));
        }
        potential = std::move(v);
    }

    if (kind_name == "graph") {
        const Eigen::MatrixXd raw = as_matrix(require_key(root, "adjacency"), "adjacency");
        Eigen::MatrixXi entries(raw.rows(), raw.cols());
        for (Eigen::Index i = 0; i < raw.rows(); ++i) {
            for (Eigen::Index k = 0; k < raw.cols(); ++k) {
                const double e = raw(i, k);
                if (e != 0.0 && e != 1.0) fail("adjacency", "entries must be 0 or 1");
                entries(i, k) = static_cast<int>(e);
            }
        }
        AdjacencyMatrix adjacency = with_key("adjacency", [&] {
            return AdjacencyMatrix(support, std::move(entries));
        });
        return ModelSpec::graph(std::move(adjacency), mass, std::move(potential));
    }

    if (kind_name == "biweighted") {
        Eigen::MatrixXd a = as_matrix(require_key(root, "A"), "A");
        Eigen::MatrixXd b = as_matrix(require_key(root, "B"), "B");
        BiWeights weights = with_key("A/B", [&] {
            return BiWeights(support, std::move(a), std::move(b));
        });
        return ModelSpec::biweighted(std::move(weights), mass, std::move(potential));
    }

    // convolution
    if (root.contains("support") && !support.is_full()) {
        fail("support", "must cover the full partition for convolution models");
    }
    const json& jp = require_key(root, "profile");
    if (!jp.is_object()) fail("profile", "must be an object with \"shells\" and \"deep\"");
    for (const auto& [key, value] : jp.items()) {
        (void)value;
        if (key != "shells" && key != "deep") fail("profile." + key, "is not a recognized key");
    }
    const Eigen::VectorXd shells = as_vector(require_key(jp, "shells"), "profile.shells");
    const double deep = as_number(require_key(jp, "deep"), "profile.deep");
    RadialProfile profile = with_key("profile", [&] {
        return RadialProfile(level,
                             std::vector<double>(shells.data(), shells.data() + shells.size()),
                             deep);
    });
    return ModelSpec::convolution(std::move(profile), mass, std::move(potential));
}

ModelSpec parse_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open model config: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model_text(buffer.str());
}

std::string write_model(const ModelSpec& spec) {
    json root;
    switch (spec.kind()) {
        case HamiltonianKind::graph: {
            root["kind"] = "graph";
            const Eigen::MatrixXi& e = spec.adjacency().entries();
            json rows = json::array();
            for (Eigen::Index i = 0; i < e.rows(); ++i) {
                json row = json::array();
                for (Eigen::Index k = 0; k < e.cols(); ++k) row.push_back(e(i, k));
                rows.push_back(std::move(row));
            }
            root["adjacency"] = std::move(rows);
            break;
        }
        case HamiltonianKind::biweighted: {
            root["kind"] = "biweighted";
            const auto matrix_json = [](const Eigen::MatrixXd& m) {
                json rows = json::array();
                for (Eigen::Index i = 0; i < m.rows(); ++i) {
                    json row = json::array();
                    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
                    rows.push_back(std::move(row));
                }
                return rows;
            };
            root["A"] = matrix_json(spec.weights().amplitude());
            root["B"] = matrix_json(spec.weights().escape());
            break;
        }
        case HamiltonianKind::convolution: {
            root["kind"] = "convolution";
            json profile;
            profile["shells"] = spec.profile().shell_values();
            profile["deep"] = spec.profile().deep_value();
            root["profile"] = std::move(profile);
            break;
        }
    }
    root["level"] = spec.level().value();
    root["support"] = spec.support().values();
    root["mass"] = spec.mass();
    root["potential"] = std::vector<double>(spec.potential().data(),
                                            spec.potential().data() + spec.potential().size());
    return root.dump(2) + "\n";
}

void write_model_file(const ModelSpec& spec, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot open file for writing: " + path.string());
    }
    out << write_model(spec);
}

namespace {

double parse_double_token(const std::string& token, const std::string& what) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument(what + ": \"" + token + "\" is not a number");
    }
    return value;
}

int parse_int_token(const std::string& token, const std::string& what) {
    int value = 0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument(what + ": \"" + token + "\" is not an integer");
    }
    return value;
}

std::vector<std::string> split_colon(const std::string& text) {
    std::vector<std::string> parts;
    std::string::size_type from = 0;
    while (true) {
        const auto at = text.find(':', from);
        if (at == std::string::npos) {
            parts.push_back(text.substr(from));
            return parts;
        }
        parts.push_back(text.substr(from, at - from));
        from = at + 1;
    }
}

}  // namespace

std::vector<double> TimeGrid::points() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) {
        out.push_back(k == steps ? end
                                 : start + (end - start) * static_cast<double>(k) /
                                       static_cast<double>(steps));
    }
    return out;
}

TimeGrid parse_time_grid(const std::string& text) {
    const auto parts = split_colon(text);
    if (parts.size() != 3) {
        throw std::invalid_argument("time grid \"" + text + "\" must look like start:end:steps");
    }
    TimeGrid grid;
    grid.start = parse_double_token(parts[0], "time grid start");
    grid.end = parse_double_token(parts[1], "time grid end");
    grid.steps = parse_int_token(parts[2], "time grid steps");
    if (!std::isfinite(grid.start) || !std::isfinite(grid.end)) {
        throw std::invalid_argument("time grid endpoints must be finite");
    }
    if (grid.steps < 1) {
        throw std::invalid_argument("time grid steps must be >= 1");
    }
    return grid;
}

std::vector<int> LevelRange::values() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(hi - lo) + 1);
    for (int r = lo; r <= hi; ++r) out.push_back(r);
    return out;
}

LevelRange parse_level_range(const std::string& text) {
    const auto parts = split_colon(text);
    if (parts.size() != 2) {
        throw std::invalid_argument("level range \"" + text + "\" must look like lo:hi");
    }
    LevelRange range;
    range.lo = parse_int_token(parts[0], "level range lo");
    range.hi = parse_int_token(parts[1], "level range hi");
    if (range.lo < 0 || range.hi < range.lo) {
        throw std::invalid_argument("level range \"" + text + "\" must satisfy 0 <= lo <= hi");
    }
    return range;
}

std::string format_number(double value) {
    char buffer[64];
    const auto result =
        std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
    return std::string(buffer, result.ptr);
}

}  // namespace ctqw
