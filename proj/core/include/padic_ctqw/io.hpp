#pragma once

// Model files, time grids, and number formatting for the CLI.
//
// Models travel as JSON objects:
//
//   {
//     "kind": "graph" | "biweighted" | "convolution",
//     "level": 2,
//     "support": [0, 1, 2],            optional, default: full partition
//     "mass": 1.0,                     optional, default 1.0
//     "potential": [0.0, 0.0, 0.0],    optional, default zeros
//     "adjacency": [[...], ...]        graph models
//     "A": [[...]], "B": [[...]]       biweighted models
//     "profile": {"shells": [...], "deep": x}   convolution models
//   }
//
// Parsing is strict: unknown keys, keys from another kind, and any schema
// violation fail with an error naming the offending key.  write_model /
// parse_model round-trip exactly.

#include <filesystem>
#include <string>
#include <vector>

#include "padic_ctqw/model.hpp"

namespace ctqw {

[[nodiscard]] ModelSpec parse_model_text(const std::string& text);
[[nodiscard]] ModelSpec parse_model(const std::filesystem::path& path);

[[nodiscard]] std::string write_model(const ModelSpec& spec);
void write_model_file(const ModelSpec& spec, const std::filesystem::path& path);

// Uniform grid "start:end:steps" with steps >= 1 intervals; points() returns
// steps + 1 values including both endpoints (the last one is exactly `end`).
struct TimeGrid {
    double start = 0.0;
    double end = 0.0;
    int steps = 1;

    [[nodiscard]] std::vector<double> points() const;
};

[[nodiscard]] TimeGrid parse_time_grid(const std::string& text);

// Inclusive integer range "lo:hi", used for refinement level sweeps.
struct LevelRange {
    int lo = 0;
    int hi = 0;

    [[nodiscard]] std::vector<int> values() const;
};

[[nodiscard]] LevelRange parse_level_range(const std::string& text);

// Decimal with 17 significant digits, locale independent; enough to
// reconstruct the double exactly.  Used for every numeric CSV cell so output
// bytes are reproducible run to run.
[[nodiscard]] std::string format_number(double value);

}  // namespace ctqw
