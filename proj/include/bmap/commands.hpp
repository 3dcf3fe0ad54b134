#pragma once

#include "bmap/mapper.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace bmap {

// Subcommand implementations. Each writes its artifacts, logs the produced
// paths to `log`, and throws ConfigError (usage, exit 1) or DataError (bad
// inputs, exit 2) on failure. Identical inputs yield byte-identical
// artifacts; log text never feeds into artifact bytes.

struct SimulateOptions {
    std::string config_path;
    std::string out_dir;
    int workers = 1;
};

void cmd_simulate(const SimulateOptions& options, std::ostream& log);

struct AnalyzeOptions {
    std::vector<std::string> inputs; // trajectory files
    std::string out_dir;
    std::optional<int> window;
    std::optional<std::pair<double, double>> thresholds; // absent = auto
    bool matrix = false;
    bool normalized = false;
    bool cell_centers = false;
    int workers = 1;
};

void cmd_analyze(const AnalyzeOptions& options, std::ostream& log);

struct MapOptions {
    std::vector<std::string> inputs; // trajectory files
    std::string out_dir;
    std::string base_group = "nomad";
    FrParams fr;
};

void cmd_map(const MapOptions& options, std::ostream& log);

struct RenderOptions {
    std::string input;
    std::string style; // heatmap | graph | overlay | phases
    std::string out_path;
    int step = 0; // heatmap only
};

void cmd_render(const RenderOptions& options, std::ostream& log);

} // namespace bmap
