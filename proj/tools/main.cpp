#include "bmap/commands.hpp"
#include "bmap/errors.hpp"
#include "bmap/version.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <utility>
#include <vector>

namespace {

int dispatch(CLI::App& app, const CLI::App* simulate, const CLI::App* analyze,
             const CLI::App* map_cmd, const CLI::App* render,
             bmap::SimulateOptions& sim_options, bmap::AnalyzeOptions& an_options,
             std::vector<double>& thresholds, bmap::MapOptions& map_options,
             bmap::RenderOptions& render_options) {
    if (app.got_subcommand(simulate)) {
        bmap::cmd_simulate(sim_options, std::cout);
    } else if (app.got_subcommand(analyze)) {
        if (!thresholds.empty()) {
            if (thresholds.size() != 2)
                throw bmap::ConfigError("--thresholds needs exactly two values: lo,hi");
            an_options.thresholds = std::make_pair(thresholds[0], thresholds[1]);
        }
        bmap::cmd_analyze(an_options, std::cout);
    } else if (app.got_subcommand(map_cmd)) {
        bmap::cmd_map(map_options, std::cout);
    } else if (app.got_subcommand(render)) {
        bmap::cmd_render(render_options, std::cout);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"belief-space flocking simulator and trajectory mapper"};
    app.set_version_flag("--version", bmap::kVersion);
    app.require_subcommand(1);

    bmap::SimulateOptions sim_options;
    CLI::App* simulate = app.add_subcommand("simulate", "run a seeded simulation");
    simulate->add_option("config", sim_options.config_path, "config file (key = value lines)")
        ->required();
    simulate->add_option("-o,--out", sim_options.out_dir, "output directory")->required();
    simulate->add_option("--workers", sim_options.workers, "worker threads");

    bmap::AnalyzeOptions an_options;
    std::vector<double> thresholds;
    CLI::App* analyze = app.add_subcommand("analyze", "DTW profile and phase classification");
    analyze->add_option("inputs", an_options.inputs, "trajectory files")->required();
    analyze->add_option("-o,--out", an_options.out_dir, "output directory")->required();
    analyze->add_option("--window", an_options.window, "Sakoe-Chiba band half-width");
    analyze
        ->add_option("--thresholds", thresholds,
                     "explicit phase cut points lo,hi on mean DTW (default: auto 3-means)")
        ->delimiter(',');
    analyze->add_flag("--matrix", an_options.matrix, "also export the full DTW matrix");
    analyze->add_flag("--normalized", an_options.normalized,
                      "divide pair costs by the summed sequence lengths");
    analyze->add_flag("--cell-centers", an_options.cell_centers,
                      "warp cell-center positions instead of raw positions");
    analyze->add_option("--workers", an_options.workers, "worker threads");

    bmap::MapOptions map_options;
    CLI::App* map_cmd = app.add_subcommand("map", "belief graphs, layout, and overlay");
    map_cmd->add_option("inputs", map_options.inputs, "trajectory files")->required();
    map_cmd->add_option("-o,--out", map_options.out_dir, "output directory")->required();
    map_cmd->add_option("--base-group", map_options.base_group,
                        "group whose graph anchors the overlay");
    map_cmd->add_option("--iterations", map_options.fr.iterations, "layout iterations");
    map_cmd->add_option("--area", map_options.fr.area, "layout frame area");
    map_cmd->add_option("--c", map_options.fr.c, "optimal-distance scale factor");
    map_cmd->add_option("--initial-temperature", map_options.fr.initial_temperature,
                        "starting step length");
    map_cmd->add_option("--cooling", map_options.fr.cooling, "temperature decay per iteration");
    map_cmd->add_option("--layout-seed", map_options.fr.layout_seed, "layout RNG seed");

    bmap::RenderOptions render_options;
    CLI::App* render = app.add_subcommand("render", "render an artifact to SVG");
    render->add_option("input", render_options.input, "artifact file")->required();
    render->add_option("-o,--out", render_options.out_path, "output SVG path")->required();
    render->add_option("--style", render_options.style, "heatmap | graph | overlay | phases")
        ->required();
    render->add_option("--step", render_options.step, "recorded step for heatmap");

    try {
        app.parse(argc, argv);
        return dispatch(app, simulate, analyze, map_cmd, render, sim_options, an_options,
                        thresholds, map_options, render_options);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const bmap::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const bmap::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
