#include "bmap/commands.hpp"

#include "bmap/analysis.hpp"
#include "bmap/config.hpp"
#include "bmap/errors.hpp"
#include "bmap/graph_io.hpp"
#include "bmap/render.hpp"
#include "bmap/text.hpp"
#include "bmap/trajectory_io.hpp"
#include "bmap/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <map>

namespace bmap {

namespace {

namespace fs = std::filesystem;

fs::path prepare_out_dir(const std::string& out_dir) {
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory " + out_dir + ": " + ec.message());
    return dir;
}

void write_artifact(const fs::path& path, std::string_view contents, std::ostream& log) {
    write_file(path.string(), contents);
    log << "wrote " << path.string() << "\n";
}

} // namespace

void cmd_simulate(const SimulateOptions& options, std::ostream& log) {
    LoadedConfig loaded = load_config_file(options.config_path);
    validate(loaded.config);
    if (options.workers < 1)
        throw ConfigError("workers must be >= 1, got " + format_int(options.workers));

    fs::path dir = prepare_out_dir(options.out_dir);
    RunResult result = run(loaded.config, options.workers);

    TrajectoryFileMeta meta;
    meta.run_id = loaded.run_id;
    meta.config_digest = loaded.config_digest;
    meta.space = loaded.config.space;
    meta.dt = loaded.config.dynamics.dt;
    meta.record_every = loaded.config.record_every;

    std::vector<std::string> artifacts;
    for (const GroupSpec& group : loaded.config.groups) {
        std::vector<Trajectory> members;
        for (const Trajectory& traj : result.trajectories)
            if (traj.group == group.name) members.push_back(traj);
        std::string name = "traj_" + group.name + ".tsv";
        write_artifact(dir / name, format_trajectory_file(meta, members), log);
        artifacts.push_back(name);
    }

    std::sort(artifacts.begin(), artifacts.end());
    nlohmann::ordered_json manifest;
    manifest["run_id"] = loaded.run_id;
    manifest["config_digest"] = loaded.config_digest;
    manifest["tool_version"] = kVersion;
    manifest["artifacts"] = artifacts;
    write_artifact(dir / "manifest.json", manifest.dump(2) + "\n", log);
    log << "run_id " << loaded.run_id << "\n";
}

void cmd_analyze(const AnalyzeOptions& options, std::ostream& log) {
    if (options.workers < 1)
        throw ConfigError("workers must be >= 1, got " + format_int(options.workers));
    TrajectoryFile data = read_trajectory_files(options.inputs);
    if (data.trajectories.size() < 2)
        throw DataError("analysis needs at least 2 trajectories, got " +
                        format_uint(data.trajectories.size()));

    ProfileOptions profile_options;
    profile_options.position_based = !options.cell_centers;
    profile_options.normalized = options.normalized;
    profile_options.window = options.window;
    profile_options.workers = options.workers;

    std::optional<BeliefSpace> space;
    if (options.cell_centers) space.emplace(make_space(data.meta.space));

    DtwProfile profile = pairwise_profile(data.trajectories, profile_options,
                                          space ? &*space : nullptr);
    std::vector<PhaseLabel> phases = classify_phases(profile, options.thresholds);

    fs::path dir = prepare_out_dir(options.out_dir);
    write_artifact(dir / "profile.tsv", format_profile_table(profile, phases), log);
    write_artifact(dir / "phase_summary.tsv", format_phase_summary(profile, phases), log);
    if (options.matrix)
        write_artifact(dir / "dtw_matrix.tsv", format_matrix(profile), log);
}

void cmd_map(const MapOptions& options, std::ostream& log) {
    TrajectoryFile data = read_trajectory_files(options.inputs);
    double sample_dt = data.meta.dt * data.meta.record_every;

    std::vector<std::string> group_order;
    std::map<std::string, std::vector<Trajectory>> by_group;
    for (Trajectory& traj : data.trajectories) {
        auto [it, inserted] = by_group.try_emplace(traj.group);
        if (inserted) group_order.push_back(traj.group);
        it->second.push_back(std::move(traj));
    }
    if (!by_group.count(options.base_group))
        throw ConfigError("base-group '" + options.base_group +
                          "' not present in the input trajectories");

    fs::path dir = prepare_out_dir(options.out_dir);
    std::map<std::string, BeliefGraph> graphs;
    for (const std::string& group : group_order) {
        BeliefGraph graph = build_graph(by_group[group], sample_dt);
        graph.layout = fr_layout(graph, options.fr);
        write_artifact(dir / ("graph_" + group + ".graphml"), to_graphml(graph), log);
        write_artifact(dir / ("graph_" + group + ".txt"), to_graph_text(graph), log);
        graphs[group] = std::move(graph);
    }

    std::vector<std::pair<std::string, BeliefGraph>> others;
    for (const std::string& group : group_order)
        if (group != options.base_group) others.emplace_back(group, graphs[group]);

    OverlayMap overlay = overlay_map(graphs[options.base_group], others);
    write_artifact(dir / "overlay.txt", to_overlay_text(overlay), log);
    write_artifact(dir / "overlay.graphml", to_graphml(overlay), log);
    write_artifact(dir / "overlay.svg", render_overlay(overlay), log);
}

void cmd_render(const RenderOptions& options, std::ostream& log) {
    std::string svg;
    if (options.style == "heatmap") {
        svg = render_heatmap(read_trajectory_file(options.input), options.step);
    } else if (options.style == "graph") {
        svg = render_graph(parse_graph_text(read_file(options.input)));
    } else if (options.style == "overlay") {
        svg = render_overlay(parse_overlay_text(read_file(options.input)));
    } else if (options.style == "phases") {
        std::vector<ProfileRow> rows = parse_profile_table(read_file(options.input));
        svg = render_phases(rows);
    } else {
        throw ConfigError("unknown style '" + options.style +
                          "'; expected heatmap, graph, overlay, or phases");
    }
    fs::path out(options.out_path);
    if (out.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(out.parent_path(), ec);
        if (ec)
            throw DataError("cannot create output directory " + out.parent_path().string() +
                            ": " + ec.message());
    }
    write_artifact(out, svg, log);
}

} // namespace bmap
