// Acceptance harness: one line per criterion, [PASS]/[FAIL] plus measured
// values, exit 1 when any criterion fails. Criterion 10 is qualitative and
// may downgrade to [WARN] without failing the run.
#include "bmap/analysis.hpp"
#include "bmap/commands.hpp"
#include "bmap/engine.hpp"
#include "bmap/graph_io.hpp"
#include "bmap/mapper.hpp"
#include "bmap/rng.hpp"
#include "bmap/text.hpp"
#include "bmap/vec.hpp"

#include "dtw_oracle.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

using namespace bmap;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pinned project default for the intermediate social influence horizon.
constexpr double kFlockSih = 2.0;

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

std::string fmt_seconds(double s) {
    std::ostringstream out;
    out.precision(1);
    out << std::fixed << s << "s";
    return out.str();
}

void report(bool ok, const std::string& name, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

void report_warn(const std::string& name, const std::string& detail) {
    std::cout << "[WARN] " << name << "  (" << detail << ")\n";
}

double median5(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

double angle_between(std::span<const double> a, std::span<const double> b) {
    Vec diff = sub(a, b);
    double half = norm(diff) / 2.0;
    if (half >= 1.0) return std::numbers::pi;
    return 2.0 * std::asin(half);
}

std::map<std::string, std::vector<Trajectory>> by_group(const RunResult& result) {
    std::map<std::string, std::vector<Trajectory>> groups;
    for (const Trajectory& traj : result.trajectories) groups[traj.group].push_back(traj);
    return groups;
}

// ---------------------------------------------------------------------------

void criterion_zero_horizon_independence() {
    Timer timer;
    SimConfig config;
    config.groups = {{"nomad", 10, 0.0}};
    config.steps = 400;
    config.record_every = 5;
    config.master_seed = 11;
    validate(config);

    RunResult full = run(config, 2);
    BeliefSpace space = make_space(config.space);
    std::vector<AgentState> initial = init_population(config, space);

    int mismatches = 0;
    for (std::size_t i = 0; i < initial.size(); ++i) {
        RunResult single = run_population(space, config.dynamics, {initial[i]},
                                          config.steps, config.record_every,
                                          config.master_seed, 1);
        const auto& a = full.trajectories[i].samples;
        const auto& b = single.trajectories[0].samples;
        if (a.size() != b.size()) {
            ++mismatches;
            continue;
        }
        for (std::size_t s = 0; s < a.size(); ++s)
            if (a[s].step != b[s].step || a[s].position != b[s].position ||
                a[s].label != b[s].label) {
                ++mismatches;
                break;
            }
    }
    double t = timer.seconds();
    report(mismatches == 0 && t < 5.0, "zero-horizon agents run independently",
           "10 agents, mismatching trajectories: " + format_int(mismatches) + ", " +
               fmt_seconds(t) + " < 5s");
}

void criterion_stampede_convergence() {
    Timer timer;
    SimConfig config;
    config.space.half_extent = 25.0;
    config.groups = {{"stampede", 30, kInf}};
    config.steps = 2000;
    config.record_every = 2000;
    config.master_seed = 2;
    validate(config);

    RunResult result = run(config, 2);
    double p = polarization(result.final_population);
    double t = timer.seconds();
    report(p >= 0.99 && t < 10.0, "unbounded horizon converges to a stampede",
           "n=30, 2000 steps, final polarization " + format_double(p) + " >= 0.99, " +
               fmt_seconds(t) + " < 10s");
}

void criterion_phase_separation() {
    Timer timer;
    SimConfig config;
    config.groups = {{"nomad", 25, 0.0}, {"flock", 25, kFlockSih}, {"stampede", 25, kInf}};
    config.steps = 9990;
    config.record_every = 10; // 1000 recorded samples per agent
    config.master_seed = 3;
    validate(config);

    RunResult result = run(config, 4);
    auto groups = by_group(result);

    ProfileOptions options;
    options.workers = 4;

    DtwProfile combined;
    std::map<std::string, std::pair<double, double>> ranges;
    for (const char* name : {"nomad", "flock", "stampede"}) {
        DtwProfile profile = pairwise_profile(groups.at(name), options);
        double lo = kInf, hi = -kInf;
        for (const ProfileEntry& entry : profile.entries) {
            lo = std::min(lo, entry.mean_dtw);
            hi = std::max(hi, entry.mean_dtw);
            combined.entries.push_back(entry);
        }
        ranges[name] = {lo, hi};
    }

    bool disjoint = ranges["stampede"].second < ranges["flock"].first &&
                    ranges["flock"].second < ranges["nomad"].first;

    std::vector<PhaseLabel> phases = classify_phases(combined);
    int agree = 0;
    for (std::size_t i = 0; i < combined.entries.size(); ++i) {
        const std::string& g = combined.entries[i].group;
        PhaseLabel want = g == "nomad"     ? PhaseLabel::Nomadic
                          : g == "flock"   ? PhaseLabel::Flocking
                                           : PhaseLabel::Stampede;
        if (phases[i] == want) ++agree;
    }

    double t = timer.seconds();
    std::ostringstream detail;
    detail << "mean-DTW ranges stampede [" << format_double(ranges["stampede"].first) << ", "
           << format_double(ranges["stampede"].second) << "], flock ["
           << format_double(ranges["flock"].first) << ", "
           << format_double(ranges["flock"].second) << "], nomad ["
           << format_double(ranges["nomad"].first) << ", "
           << format_double(ranges["nomad"].second) << "]; agreement " << agree << "/75, "
           << fmt_seconds(t) << " < 60s";
    report(disjoint && agree == 75 && t < 60.0,
           "phases separate by mean trajectory distance", detail.str());
}

void criterion_dtw_oracle() {
    Timer timer;
    StreamRng rng(4, 0, 0);
    int checked = 0;
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int dims = 1 + static_cast<int>(rng.next_u64() % 3);
        auto make_seq = [&] {
            std::vector<Vec> seq(1 + rng.next_u64() % 6);
            for (Vec& v : seq) {
                v.resize(dims);
                for (double& x : v) x = rng.uniform(-5.0, 5.0);
            }
            return seq;
        };
        std::vector<Vec> a = make_seq();
        std::vector<Vec> b = make_seq();
        double got = dtw_distance(a, b);
        double want = testsupport::dtw_brute_force(a, b);
        worst = std::max(worst, std::abs(got - want));
        if (std::abs(got - want) <= 1e-9) ++checked;
    }
    double t = timer.seconds();
    report(checked == 200 && t < 5.0, "dtw matches exhaustive path enumeration",
           "200 fuzzed pairs, worst deviation " + format_double(worst) + " <= 1e-9, " +
               fmt_seconds(t) + " < 5s");
}

void criterion_nomad_coverage() {
    Timer timer;
    SimConfig config;
    config.groups = {{"nomad", 100, 0.0}};
    validate(config); // defaults: 20x20 cells, 5000 steps, record every 10

    RunResult result = run(config, 4);
    std::set<std::string> visited;
    for (const Trajectory& traj : result.trajectories)
        for (const TrajectorySample& sample : traj.samples) visited.insert(sample.label);

    BeliefSpace space = make_space(config.space);
    double total = static_cast<double>(space.cell_count());
    double coverage = static_cast<double>(visited.size()) / total;

    int last = config.space.cells_per_axis - 1;
    int corners_hit = 0;
    for (const CellIndex& corner : {CellIndex{0, 0}, CellIndex{0, last}, CellIndex{last, 0},
                                    CellIndex{last, last}})
        if (visited.count(space.label_of(corner))) ++corners_hit;

    double t = timer.seconds();
    report(coverage >= 0.95 && corners_hit == 4 && t < 30.0,
           "nomads cover the belief space",
           format_uint(visited.size()) + "/" + format_double(total) + " cells (" +
               format_double(coverage * 100.0) + "% >= 95%), corners " +
               format_int(corners_hit) + "/4, " + fmt_seconds(t) + " < 30s");
}

void criterion_coverage_collapse() {
    Timer timer;
    // Two reference runs under one protocol, differing only in the horizon.
    // Sparse recording (21 samples per agent over a long run) measures the
    // developed phases: nomads keep landing on fresh cells while the
    // collapsed stampede resamples its own trail.
    auto group_nodes = [](const char* name, double sih) {
        SimConfig config;
        config.groups = {{name, 25, sih}};
        config.steps = 16000;
        config.record_every = 800;
        validate(config);
        RunResult result = run(config, 4);
        double sample_dt = config.dynamics.dt * config.record_every;
        return build_graph(result.trajectories, sample_dt).nodes.size();
    };
    std::size_t nomad_nodes = group_nodes("nomad", 0.0);
    std::size_t stampede_nodes = group_nodes("stampede", kInf);
    double ratio = static_cast<double>(stampede_nodes) / static_cast<double>(nomad_nodes);

    double t = timer.seconds();
    report(ratio <= 0.25, "stampede collapses belief coverage",
           "stampede " + format_uint(stampede_nodes) + " nodes vs nomad " +
               format_uint(nomad_nodes) + " nodes, ratio " + format_double(ratio) +
               " <= 0.25, " + fmt_seconds(t));
}

void criterion_layout_equilibrium() {
    Timer timer;
    Trajectory hop;
    hop.agent_id = 0;
    hop.group = "g";
    hop.samples = {{0, {0.0}, "A"}, {1, {0.0}, "B"}};
    std::vector<Trajectory> trajs{hop};
    BeliefGraph graph = build_graph(trajs, 1.0);

    FrParams params;
    std::vector<double> energy;
    auto layout = fr_layout(graph, params, &energy);

    double k = params.c * std::sqrt(params.area / 2.0);
    double dx = layout.at("A")[0] - layout.at("B")[0];
    double dy = layout.at("A")[1] - layout.at("B")[1];
    double d = std::sqrt(dx * dx + dy * dy);
    double rel = std::abs(d - k) / k;

    bool monotone = true;
    for (std::size_t i = 10; i + 1 < energy.size(); ++i)
        if (energy[i + 1] > energy[i] + 1e-15) monotone = false;

    double t = timer.seconds();
    report(rel <= 0.05 && monotone && t < 1.0, "two-node layout reaches spring equilibrium",
           "separation " + format_double(d) + " vs k " + format_double(k) + " (off by " +
               format_double(rel * 100.0) + "% <= 5%), energy non-increasing after iteration "
               "10: " + (monotone ? "yes" : "no") + ", " + fmt_seconds(t) + " < 1s");
}

std::map<std::string, std::string> read_tree(const std::filesystem::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root))
        if (entry.is_regular_file())
            files[std::filesystem::relative(entry.path(), root).string()] =
                read_file(entry.path().string());
    return files;
}

void run_pipeline(const std::string& config_path, const std::string& root, int workers) {
    std::ostringstream sink;
    cmd_simulate({config_path, root + "/sim", workers}, sink);

    AnalyzeOptions analyze;
    analyze.inputs = {root + "/sim/traj_nomad.tsv", root + "/sim/traj_flock.tsv",
                      root + "/sim/traj_stampede.tsv"};
    analyze.out_dir = root + "/analysis";
    analyze.matrix = true;
    analyze.workers = workers;
    cmd_analyze(analyze, sink);

    MapOptions map_opts;
    map_opts.inputs = analyze.inputs;
    map_opts.out_dir = root + "/map";
    map_opts.fr.iterations = 120;
    cmd_map(map_opts, sink);

    cmd_render({root + "/sim/traj_nomad.tsv", "heatmap", root + "/render/heatmap.svg", 100},
               sink);
    cmd_render({root + "/map/graph_nomad.txt", "graph", root + "/render/graph.svg", 0}, sink);
    cmd_render({root + "/map/overlay.txt", "overlay", root + "/render/overlay.svg", 0}, sink);
    cmd_render({root + "/analysis/profile.tsv", "phases", root + "/render/phases.svg", 0},
               sink);
}

void criterion_pipeline_determinism() {
    Timer timer;
    testsupport::TempDir dir("acceptance_determinism");
    std::string config_path = dir.str("run.cfg");
    write_file(config_path,
               "steps = 300\n"
               "record_every = 10\n"
               "master_seed = 8\n"
               "groups = nomad:10:0, flock:10:" + format_double(kFlockSih) +
                   ", stampede:10:inf\n");

    run_pipeline(config_path, dir.str("a"), 1);
    run_pipeline(config_path, dir.str("b"), 8);

    auto a = read_tree(dir.str("a"));
    auto b = read_tree(dir.str("b"));
    bool same_names = true, same_bytes = true;
    if (a.size() != b.size()) same_names = false;
    for (const auto& [rel, bytes] : a) {
        auto it = b.find(rel);
        if (it == b.end()) {
            same_names = false;
        } else if (it->second != bytes) {
            same_bytes = false;
        }
    }
    double t = timer.seconds();
    report(same_names && same_bytes && !a.empty(),
           "pipeline is byte-deterministic across reruns and workers",
           format_uint(a.size()) + " artifacts, workers 1 vs 8, " +
               (same_names && same_bytes ? "all byte-identical" : "differences found") +
               ", " + fmt_seconds(t));
}

void criterion_invariant_fuzz() {
    Timer timer;
    const int kCases = 10000;
    int heading_bad = 0, slew_bad = 0, bounds_bad = 0, dwell_bad = 0, permute_bad = 0;

    StreamRng rng(9, 0, 0);
    for (int trial = 0; trial < kCases; ++trial) {
        int dims = 1 + static_cast<int>(rng.next_u64() % 4);
        double he = rng.uniform(0.5, 20.0);
        BeliefSpace space(dims, he, 4, 99);

        DynamicsParams params;
        params.max_turn = rng.uniform(0.01, 3.1);
        params.max_speed = rng.uniform(0.1, 1.5);
        params.dt = rng.uniform(0.01, 0.6);

        AgentState agent;
        agent.position.resize(dims);
        for (double& x : agent.position) x = rng.uniform(-he, he);
        agent.heading.resize(dims);
        rng.unit_vector(agent.heading);
        agent.speed = rng.uniform(0.0, params.max_speed);

        Vec desired(dims);
        rng.unit_vector(desired);
        double desired_speed = rng.uniform(0.0, params.max_speed);

        Vec turned = rotate_toward(agent.heading, desired, params.max_turn);
        if (angle_between(agent.heading, turned) > params.max_turn + 1e-9) ++slew_bad;

        AgentState next = step_agent(agent, desired, desired_speed, params, space);
        if (std::abs(norm(next.heading) - 1.0) > 1e-9) ++heading_bad;
        for (int d = 0; d < dims; ++d)
            if (std::abs(next.position[d]) > he) ++bounds_bad;
    }

    StreamRng graph_rng(10, 0, 0);
    const char* pool[] = {"A", "B", "C", "D", "E", "F"};
    for (int trial = 0; trial < kCases; ++trial) {
        int agents = 2 + static_cast<int>(graph_rng.next_u64() % 4);
        std::vector<Trajectory> trajs;
        std::int64_t total_samples = 0;
        for (int id = 0; id < agents; ++id) {
            Trajectory traj;
            traj.agent_id = id;
            traj.group = "g";
            int samples = 1 + static_cast<int>(graph_rng.next_u64() % 12);
            for (int s = 0; s < samples; ++s)
                traj.samples.push_back({s, {0.0}, pool[graph_rng.next_u64() % 6]});
            total_samples += samples;
            trajs.push_back(std::move(traj));
        }
        BeliefGraph graph = build_graph(trajs, 1.0);
        std::int64_t dwell = 0;
        for (const auto& [label, stats] : graph.nodes) dwell += stats.dwell_samples;
        if (dwell != total_samples) ++dwell_bad;

        std::vector<Trajectory> shuffled = trajs;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[graph_rng.next_u64() % i]);
        if (to_graph_text(build_graph(shuffled, 1.0)) != to_graph_text(graph)) ++permute_bad;
    }

    double t = timer.seconds();
    bool ok = heading_bad == 0 && slew_bad == 0 && bounds_bad == 0 && dwell_bad == 0 &&
              permute_bad == 0;
    report(ok, "dynamics and graph invariants hold under fuzz",
           "10^4 cases each: heading-norm " + format_int(heading_bad) + ", slew " +
               format_int(slew_bad) + ", bounds " + format_int(bounds_bad) + ", dwell " +
               format_int(dwell_bad) + ", permutation " + format_int(permute_bad) +
               " violations, " + fmt_seconds(t));
}

void criterion_dimension_exploration() {
    Timer timer;
    std::vector<double> medians;
    for (int dims : {2, 4, 8}) {
        std::vector<double> finals;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            SimConfig config;
            config.space.dims = dims;
            config.groups = {{"flock", 50, kFlockSih}};
            config.steps = 2000;
            config.record_every = 2000;
            config.master_seed = seed;
            validate(config);
            RunResult result = run(config, 4);
            finals.push_back(polarization(result.final_population));
        }
        medians.push_back(median5(finals));
    }
    double t = timer.seconds();
    std::string detail = "median final polarization dims 2/4/8: " +
                         format_double(medians[0]) + " / " + format_double(medians[1]) +
                         " / " + format_double(medians[2]) + ", " + fmt_seconds(t);
    if (medians[0] >= medians[1] && medians[1] >= medians[2])
        report(true, "alignment weakens with dimension", detail);
    else
        report_warn("alignment weakens with dimension (not monotone on this run)", detail);
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        void (*fn)();
    };
    const Criterion criteria[] = {
        {"zero-horizon independence", criterion_zero_horizon_independence},
        {"stampede convergence", criterion_stampede_convergence},
        {"phase separation", criterion_phase_separation},
        {"dtw oracle equivalence", criterion_dtw_oracle},
        {"nomad coverage", criterion_nomad_coverage},
        {"coverage collapse", criterion_coverage_collapse},
        {"layout equilibrium", criterion_layout_equilibrium},
        {"pipeline determinism", criterion_pipeline_determinism},
        {"invariant fuzz", criterion_invariant_fuzz},
        {"dimension exploration", criterion_dimension_exploration},
    };

    for (const Criterion& criterion : criteria) {
        try {
            criterion.fn();
        } catch (const std::exception& e) {
            report(false, criterion.name, std::string("exception: ") + e.what());
        }
    }

    std::cout << "acceptance: " << (10 - g_failures) << "/10 criteria passed\n";
    return g_failures == 0 ? 0 : 1;
}
