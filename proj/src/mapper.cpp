#include "bmap/mapper.hpp"

#include "bmap/errors.hpp"
#include "bmap/rng.hpp"
#include "bmap/text.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bmap {

double mean_dwell_time(const BeliefGraph& graph, const NodeStats& stats) {
    if (stats.unique_visitors <= 0) return 0;
    return static_cast<double>(stats.dwell_samples) /
           static_cast<double>(stats.unique_visitors) * graph.sample_dt;
}

BeliefGraph build_graph(std::span<const Trajectory> trajectories, double sample_dt) {
    if (trajectories.empty()) throw DataError("graph construction needs >= 1 trajectory");
    if (!(sample_dt > 0))
        throw DataError("sample_dt must be > 0, got " + format_double(sample_dt));

    BeliefGraph graph;
    graph.sample_dt = sample_dt;
    std::map<std::string, std::set<int>> visitors;
    for (const Trajectory& traj : trajectories) {
        const std::string* prev = nullptr;
        for (const TrajectorySample& sample : traj.samples) {
            graph.nodes[sample.label].dwell_samples += 1;
            visitors[sample.label].insert(traj.agent_id);
            if (prev != nullptr && *prev != sample.label) {
                EdgeKey key = *prev <= sample.label
                                  ? EdgeKey(*prev, sample.label)
                                  : EdgeKey(sample.label, *prev);
                graph.edges[key] += 1;
            }
            prev = &sample.label;
        }
    }
    for (auto& [label, stats] : graph.nodes)
        stats.unique_visitors = static_cast<std::int64_t>(visitors[label].size());
    return graph;
}

std::map<std::string, std::array<double, 2>> fr_layout(const BeliefGraph& graph,
                                                       const FrParams& params,
                                                       std::vector<double>* energy_trace) {
    if (graph.nodes.empty()) throw DataError("layout needs >= 1 node");
    if (params.iterations < 1)
        throw ConfigError("iterations must be >= 1, got " + format_int(params.iterations));
    if (!(params.area > 0))
        throw ConfigError("area must be > 0, got " + format_double(params.area));
    if (!(params.c > 0))
        throw ConfigError("c must be > 0, got " + format_double(params.c));
    if (!(params.initial_temperature > 0))
        throw ConfigError("initial_temperature must be > 0, got " +
                          format_double(params.initial_temperature));
    if (!(params.cooling > 0 && params.cooling < 1))
        throw ConfigError("cooling must be in (0, 1), got " + format_double(params.cooling));

    std::size_t n = graph.nodes.size();
    std::vector<const std::string*> labels;
    labels.reserve(n);
    for (const auto& [label, stats] : graph.nodes) labels.push_back(&label);

    std::map<std::string, std::size_t> label_index;
    for (std::size_t i = 0; i < n; ++i) label_index[*labels[i]] = i;

    double frame = std::sqrt(params.area);
    double k = params.c * std::sqrt(params.area / static_cast<double>(n));

    StreamRng rng(params.layout_seed, 0, 3);
    std::vector<std::array<double, 2>> pos(n);
    for (std::size_t i = 0; i < n; ++i)
        pos[i] = {rng.uniform01() * frame, rng.uniform01() * frame};

    // Exact coincidences would leave the repulsive direction undefined;
    // separate them by an index-scaled nudge before any force evaluation.
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (pos[i][0] == pos[j][0] && pos[i][1] == pos[j][1]) {
                pos[i][0] += 1e-9 * static_cast<double>(i);
                pos[i][1] += 1e-9 * static_cast<double>(i);
                break;
            }

    std::vector<std::pair<std::size_t, std::size_t>> edge_index;
    edge_index.reserve(graph.edges.size());
    for (const auto& [key, count] : graph.edges) {
        auto a = label_index.find(key.first);
        auto b = label_index.find(key.second);
        if (a == label_index.end() || b == label_index.end())
            throw DataError("edge endpoint missing from nodes: " + key.first + " -- " +
                            key.second);
        edge_index.emplace_back(a->second, b->second);
    }

    double t = params.initial_temperature;
    std::vector<std::array<double, 2>> disp(n);
    for (int iter = 0; iter < params.iterations; ++iter) {
        for (auto& d : disp) d = {0.0, 0.0};

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double dx = pos[i][0] - pos[j][0];
                double dy = pos[i][1] - pos[j][1];
                double d = std::max(std::sqrt(dx * dx + dy * dy), 1e-12);
                double f = (k * k / d) / d; // k^2/d, divided by d to scale (dx,dy)
                disp[i][0] += dx * f;
                disp[i][1] += dy * f;
                disp[j][0] -= dx * f;
                disp[j][1] -= dy * f;
            }
        }
        for (auto [u, v] : edge_index) {
            double dx = pos[u][0] - pos[v][0];
            double dy = pos[u][1] - pos[v][1];
            double d = std::max(std::sqrt(dx * dx + dy * dy), 1e-12);
            double f = d / k; // (d^2/k) / d, scaling the offset components
            disp[u][0] -= dx * f;
            disp[u][1] -= dy * f;
            disp[v][0] += dx * f;
            disp[v][1] += dy * f;
        }

        double energy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double len = std::sqrt(disp[i][0] * disp[i][0] + disp[i][1] * disp[i][1]);
            if (len > 0) {
                pos[i][0] += disp[i][0] / len * t;
                pos[i][1] += disp[i][1] / len * t;
                energy += t * t;
            }
        }
        if (energy_trace != nullptr) energy_trace->push_back(energy);
        t *= params.cooling;
    }

    std::map<std::string, std::array<double, 2>> layout;
    for (std::size_t i = 0; i < n; ++i) layout[*labels[i]] = pos[i];
    return layout;
}

OverlayMap overlay_map(const BeliefGraph& base,
                       std::span<const std::pair<std::string, BeliefGraph>> others) {
    if (base.layout.empty()) throw DataError("overlay requires a base graph with a layout");
    for (const auto& [label, stats] : base.nodes)
        if (!base.layout.count(label))
            throw DataError("base layout missing node: " + label);

    OverlayMap overlay;
    overlay.base = base;
    overlay.groups.reserve(others.size());
    for (const auto& [name, graph] : others) overlay.groups.push_back(name);
    overlay.unmapped_dwell.assign(others.size(), 0);

    for (const auto& [label, stats] : base.nodes)
        overlay.channels[label].assign(others.size(), OverlayChannel{});

    for (std::size_t g = 0; g < others.size(); ++g) {
        for (const auto& [label, stats] : others[g].second.nodes) {
            auto it = overlay.channels.find(label);
            if (it == overlay.channels.end()) {
                overlay.unmapped_dwell[g] += stats.dwell_samples;
                continue;
            }
            it->second[g].dwell_samples = stats.dwell_samples;
            it->second[g].visitors = stats.unique_visitors;
        }
    }
    return overlay;
}

} // namespace bmap
