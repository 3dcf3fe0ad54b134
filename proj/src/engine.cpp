#include "bmap/engine.hpp"

#include "bmap/errors.hpp"
#include "bmap/rng.hpp"
#include "bmap/text.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace bmap {

void validate(const SimConfig& config) {
    const DynamicsParams& d = config.dynamics;
    make_space(config.space); // space field checks

    if (!(d.max_speed > 0) || !std::isfinite(d.max_speed))
        throw ConfigError("max_speed must be finite and > 0, got " + format_double(d.max_speed));
    if (!(d.max_turn > 0) || !(d.max_turn <= 3.14159265358979323846))
        throw ConfigError("max_turn must be in (0, pi], got " + format_double(d.max_turn));
    for (auto [name, value] : {std::pair<const char*, double>{"align_weight", d.align_weight},
                               {"cohere_weight", d.cohere_weight},
                               {"separate_weight", d.separate_weight}})
        if (!(value >= 0) || !std::isfinite(value))
            throw ConfigError(std::string(name) + " must be finite and >= 0, got " +
                              format_double(value));
    if (!(d.speed_relax >= 0 && d.speed_relax <= 1))
        throw ConfigError("speed_relax must be in [0, 1], got " + format_double(d.speed_relax));
    if (!(d.epsilon > 0) || !std::isfinite(d.epsilon))
        throw ConfigError("epsilon must be finite and > 0, got " + format_double(d.epsilon));
    if (!(d.dt > 0) || !std::isfinite(d.dt))
        throw ConfigError("dt must be finite and > 0, got " + format_double(d.dt));
    if (!(d.max_wander >= 0) || !std::isfinite(d.max_wander))
        throw ConfigError("max_wander must be finite and >= 0, got " + format_double(d.max_wander));
    if (d.max_speed * d.dt >= 2.0 * config.space.half_extent)
        throw ConfigError("max_speed * dt must be < 2 * half_extent (reflection contract): " +
                          format_double(d.max_speed) + " * " + format_double(d.dt) +
                          " vs half_extent " + format_double(config.space.half_extent));

    if (config.groups.empty())
        throw ConfigError("groups must declare at least one group");
    for (const GroupSpec& g : config.groups) {
        if (g.name.empty() ||
            g.name.find_first_not_of("abcdefghijklmnopqrstuvwxyz"
                                     "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-") != std::string::npos)
            throw ConfigError("groups: name '" + g.name +
                              "' must be non-empty and use only [A-Za-z0-9_-]");
        if (g.count < 1)
            throw ConfigError("groups: count for '" + g.name + "' must be >= 1, got " +
                              format_int(g.count));
        if (std::isnan(g.sih) || g.sih < 0)
            throw ConfigError("groups: sih for '" + g.name + "' must be >= 0 or inf, got " +
                              format_double(g.sih));
    }
    if (config.steps < 1)
        throw ConfigError("steps must be >= 1, got " + format_int(config.steps));
    if (config.record_every < 1)
        throw ConfigError("record_every must be >= 1, got " + format_int(config.record_every));
}

BeliefSpace make_space(const SpaceParams& params) {
    return BeliefSpace(params.dims, params.half_extent, params.cells_per_axis,
                       params.label_seed);
}

std::vector<AgentState> init_population(const SimConfig& config, const BeliefSpace& space) {
    std::vector<AgentState> population;
    int id = 0;
    for (const GroupSpec& group : config.groups) {
        for (int k = 0; k < group.count; ++k, ++id) {
            StreamRng rng(config.master_seed, static_cast<std::uint64_t>(id), kPurposeInit);
            AgentState agent;
            agent.id = id;
            agent.group = group.name;
            agent.sih = group.sih;
            agent.position.resize(static_cast<std::size_t>(space.dims()));
            for (double& x : agent.position)
                x = rng.uniform(-space.half_extent(), space.half_extent());
            agent.heading.resize(static_cast<std::size_t>(space.dims()));
            rng.unit_vector(agent.heading);
            agent.speed = rng.uniform(0.0, config.dynamics.max_speed);
            population.push_back(std::move(agent));
        }
    }
    return population;
}

namespace {

void record_sample(const BeliefSpace& space, const AgentState& agent, int step,
                   Trajectory& out) {
    TrajectorySample sample;
    sample.step = step;
    sample.position = agent.position;
    sample.label = space.label_of(space.cell_of(agent.position));
    out.samples.push_back(std::move(sample));
}

} // namespace

RunResult run_population(const BeliefSpace& space, const DynamicsParams& params,
                         std::vector<AgentState> initial, int steps, int record_every,
                         std::uint64_t master_seed, int workers) {
    if (steps < 1) throw ConfigError("steps must be >= 1, got " + format_int(steps));
    if (record_every < 1)
        throw ConfigError("record_every must be >= 1, got " + format_int(record_every));
    if (params.max_speed * params.dt >= 2.0 * space.half_extent())
        throw ConfigError("max_speed * dt must be < 2 * half_extent (reflection contract)");

    std::size_t n = initial.size();
    std::vector<AgentState> current = std::move(initial);
    std::vector<AgentState> next(current);

    std::vector<StreamRng> wander;
    wander.reserve(n);
    for (const AgentState& agent : current)
        wander.emplace_back(master_seed, static_cast<std::uint64_t>(agent.id), kPurposeWander);

    RunResult result;
    result.trajectories.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.trajectories[i].agent_id = current[i].id;
        result.trajectories[i].group = current[i].group;
        result.trajectories[i].sih = current[i].sih;
        result.trajectories[i].samples.reserve(static_cast<std::size_t>(steps / record_every) + 1);
        record_sample(space, current[i], 0, result.trajectories[i]);
    }

    // Each agent's new state depends only on the previous generation plus its
    // private wander stream, so splitting the index range across threads
    // cannot change any value.
    auto update_range = [&](std::size_t begin, std::size_t end) {
        std::vector<Neighbor> scratch;
        for (std::size_t i = begin; i < end; ++i) {
            neighbors_within(current[i], current, scratch);
            Influence desired = influence(current[i], scratch, params);
            if (scratch.empty() && params.max_wander > 0)
                apply_wander(desired.heading, wander[i], space.dims(), params.max_wander);
            next[i] = step_agent(current[i], desired.heading, desired.speed, params, space);
        }
    };

    int effective_workers = std::max(1, workers);
    effective_workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(effective_workers), n));

    for (int step = 1; step <= steps; ++step) {
        if (effective_workers == 1) {
            update_range(0, n);
        } else {
            std::vector<std::thread> threads;
            threads.reserve(static_cast<std::size_t>(effective_workers));
            std::size_t chunk = (n + static_cast<std::size_t>(effective_workers) - 1) /
                                static_cast<std::size_t>(effective_workers);
            for (int w = 0; w < effective_workers; ++w) {
                std::size_t begin = static_cast<std::size_t>(w) * chunk;
                std::size_t end = std::min(n, begin + chunk);
                if (begin >= end) break;
                threads.emplace_back(update_range, begin, end);
            }
            for (std::thread& t : threads) t.join();
        }
        current.swap(next);
        if (step % record_every == 0)
            for (std::size_t i = 0; i < n; ++i)
                record_sample(space, current[i], step, result.trajectories[i]);
    }

    result.final_population = std::move(current);
    return result;
}

RunResult run(const SimConfig& config, int workers) {
    validate(config);
    BeliefSpace space = make_space(config.space);
    std::vector<AgentState> population = init_population(config, space);
    return run_population(space, config.dynamics, std::move(population), config.steps,
                          config.record_every, config.master_seed, workers);
}

} // namespace bmap
