#pragma once

#include "bmap/dynamics.hpp"
#include "bmap/space.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bmap {

struct SpaceParams {
    int dims = 2;
    double half_extent = 10.0;
    int cells_per_axis = 20;
    std::uint64_t label_seed = 12345;
};

struct GroupSpec {
    std::string name;
    int count = 0;
    double sih = 0; // infinity = unbounded horizon
};

struct SimConfig {
    SpaceParams space;
    DynamicsParams dynamics;
    std::vector<GroupSpec> groups;
    int steps = 5000;
    int record_every = 10;
    std::uint64_t master_seed = 1;
};

struct TrajectorySample {
    int step;
    Vec position;
    std::string label;
};

struct Trajectory {
    int agent_id = 0;
    std::string group;
    double sih = 0;
    std::vector<TrajectorySample> samples;
};

struct RunResult {
    std::vector<Trajectory> trajectories; // one per agent, id-ascending
    std::vector<AgentState> final_population;
};

// Throws ConfigError naming the offending field.
void validate(const SimConfig& config);

BeliefSpace make_space(const SpaceParams& params);

// Agents numbered 0..n-1 across groups in declaration order. Position
// uniform over the hypercube, heading uniform on the unit sphere, speed
// uniform in [0, max_speed]; all draws come from the per-agent stream
// (master_seed, agent_id, init purpose), so one agent's state never depends
// on how many others exist.
std::vector<AgentState> init_population(const SimConfig& config, const BeliefSpace& space);

// Synchronous double-buffered step loop over an explicit initial population.
// Wander draws come from per-agent streams (master_seed, agent_id, wander
// purpose). Records step 0 plus every record_every-th step. Results are
// bit-identical for any worker count.
RunResult run_population(const BeliefSpace& space, const DynamicsParams& params,
                         std::vector<AgentState> initial, int steps, int record_every,
                         std::uint64_t master_seed, int workers = 1);

RunResult run(const SimConfig& config, int workers = 1);

} // namespace bmap
