#pragma once

#include "bmap/engine.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bmap {

// Run-level metadata carried in the trajectory file header line so that
// downstream commands can rebuild the space and the time base without the
// original config file.
struct TrajectoryFileMeta {
    std::string run_id;
    std::string config_digest;
    SpaceParams space;
    double dt = 0.1;
    int record_every = 1;
};

// One sample per line, tab-separated:
//   run_id  agent_id  group  sih  step  p0 .. p{dims-1}  label
// preceded by one header line with the metadata above. Numbers use
// shortest round-trip formatting, so write -> read -> write reproduces the
// file byte for byte.
std::string format_trajectory_file(const TrajectoryFileMeta& meta,
                                   std::span<const Trajectory> trajectories);

void write_trajectory_file(const std::string& path, const TrajectoryFileMeta& meta,
                           std::span<const Trajectory> trajectories);

struct TrajectoryFile {
    TrajectoryFileMeta meta;
    std::vector<Trajectory> trajectories; // in file order of first appearance
};

TrajectoryFile parse_trajectory_file(std::string_view text); // throws DataError
TrajectoryFile read_trajectory_file(const std::string& path);

// Concatenates the agents of several files after checking that their
// metadata agrees (same run shape: dims, space, dt, record_every).
// Duplicate agent ids across files are an error.
TrajectoryFile read_trajectory_files(std::span<const std::string> paths);

} // namespace bmap
