#pragma once

#include "bmap/engine.hpp"

#include <string>
#include <string_view>

namespace bmap {

// Config files are flat `key = value` lines; '#' starts a comment and blank
// lines are skipped. Keys mirror the SimConfig field names:
//   dims, half_extent, cells_per_axis, label_seed,
//   max_speed, max_turn, align_weight, cohere_weight, separate_weight,
//   speed_relax, epsilon, dt, max_wander,
//   groups, steps, record_every, master_seed
// `groups` holds comma-separated name:count:sih entries; sih accepts "inf".
// Unknown or duplicate keys are errors. Omitted keys keep their defaults.
SimConfig parse_config(std::string_view text);

// Canonical form: every key once, fixed order, shortest round-trip numbers.
// parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const SimConfig& config);

// Content hash of the canonical serialization, as 16 hex digits.
std::string run_id(const SimConfig& config);

struct LoadedConfig {
    SimConfig config;
    std::string run_id;        // hash of the canonical serialization
    std::string config_digest; // hash of the raw file bytes
};

LoadedConfig load_config_file(const std::string& path);

} // namespace bmap
