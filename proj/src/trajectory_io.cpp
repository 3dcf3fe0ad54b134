#include "bmap/trajectory_io.hpp"

#include "bmap/errors.hpp"
#include "bmap/text.hpp"

#include <map>
#include <set>

namespace bmap {

namespace {

constexpr std::string_view kHeaderTag = "#beliefmap-traj v1";

std::string format_header(const TrajectoryFileMeta& meta) {
    std::string h(kHeaderTag);
    h += " run_id=" + meta.run_id;
    h += " config_digest=" + meta.config_digest;
    h += " dims=" + format_int(meta.space.dims);
    h += " half_extent=" + format_double(meta.space.half_extent);
    h += " cells_per_axis=" + format_int(meta.space.cells_per_axis);
    h += " label_seed=" + format_uint(meta.space.label_seed);
    h += " dt=" + format_double(meta.dt);
    h += " record_every=" + format_int(meta.record_every);
    h += '\n';
    return h;
}

TrajectoryFileMeta parse_header(std::string_view line) {
    if (!starts_with(line, kHeaderTag))
        throw DataError("not a trajectory file: missing '" + std::string(kHeaderTag) +
                        "' header");
    TrajectoryFileMeta meta;
    std::set<std::string_view> seen;
    for (std::string_view field : split(line.substr(kHeaderTag.size()), ' ')) {
        field = trim(field);
        if (field.empty()) continue;
        std::size_t eq = field.find('=');
        if (eq == std::string_view::npos)
            throw DataError("malformed trajectory header field: '" + std::string(field) + "'");
        std::string_view key = field.substr(0, eq);
        std::string_view value = field.substr(eq + 1);
        if (!seen.insert(key).second)
            throw DataError("duplicate trajectory header field: " + std::string(key));
        if (key == "run_id") meta.run_id = std::string(value);
        else if (key == "config_digest") meta.config_digest = std::string(value);
        else if (key == "dims") meta.space.dims = static_cast<int>(parse_int(value, key));
        else if (key == "half_extent") meta.space.half_extent = parse_double(value, key);
        else if (key == "cells_per_axis")
            meta.space.cells_per_axis = static_cast<int>(parse_int(value, key));
        else if (key == "label_seed") meta.space.label_seed = parse_uint(value, key);
        else if (key == "dt") meta.dt = parse_double(value, key);
        else if (key == "record_every") meta.record_every = static_cast<int>(parse_int(value, key));
        else throw DataError("unknown trajectory header field: " + std::string(key));
    }
    for (std::string_view required :
         {"run_id", "config_digest", "dims", "half_extent", "cells_per_axis", "label_seed",
          "dt", "record_every"})
        if (!seen.count(required))
            throw DataError("trajectory header missing field: " + std::string(required));
    return meta;
}

} // namespace

std::string format_trajectory_file(const TrajectoryFileMeta& meta,
                                   std::span<const Trajectory> trajectories) {
    std::string out = format_header(meta);
    for (const Trajectory& traj : trajectories) {
        for (const TrajectorySample& sample : traj.samples) {
            out += meta.run_id;
            out += '\t';
            out += format_int(traj.agent_id);
            out += '\t';
            out += traj.group;
            out += '\t';
            out += format_double(traj.sih);
            out += '\t';
            out += format_int(sample.step);
            for (double x : sample.position) {
                out += '\t';
                out += format_double(x);
            }
            out += '\t';
            out += sample.label;
            out += '\n';
        }
    }
    return out;
}

void write_trajectory_file(const std::string& path, const TrajectoryFileMeta& meta,
                           std::span<const Trajectory> trajectories) {
    write_file(path, format_trajectory_file(meta, trajectories));
}

TrajectoryFile parse_trajectory_file(std::string_view text) {
    auto lines = split(text, '\n');
    if (lines.empty() || trim(lines[0]).empty())
        throw DataError("empty trajectory file");

    TrajectoryFile file;
    file.meta = parse_header(lines[0]);
    int dims = file.meta.space.dims;
    std::size_t columns = 6 + static_cast<std::size_t>(dims);

    std::map<int, std::size_t> index_of;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::string_view line = lines[li];
        if (trim(line).empty()) continue;
        auto cols = split(line, '\t');
        if (cols.size() != columns)
            throw DataError("trajectory line " + format_uint(li + 1) + ": expected " +
                            format_uint(columns) + " columns, got " + format_uint(cols.size()));
        if (cols[0] != file.meta.run_id)
            throw DataError("trajectory line " + format_uint(li + 1) +
                            ": run_id does not match header");

        int agent_id = static_cast<int>(parse_int(cols[1], "agent_id"));
        auto [it, inserted] = index_of.try_emplace(agent_id, file.trajectories.size());
        if (inserted) {
            Trajectory traj;
            traj.agent_id = agent_id;
            traj.group = std::string(cols[2]);
            traj.sih = parse_double(cols[3], "sih");
            file.trajectories.push_back(std::move(traj));
        }
        Trajectory& traj = file.trajectories[it->second];
        if (cols[2] != traj.group)
            throw DataError("trajectory line " + format_uint(li + 1) +
                            ": group changed for agent " + format_int(agent_id));

        TrajectorySample sample;
        sample.step = static_cast<int>(parse_int(cols[4], "step"));
        sample.position.reserve(static_cast<std::size_t>(dims));
        for (int d = 0; d < dims; ++d)
            sample.position.push_back(
                parse_double(cols[5 + static_cast<std::size_t>(d)], "position"));
        sample.label = std::string(cols.back());
        if (!traj.samples.empty() && sample.step <= traj.samples.back().step)
            throw DataError("trajectory line " + format_uint(li + 1) +
                            ": steps not strictly increasing for agent " +
                            format_int(agent_id));
        traj.samples.push_back(std::move(sample));
    }
    if (file.trajectories.empty())
        throw DataError("trajectory file has no samples");
    return file;
}

TrajectoryFile read_trajectory_file(const std::string& path) {
    try {
        return parse_trajectory_file(read_file(path));
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

TrajectoryFile read_trajectory_files(std::span<const std::string> paths) {
    if (paths.empty()) throw DataError("no trajectory files given");
    TrajectoryFile merged = read_trajectory_file(paths[0]);
    std::set<int> ids;
    for (const Trajectory& t : merged.trajectories) ids.insert(t.agent_id);
    for (std::size_t i = 1; i < paths.size(); ++i) {
        TrajectoryFile file = read_trajectory_file(paths[i]);
        const TrajectoryFileMeta& a = merged.meta;
        const TrajectoryFileMeta& b = file.meta;
        if (a.space.dims != b.space.dims)
            throw DataError(paths[i] + ": dims mismatch (" + format_int(b.space.dims) +
                            " vs " + format_int(a.space.dims) + ")");
        if (a.space.half_extent != b.space.half_extent ||
            a.space.cells_per_axis != b.space.cells_per_axis ||
            a.space.label_seed != b.space.label_seed)
            throw DataError(paths[i] + ": belief space parameters do not match");
        if (a.dt != b.dt || a.record_every != b.record_every)
            throw DataError(paths[i] + ": sampling stride (dt, record_every) does not match");
        for (Trajectory& t : file.trajectories) {
            if (!ids.insert(t.agent_id).second)
                throw DataError(paths[i] + ": duplicate agent_id " + format_int(t.agent_id));
            merged.trajectories.push_back(std::move(t));
        }
    }
    return merged;
}

} // namespace bmap
