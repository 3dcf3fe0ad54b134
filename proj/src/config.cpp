#include "bmap/config.hpp"

#include "bmap/errors.hpp"
#include "bmap/hash.hpp"
#include "bmap/text.hpp"

#include <set>
#include <string>

namespace bmap {

namespace {

int to_bounded_int(std::string_view value, std::string_view key) {
    std::int64_t v = 0;
    try {
        v = parse_int(value, key);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
    if (v < -2147483648LL || v > 2147483647LL)
        throw ConfigError(std::string(key) + " out of range: " + std::string(value));
    return static_cast<int>(v);
}

double to_double(std::string_view value, std::string_view key) {
    try {
        return parse_double(value, key);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
}

std::uint64_t to_uint(std::string_view value, std::string_view key) {
    try {
        return parse_uint(value, key);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
}

std::vector<GroupSpec> parse_groups(std::string_view value) {
    std::vector<GroupSpec> groups;
    for (std::string_view entry : split(value, ',')) {
        entry = trim(entry);
        if (entry.empty())
            throw ConfigError("groups: empty entry");
        auto fields = split(entry, ':');
        if (fields.size() != 3)
            throw ConfigError("groups: entry '" + std::string(entry) +
                              "' must be name:count:sih");
        GroupSpec g;
        g.name = std::string(trim(fields[0]));
        g.count = to_bounded_int(fields[1], "groups count");
        g.sih = to_double(fields[2], "groups sih");
        groups.push_back(std::move(g));
    }
    return groups;
}

std::string serialize_groups(const std::vector<GroupSpec>& groups) {
    std::string out;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (i > 0) out += ", ";
        out += groups[i].name;
        out += ':';
        out += format_int(groups[i].count);
        out += ':';
        out += format_double(groups[i].sih);
    }
    return out;
}

} // namespace

SimConfig parse_config(std::string_view text) {
    SimConfig config;
    std::set<std::string, std::less<>> seen;
    int line_no = 0;
    for (std::string_view raw_line : split(text, '\n')) {
        ++line_no;
        std::string_view line = raw_line;
        std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + format_int(line_no) +
                              ": expected key = value, got '" + std::string(line) + "'");
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + format_int(line_no) + ": empty key");
        if (!seen.insert(std::string(key)).second)
            throw ConfigError("duplicate key: " + std::string(key));

        if (key == "dims") config.space.dims = to_bounded_int(value, key);
        else if (key == "half_extent") config.space.half_extent = to_double(value, key);
        else if (key == "cells_per_axis") config.space.cells_per_axis = to_bounded_int(value, key);
        else if (key == "label_seed") config.space.label_seed = to_uint(value, key);
        else if (key == "max_speed") config.dynamics.max_speed = to_double(value, key);
        else if (key == "max_turn") config.dynamics.max_turn = to_double(value, key);
        else if (key == "align_weight") config.dynamics.align_weight = to_double(value, key);
        else if (key == "cohere_weight") config.dynamics.cohere_weight = to_double(value, key);
        else if (key == "separate_weight") config.dynamics.separate_weight = to_double(value, key);
        else if (key == "speed_relax") config.dynamics.speed_relax = to_double(value, key);
        else if (key == "epsilon") config.dynamics.epsilon = to_double(value, key);
        else if (key == "dt") config.dynamics.dt = to_double(value, key);
        else if (key == "max_wander") config.dynamics.max_wander = to_double(value, key);
        else if (key == "groups") config.groups = parse_groups(value);
        else if (key == "steps") config.steps = to_bounded_int(value, key);
        else if (key == "record_every") config.record_every = to_bounded_int(value, key);
        else if (key == "master_seed") config.master_seed = to_uint(value, key);
        else throw ConfigError("unknown key: " + std::string(key));
    }
    if (config.groups.empty())
        throw ConfigError("groups must declare at least one group");
    return config;
}

std::string serialize_config(const SimConfig& c) {
    std::string out;
    auto put = [&out](std::string_view key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    put("dims", format_int(c.space.dims));
    put("half_extent", format_double(c.space.half_extent));
    put("cells_per_axis", format_int(c.space.cells_per_axis));
    put("label_seed", format_uint(c.space.label_seed));
    put("max_speed", format_double(c.dynamics.max_speed));
    put("max_turn", format_double(c.dynamics.max_turn));
    put("align_weight", format_double(c.dynamics.align_weight));
    put("cohere_weight", format_double(c.dynamics.cohere_weight));
    put("separate_weight", format_double(c.dynamics.separate_weight));
    put("speed_relax", format_double(c.dynamics.speed_relax));
    put("epsilon", format_double(c.dynamics.epsilon));
    put("dt", format_double(c.dynamics.dt));
    put("max_wander", format_double(c.dynamics.max_wander));
    put("groups", serialize_groups(c.groups));
    put("steps", format_int(c.steps));
    put("record_every", format_int(c.record_every));
    put("master_seed", format_uint(c.master_seed));
    return out;
}

std::string run_id(const SimConfig& config) {
    return to_hex(fnv1a64(serialize_config(config)));
}

LoadedConfig load_config_file(const std::string& path) {
    std::string raw;
    try {
        raw = read_file(path);
    } catch (const DataError& e) {
        throw ConfigError(e.what()); // unreadable config is a usage error
    }
    LoadedConfig loaded;
    loaded.config = parse_config(raw);
    loaded.run_id = run_id(loaded.config);
    loaded.config_digest = to_hex(fnv1a64(raw));
    return loaded;
}

} // namespace bmap
