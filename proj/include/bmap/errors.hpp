#pragma once

#include <stdexcept>
#include <string>

namespace bmap {

// Invalid configuration: bad parameter values, malformed config text,
// unknown keys. Maps to process exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid or inconsistent data files: missing inputs, corrupt trajectory
// or graph files, mismatched run metadata. Maps to process exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bmap
