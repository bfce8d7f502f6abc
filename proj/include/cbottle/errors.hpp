#pragma once

#include <stdexcept>
#include <string>

namespace cbottle {

// Bad or inconsistent user input (config file, flags, loop geometry).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A computation failed its own consistency requirements (no bracket,
// transport broke, non-integral holonomy, ...).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem problems: missing output directory, refusal to overwrite.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cbottle
