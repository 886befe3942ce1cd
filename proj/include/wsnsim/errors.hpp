#pragma once

#include <stdexcept>
#include <string>

namespace wsnsim {

// Bad crisp inputs, unknown ids, malformed arguments.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Configuration file / override problems. Exit code 2 at the CLI.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem problems. Exit code 3 at the CLI.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wsnsim
