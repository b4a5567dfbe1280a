#pragma once

#include <stdexcept>
#include <string>

namespace dratta {

/// Bad or inconsistent user configuration (files, CLI values). Maps to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: loss of positive definiteness, ill conditioning,
/// degenerate problem instances. Maps to exit code 2.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dratta
