#pragma once
#include <stdexcept>
#include <string>

namespace vcselcov {

/// Malformed or inconsistent configuration input.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Geometrically invalid request (degenerate vectors, heights outside the room, ...).
struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

/// No noise level in the sweep fits the target table acceptably.
struct CalibrationError : std::runtime_error {
    explicit CalibrationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vcselcov
