#pragma once

#include <stdexcept>
#include <string>

namespace mappergpt {

/// Malformed input or contract violation: bad file contents, invalid
/// identifiers, out-of-range values. Maps to exit code 2 in the CLI.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mappergpt
