#pragma once

#include <string>

namespace dichro {

/// Outcome of a structural check, with a human-readable reason on failure.
struct ValidationResult {
    bool ok = true;
    std::string reason;

    explicit operator bool() const { return ok; }
};

}  // namespace dichro
