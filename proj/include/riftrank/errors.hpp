#pragma once

#include <stdexcept>
#include <string>

namespace riftrank {

// Input data violates a documented invariant or schema rule.
// CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called outside its numeric domain (e.g. duration <= 0).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem / stream failure.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace riftrank
