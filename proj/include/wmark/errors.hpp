#pragma once

#include <stdexcept>
#include <string>

namespace wmark {

/// Bad arguments, bad config, contract violations. CLI exit code 1.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Unreadable, unwritable or malformed files. CLI exit code 2.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wmark
