#pragma once

#include <stdexcept>
#include <string>

namespace fpp {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NotAdjacentError : std::runtime_error {
    explicit NotAdjacentError(const std::string& what) : std::runtime_error(what) {}
};

struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct ThresholdViolation : std::runtime_error {
    explicit ThresholdViolation(const std::string& what) : std::runtime_error(what) {}
};

struct OverflowError : std::runtime_error {
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySearchRegion : std::runtime_error {
    explicit EmptySearchRegion(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fpp
