#pragma once

#include <stdexcept>
#include <string>

namespace chaosbound {

/// Precondition violated by the caller (bad index, negative order, ...).
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Inputs are well formed but outside the regime where a result exists
/// (e.g. H > 3/4 for the Gaussian bounds, singular covariance).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Computation would exceed a fixed size cap (tensor order, dense size).
class CapacityError : public std::length_error {
public:
    explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

}  // namespace chaosbound
