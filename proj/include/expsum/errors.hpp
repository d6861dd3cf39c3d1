#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace expsum {

// Thrown when a Gram factorization meets a pivot too small for a
// trustworthy solve. Carries the index of the offending pivot so the
// caller can tell which basis function collapsed onto the others.
class IllConditionedBasis : public std::runtime_error {
public:
    IllConditionedBasis(std::size_t pivot_index, double pivot, double scale)
        : std::runtime_error("ill-conditioned basis: pivot " +
                             std::to_string(pivot_index) + " is " +
                             std::to_string(pivot) + " against diagonal scale " +
                             std::to_string(scale)),
          pivot_index_(pivot_index) {}

    std::size_t pivot_index() const noexcept { return pivot_index_; }

private:
    std::size_t pivot_index_;
};

// Thrown for sampled-signal data that violates the grid contract
// (non-uniform spacing, even point count, wrong endpoints, ...).
class MalformedSignal : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a computed quantity violates an internal contract by more
// than rounding slack. Indicates a bug, not bad input.
class InternalConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace expsum
