#pragma once

#include <stdexcept>
#include <string>

namespace thermalnoon {

// Precondition violations on user-supplied arguments.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Request exceeds the size an evaluator is allowed to handle.
class CapacityExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fock-space cutoff too small for the requested operation.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Projection onto a detection event that has zero probability.
class ZeroProbabilityEvent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AccumulatorOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

}  // namespace thermalnoon
