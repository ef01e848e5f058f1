#ifndef HALINSTAR_ERRORS_HPP
#define HALINSTAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace halinstar {

// Root of every exception thrown by the library. The CLI maps InputError
// subclasses to exit code 2 and everything else to an internal failure.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class InvalidSpec : public InputError {
public:
    using InputError::InputError;
};

class InvalidGraph : public InputError {
public:
    using InputError::InputError;
};

class InvalidColoring : public InputError {
public:
    using InputError::InputError;
};

class PartialColoring : public InvalidColoring {
public:
    using InvalidColoring::InvalidColoring;
};

class InvalidConfig : public InputError {
public:
    using InputError::InputError;
};

// Internal construction failures. The constructions never reach these on
// valid input, so seeing one means a bug, not bad input.
class ExpansionFailed : public Error {
public:
    using Error::Error;
};

class ReductionUnavailable : public Error {
public:
    using Error::Error;
};

class MalformedReduction : public Error {
public:
    using Error::Error;
};

class UnreachableContext : public Error {
public:
    using Error::Error;
};

class LimitExceeded : public Error {
public:
    explicit LimitExceeded(unsigned long long nodes)
        : Error("search node limit exceeded after " + std::to_string(nodes) + " nodes"), nodes_(nodes) {}

    unsigned long long nodes() const noexcept { return nodes_; }

private:
    unsigned long long nodes_;
};

}  // namespace halinstar

#endif  // HALINSTAR_ERRORS_HPP
