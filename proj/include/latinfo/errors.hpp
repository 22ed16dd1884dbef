#pragma once

#include <stdexcept>
#include <string>

namespace latinfo {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments: out-of-range orders, mismatched partitions, unknown columns.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Malformed or unreadable input data.
class InputError : public Error {
public:
    using Error::Error;
};

// An estimator precondition failed (k too large, duplicate points, ...).
class EstimationError : public Error {
public:
    using Error::Error;
    EstimationError(const std::string& message, std::string term_context);

    const std::string& term_context() const noexcept { return term_context_; }

private:
    std::string term_context_;
};

enum ExitCode : int {
    kExitOk = 0,
    kExitValidationFailed = 1,
    kExitInputError = 2,
    kExitEstimationError = 3,
};

}  // namespace latinfo
