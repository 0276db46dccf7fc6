#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace caustic {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// phi_1 == phi_2 in the two-point matching; caller should switch to the small-alpha path
struct CoalescenceError : DomainError {
    using DomainError::DomainError;
};

struct DegeneratePointError : DomainError {
    using DomainError::DomainError;
};

struct SingularAmplitudeError : DomainError {
    using DomainError::DomainError;
};

struct ComplexPhaseError : DomainError {
    using DomainError::DomainError;
};

struct UnsupportedProfileError : DomainError {
    using DomainError::DomainError;
};

struct UndersampledError : PreconditionError {
    UndersampledError(const std::string& what, std::size_t required)
        : PreconditionError(what), required_samples(required) {}
    std::size_t required_samples;
};

}  // namespace caustic
