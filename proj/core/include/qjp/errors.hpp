#pragma once

#include <stdexcept>
#include <string>

namespace qjp {

// Root of the library's exception hierarchy.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotHermitian : Error {
    explicit NotHermitian(const std::string& msg) : Error(msg) {}
};

struct DimMismatch : Error {
    explicit DimMismatch(const std::string& msg) : Error(msg) {}
};

struct DimensionLimit : Error {
    explicit DimensionLimit(const std::string& msg) : Error(msg) {}
};

struct AliasError : Error {
    explicit AliasError(const std::string& msg) : Error(msg) {}
};

struct ResolutionError : Error {
    explicit ResolutionError(const std::string& msg) : Error(msg) {}
};

struct IndefiniteConditioning : Error {
    explicit IndefiniteConditioning(const std::string& msg) : Error(msg) {}
};

struct DegenerateConditioning : Error {
    explicit DegenerateConditioning(const std::string& msg) : Error(msg) {}
};

struct OrthogonalSelection : Error {
    explicit OrthogonalSelection(const std::string& msg) : Error(msg) {}
};

struct EigenvectorInput : Error {
    explicit EigenvectorInput(const std::string& msg) : Error(msg) {}
};

struct TrivialOperator : Error {
    explicit TrivialOperator(const std::string& msg) : Error(msg) {}
};

struct SingularTransform : Error {
    explicit SingularTransform(const std::string& msg) : Error(msg) {}
};

struct StepTooLarge : Error {
    explicit StepTooLarge(const std::string& msg) : Error(msg) {}
};

struct MarginalViolation : Error {
    explicit MarginalViolation(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

} // namespace qjp
