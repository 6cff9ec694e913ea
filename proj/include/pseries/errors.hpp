#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pseries {

struct VarSetMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LengthMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyVarSet : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyList : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotInvertible : std::domain_error {
    using std::domain_error::domain_error;
};

struct GeneratorDegreeMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

struct VariableClash : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct NotPrepared : std::domain_error {
    using std::domain_error::domain_error;
};

// Carries the rational-irreducible residual (rendered) that blocked factorization.
struct RootsNotRational : std::domain_error {
    std::string residual;
    RootsNotRational(const std::string& msg, std::string res)
        : std::domain_error(msg), residual(std::move(res)) {}
};

struct LeadingCoefficientNotUnit : std::domain_error {
    using std::domain_error::domain_error;
};

struct SyntaxError : std::invalid_argument {
    std::size_t offset;
    std::string expected;
    SyntaxError(const std::string& msg, std::size_t off, std::string exp)
        : std::invalid_argument(msg), offset(off), expected(std::move(exp)) {}
};

struct UnknownVariable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CapMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace pseries
