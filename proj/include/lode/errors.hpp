#pragma once

#include <stdexcept>
#include <string>

namespace lode {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

#define LODE_ERROR(Name)                                                   \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
        const char* kind() const noexcept override { return #Name; }       \
    };

LODE_ERROR(DivisionByZeroSeries)
LODE_ERROR(BranchAmbiguity)
LODE_ERROR(SingularJacobian)
LODE_ERROR(NoRootAtOrigin)
LODE_ERROR(OrderExhausted)
LODE_ERROR(EssentialSingularity)
LODE_ERROR(DegenerateRatio)
LODE_ERROR(ExactnessRequired)
LODE_ERROR(DegenerateInput)
LODE_ERROR(ResonantObstruction)
LODE_ERROR(ResidualTooLarge)
LODE_ERROR(UndecidableWithoutStokes)
LODE_ERROR(PoleOnPath)
LODE_ERROR(ToleranceNotMet)
LODE_ERROR(DivergentTerm)
LODE_ERROR(ParseError)

#undef LODE_ERROR

}  // namespace lode
