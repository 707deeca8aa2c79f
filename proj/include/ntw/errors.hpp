#pragma once

#include <stdexcept>
#include <string>

namespace ntw {

/// Base class of every domain error raised by the toolkit.
///
/// Each subclass carries a stable short name (used by the command line
/// front end when reporting failures) together with a human readable
/// message.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(message), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define NTW_DEFINE_ERROR(Type)                                                \
    class Type : public Error {                                               \
    public:                                                                   \
        explicit Type(const std::string& message) : Error(#Type, message) {}  \
    };

NTW_DEFINE_ERROR(InvalidInput)
NTW_DEFINE_ERROR(InvalidSupport)
NTW_DEFINE_ERROR(DegenerateHull)
NTW_DEFINE_ERROR(DegenerateSupport)
NTW_DEFINE_ERROR(UnsupportedDimension)
NTW_DEFINE_ERROR(BudgetExceeded)
NTW_DEFINE_ERROR(NegativeMultiplicity)
NTW_DEFINE_ERROR(MethodDisagreement)
NTW_DEFINE_ERROR(InvalidFaceData)
NTW_DEFINE_ERROR(UnsupportedCornerConfiguration)
NTW_DEFINE_ERROR(NegativeAssembledWeight)
NTW_DEFINE_ERROR(AssemblyInconsistent)
NTW_DEFINE_ERROR(NegativeHodgeNumber)
NTW_DEFINE_ERROR(UnsupportedN)
NTW_DEFINE_ERROR(InsufficientMultiplicity)
NTW_DEFINE_ERROR(NotFound)
NTW_DEFINE_ERROR(UnsupportedField)
NTW_DEFINE_ERROR(CoefficientVanishes)
NTW_DEFINE_ERROR(DegeneratePolynomial)
NTW_DEFINE_ERROR(BoundViolated)

#undef NTW_DEFINE_ERROR

}  // namespace ntw
