#pragma once

#include <stdexcept>
#include <string>

namespace ghsgls {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define GHSGLS_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                     \
    public:                                                         \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

GHSGLS_DEFINE_ERROR(DivisionByZero);
GHSGLS_DEFINE_ERROR(NoSolution);
GHSGLS_DEFINE_ERROR(OddityViolated);
GHSGLS_DEFINE_ERROR(NotFound);
GHSGLS_DEFINE_ERROR(ZeroScale);
GHSGLS_DEFINE_ERROR(PointNotOnCurve);
GHSGLS_DEFINE_ERROR(InvalidDivisor);
GHSGLS_DEFINE_ERROR(InvalidCurve);
GHSGLS_DEFINE_ERROR(TooLarge);
GHSGLS_DEFINE_ERROR(NoEigenvalue);
GHSGLS_DEFINE_ERROR(GenerationFailed);
GHSGLS_DEFINE_ERROR(Unverifiable);
GHSGLS_DEFINE_ERROR(InvariantError);
GHSGLS_DEFINE_ERROR(InternalError);
GHSGLS_DEFINE_ERROR(BudgetExhausted);

#undef GHSGLS_DEFINE_ERROR

class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("ParseError: line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace ghsgls
