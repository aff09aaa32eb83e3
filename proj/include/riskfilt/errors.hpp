#ifndef RISKFILT_ERRORS_HPP
#define RISKFILT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace riskfilt {

// Failure taxonomy shared by the library and the CLI exit codes:
//   Validation -> bad inputs (exit 1)
//   Condition  -> a solvability condition fails for this model/mu (exit 2)
//   Numeric    -> overflow / NaN reached during computation (exit 3)
class Error : public std::runtime_error {
public:
    enum class Kind { Validation, Condition, Numeric };

    Error(Kind kind, std::string code, const std::string& message)
        : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

    Kind kind() const { return kind_; }
    const std::string& code() const { return code_; }

private:
    Kind kind_;
    std::string code_;
};

class ValidationError : public Error {
public:
    ValidationError(std::string code, const std::string& message)
        : Error(Kind::Validation, std::move(code), message) {}
};

class ConditionError : public Error {
public:
    ConditionError(std::string code, const std::string& message)
        : Error(Kind::Condition, std::move(code), message) {}
};

class NumericError : public Error {
public:
    NumericError(std::string code, const std::string& message)
        : Error(Kind::Numeric, std::move(code), message) {}
};

}  // namespace riskfilt

#endif
