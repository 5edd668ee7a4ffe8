#ifndef QUADALG_ERRORS_HPP
#define QUADALG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace quadalg {

// All library errors derive from Error; `kind` is a stable machine-readable
// tag used by the CLI to build error objects and pick exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define QUADALG_ERROR(Name, tag)                                        \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& msg) : Error(tag, msg) {}      \
    }

QUADALG_ERROR(DivisionByZero, "DivisionByZero");
QUADALG_ERROR(DivergentLimit, "DivergentLimit");
QUADALG_ERROR(ExponentOverflow, "ExponentOverflow");
QUADALG_ERROR(ParseError, "ParseError");
QUADALG_ERROR(ValidationError, "ValidationError");
QUADALG_ERROR(ChartMismatch, "ChartMismatch");
QUADALG_ERROR(GradingViolation, "GradingViolation");
QUADALG_ERROR(DegenerateCasimir, "DegenerateCasimir");
QUADALG_ERROR(NotAQuadraticAlgebra, "NotAQuadraticAlgebra");
QUADALG_ERROR(SquareRootOutsideField, "SquareRootOutsideField");
QUADALG_ERROR(SingularStackelMatrix, "SingularStackelMatrix");
QUADALG_ERROR(UnknownLabel, "UnknownLabel");
QUADALG_ERROR(HypothesisNotMet, "HypothesisNotMet");
QUADALG_ERROR(MissingWitness, "MissingWitness");

#undef QUADALG_ERROR

} // namespace quadalg

#endif
