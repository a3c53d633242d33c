#pragma once

#include <stdexcept>
#include <string>

namespace blaine {

// Numerical failures map to CLI exit code 1, validation failures to 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define BLAINE_ERROR(Name, Base)                                   \
    class Name : public Base {                                     \
    public:                                                        \
        explicit Name(const std::string& what) : Base(#Name ": " + what) {} \
    };

BLAINE_ERROR(PoleOnPath, NumericalError)
BLAINE_ERROR(NoConvergence, NumericalError)
BLAINE_ERROR(StepUnderflow, NumericalError)
BLAINE_ERROR(NotNormalized, NumericalError)
BLAINE_ERROR(PoleAt, NumericalError)
BLAINE_ERROR(CriticalPoint, NumericalError)
BLAINE_ERROR(ZeroOfE, NumericalError)
BLAINE_ERROR(ClusteringDetected, NumericalError)
BLAINE_ERROR(BoundaryZero, NumericalError)
BLAINE_ERROR(Overflow, NumericalError)
BLAINE_ERROR(TooFewZeros, NumericalError)
BLAINE_ERROR(DegenerateJacobian, NumericalError)

BLAINE_ERROR(InvalidParameters, ValidationError)
BLAINE_ERROR(DomainError, ValidationError)
BLAINE_ERROR(InvalidM, ValidationError)
BLAINE_ERROR(InvalidK, ValidationError)
BLAINE_ERROR(IneligibleVertex, ValidationError)
BLAINE_ERROR(Unclassifiable, ValidationError)
BLAINE_ERROR(NotDiffeo, ValidationError)
BLAINE_ERROR(PreconditionMismatch, ValidationError)

#undef BLAINE_ERROR

// Carries the letter of the failed hypothesis clause, 'a' through 'e'.
class HypothesisViolated : public ValidationError {
public:
    HypothesisViolated(char clause, const std::string& what)
        : ValidationError(std::string("HypothesisViolated(") + clause + "): " + what), clause_(clause) {}
    char clause() const noexcept { return clause_; }

private:
    char clause_;
};

}  // namespace blaine
