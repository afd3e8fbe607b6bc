#pragma once

#include <stdexcept>
#include <string>

namespace cuspmin {

// Base of every error the library raises on purpose; `kind()` is the
// machine-readable tag the CLI puts in its error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// Input that fails a precondition (bad parameters, odd chain closure, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A self-check inside a computation failed.
class InternalCheckError : public Error {
public:
    using Error::Error;
};

#define CUSPMIN_DEFINE_ERROR(Name, Base)                                   \
    class Name : public Base {                                             \
    public:                                                                \
        explicit Name(const std::string& msg) : Base(#Name, msg) {}        \
    };

CUSPMIN_DEFINE_ERROR(ChainParityError, ValidationError)
CUSPMIN_DEFINE_ERROR(IdentityTwistError, ValidationError)
CUSPMIN_DEFINE_ERROR(ParityError, ValidationError)
CUSPMIN_DEFINE_ERROR(InvalidPartition, ValidationError)
CUSPMIN_DEFINE_ERROR(GluingError, ValidationError)
CUSPMIN_DEFINE_ERROR(SearchBudgetExceeded, ValidationError)
CUSPMIN_DEFINE_ERROR(MalformedGraph, ValidationError)
CUSPMIN_DEFINE_ERROR(UnsupportedSlope, ValidationError)
CUSPMIN_DEFINE_ERROR(NoBigFace, ValidationError)
CUSPMIN_DEFINE_ERROR(DomainError, ValidationError)
CUSPMIN_DEFINE_ERROR(NonRealizableAngles, ValidationError)

CUSPMIN_DEFINE_ERROR(NormalPositionError, InternalCheckError)
CUSPMIN_DEFINE_ERROR(SurgeryError, InternalCheckError)
CUSPMIN_DEFINE_ERROR(CyclicProductMismatch, InternalCheckError)
CUSPMIN_DEFINE_ERROR(InconsistentFactorization, InternalCheckError)
CUSPMIN_DEFINE_ERROR(ConsistencyError, InternalCheckError)
CUSPMIN_DEFINE_ERROR(SignatureError, InternalCheckError)
CUSPMIN_DEFINE_ERROR(CrossCheckError, InternalCheckError)

#undef CUSPMIN_DEFINE_ERROR

}  // namespace cuspmin
