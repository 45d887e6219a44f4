#pragma once

#include <stdexcept>
#include <string>

namespace purepoint {

enum class ErrorCode {
    RejectReducible,
    RejectAmbiguousRoot,
    DivideByZero,
    FieldMismatch,
    SingularMatrix,
    NotExpansive,
    NotPrimitive,
    VolumeMismatch,
    BadRealization,
    NoFixedPoint,
    CapExceeded,
    NoBasis,
    NoConvergence,
    UnsupportedModel,
    UnsupportedDim,
    DomainError,
    ParseError,
    IoError,
};

const char* error_code_name(ErrorCode code);

// All library failures surface as Error; `stage` names the pipeline step
// (or module operation) that raised it so the CLI can report it verbatim.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string stage, const std::string& what)
        : std::runtime_error(what), code_(code), stage_(std::move(stage)) {}

    ErrorCode code() const { return code_; }
    const std::string& stage() const { return stage_; }

private:
    ErrorCode code_;
    std::string stage_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& stage, const std::string& what) {
    throw Error(code, stage, what);
}

} // namespace purepoint
