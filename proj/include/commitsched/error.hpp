#pragma once

#include <stdexcept>
#include <string>

namespace commitsched {

enum class Errc {
    // model / instance validation
    DeadlineTooEarly,
    NonPositiveLength,
    ValueMismatch,
    NegativeTime,
    DuplicateId,
    // engine
    NotAppendable,
    PreconditionViolated,
    PolicyContractViolation,
    // dsc
    Appendable,
    // model arithmetic
    ZeroOfflineValue,
    // oracle
    InstanceTooLarge,
    // adversary
    InvalidParams,
    NonTerminating,
    ScaleTooSmall,
    TickOverflow,
    BoundViolated,
    // analysis
    MalformedTrace,
    NotADscTrace,
    // cli
    UnknownPolicy,
    IoError,
    ConfigError,
};

const char* errc_name(Errc code);

/// Exception carrying a machine-readable error code plus a human message.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace commitsched
