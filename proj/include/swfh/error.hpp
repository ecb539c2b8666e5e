#pragma once

#include <stdexcept>
#include <string>

namespace swfh {

/// Failure categories. Each maps to its own CLI exit status.
enum class ErrorKind {
    InvalidRing = 1,
    Syntax,
    Validation,
    AttachmentNotClosed,
    WedgeFixedPart,
    SmashModel,
    HypothesisViolation,
    FixedSphereMismatch,
    ExperimentalModule,
    ScanCap,
    Io,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace swfh
