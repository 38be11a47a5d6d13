#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fusionlab {

enum class ErrorCode {
    // input errors (exit 2)
    MissingCell,
    OutOfScale,
    DuplicateId,
    UnknownLabel,
    DegenerateLabels,
    UnknownObserver,
    ItemMismatch,
    LengthMismatch,
    AsymmetricWeights,
    OutOfRange,
    InvalidConfig,
    ParseError,
    IoError,
    FileExists,
    Usage,
    // numeric / degenerate-data errors (exit 3)
    EmptyClass,
    ZeroVariance,
    TooFewItems,
    TooFewObservers,
    TooFewDyads,
    ConstantInput,
    NoMachineAdvantageDyads,
    EmptyDyads,
    TooFewReplications,
    AllZeroDifferences,
};

std::string_view to_string(ErrorCode code) noexcept;

// 2 for input errors, 3 for numeric/degenerate-data errors.
int exit_status(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fusionlab
