#include "fusionlab/error.hpp"

namespace fusionlab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MissingCell: return "MissingCell";
        case ErrorCode::OutOfScale: return "OutOfScale";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::UnknownLabel: return "UnknownLabel";
        case ErrorCode::DegenerateLabels: return "DegenerateLabels";
        case ErrorCode::UnknownObserver: return "UnknownObserver";
        case ErrorCode::ItemMismatch: return "ItemMismatch";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::AsymmetricWeights: return "AsymmetricWeights";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::FileExists: return "FileExists";
        case ErrorCode::Usage: return "Usage";
        case ErrorCode::EmptyClass: return "EmptyClass";
        case ErrorCode::ZeroVariance: return "ZeroVariance";
        case ErrorCode::TooFewItems: return "TooFewItems";
        case ErrorCode::TooFewObservers: return "TooFewObservers";
        case ErrorCode::TooFewDyads: return "TooFewDyads";
        case ErrorCode::ConstantInput: return "ConstantInput";
        case ErrorCode::NoMachineAdvantageDyads: return "NoMachineAdvantageDyads";
        case ErrorCode::EmptyDyads: return "EmptyDyads";
        case ErrorCode::TooFewReplications: return "TooFewReplications";
        case ErrorCode::AllZeroDifferences: return "AllZeroDifferences";
    }
    return "Unknown";
}

int exit_status(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyClass:
        case ErrorCode::ZeroVariance:
        case ErrorCode::TooFewItems:
        case ErrorCode::TooFewObservers:
        case ErrorCode::TooFewDyads:
        case ErrorCode::ConstantInput:
        case ErrorCode::NoMachineAdvantageDyads:
        case ErrorCode::EmptyDyads:
        case ErrorCode::TooFewReplications:
        case ErrorCode::AllZeroDifferences:
            return 3;
        default:
            return 2;
    }
}

}  // namespace fusionlab
