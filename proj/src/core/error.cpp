#include "regracut/error.hpp"

namespace regracut {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::MissingPair: return "MissingPair";
    case ErrorKind::DuplicatePair: return "DuplicatePair";
    case ErrorKind::ColorOutOfRange: return "ColorOutOfRange";
    case ErrorKind::BadState: return "BadState";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::RefinementTooFine: return "RefinementTooFine";
    case ErrorKind::BadDistribution: return "BadDistribution";
    case ErrorKind::BadPartition: return "BadPartition";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::OverlappingSets: return "OverlappingSets";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::TooLargeForExhaustive: return "TooLargeForExhaustive";
    case ErrorKind::BadM: return "BadM";
    case ErrorKind::UnequalSubBlocks: return "UnequalSubBlocks";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::GraphTooSmall: return "GraphTooSmall";
    case ErrorKind::SliceTooSmall: return "SliceTooSmall";
    case ErrorKind::BadEFunction: return "BadEFunction";
    case ErrorKind::BadEta: return "BadEta";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::EmptyLabel: return "EmptyLabel";
    case ErrorKind::FullSelfLabel: return "FullSelfLabel";
    case ErrorKind::SymmetryViolation: return "SymmetryViolation";
    case ErrorKind::ArrowClosureViolation: return "ArrowClosureViolation";
    case ErrorKind::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::TooLargeForExact: return "TooLargeForExact";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::EmptyProperty: return "EmptyProperty";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string & what) :
    std::runtime_error(std::string(to_string(kind)) + ": " + what),
    kind_(kind)
{
}

void fail(ErrorKind kind, const std::string & what)
{
    throw Error(kind, what);
}

} // namespace regracut
