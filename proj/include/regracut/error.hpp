#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace regracut {

enum class ErrorKind {
    // core
    MissingPair,
    DuplicatePair,
    ColorOutOfRange,
    BadState,
    BadOrder,
    RefinementTooFine,
    BadDistribution,
    BadPartition,
    ParseError,
    // density
    OverlappingSets,
    EmptySet,
    TooLargeForExhaustive,
    BadM,
    UnequalSubBlocks,
    // decomposition
    CapExceeded,
    GraphTooSmall,
    SliceTooSmall,
    BadEFunction,
    // embedding
    BadEta,
    ArityMismatch,
    // types
    EmptyLabel,
    FullSelfLabel,
    SymmetryViolation,
    ArrowClosureViolation,
    LabelOutOfRange,
    KindMismatch,
    SearchSpaceTooLarge,
    DimensionMismatch,
    SizeMismatch,
    TooLargeForExact,
    EmptyFamily,
    EmptyProperty,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string & what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string & what);

} // namespace regracut
