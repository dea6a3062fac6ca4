#pragma once

#include <stdexcept>
#include <string>

namespace riskbn {

// Every failure the library reports, one kind per distinct contract violation.
enum class ErrorKind {
    // network construction
    DuplicateNodeId,
    InvalidNodeId,
    UnknownParent,
    BadCptShape,
    UnnormalizedRow,
    CycleDetected,
    // queries
    UnknownNode,
    IncompleteAssignment,
    ArityMismatch,
    ZeroProbabilityEvidence,
    EvidenceUnsupported,
    // threat-id / attack-tree parsing
    BadStrideLetter,
    BadSegmentCount,
    NonNumericThreatNumber,
    SyntaxError,
    UnresolvedChild,
    MultipleRoots,
    NoRoot,
    BadOverrideLength,
    // perturbation
    NotARoot,
    NotIntermediate,
    BadRowIndex,
    // io / rendering / misc arguments
    IoError,
    ParseError,
    UnsupportedFormat,
    BadArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace riskbn
