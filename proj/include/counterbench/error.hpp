#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace counterbench {

enum class ErrorCode {
    // model structure
    CycleDetected,
    MissingEquation,
    DanglingParent,
    MultipleOutcomes,
    MissingOutcome,
    MultipleAntecedents,
    MissingAntecedent,
    ArityMismatch,
    ArityExceeded,
    DuplicateArgument,
    OutcomeUnreachable,
    UnknownVariable,
    DuplicateClamp,
    InvalidRootAssignment,
    // queries
    KindArityMismatch,
    InvalidQuery,
    NonRootObservation,
    // text
    MissingName,
    SyntaxError,
    InconsistentClauses,
    UnknownQueryForm,
    // solver
    ConflictingKnowledge,
    Stuck,
    // generation and datasets
    InfeasibleKind,
    InvalidConfig,
    BudgetExhausted,
    IoError,
    SchemaViolation,
    // evaluation
    LengthMismatch,
    EndpointUnreachable,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the library. `offset` is set for
/// errors tied to a position in an input (byte offset into scenario text,
/// or line number for dataset files).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::optional<std::size_t> offset = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    /// The message without the code and offset decoration.
    const std::string& message() const noexcept { return message_; }
    std::optional<std::size_t> offset() const noexcept { return offset_; }

private:
    ErrorCode code_;
    std::string message_;
    std::optional<std::size_t> offset_;
};

}  // namespace counterbench
