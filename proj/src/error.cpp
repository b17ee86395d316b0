#include "counterbench/error.hpp"

namespace counterbench {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::MissingEquation: return "MissingEquation";
    case ErrorCode::DanglingParent: return "DanglingParent";
    case ErrorCode::MultipleOutcomes: return "MultipleOutcomes";
    case ErrorCode::MissingOutcome: return "MissingOutcome";
    case ErrorCode::MultipleAntecedents: return "MultipleAntecedents";
    case ErrorCode::MissingAntecedent: return "MissingAntecedent";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ArityExceeded: return "ArityExceeded";
    case ErrorCode::DuplicateArgument: return "DuplicateArgument";
    case ErrorCode::OutcomeUnreachable: return "OutcomeUnreachable";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::DuplicateClamp: return "DuplicateClamp";
    case ErrorCode::InvalidRootAssignment: return "InvalidRootAssignment";
    case ErrorCode::KindArityMismatch: return "KindArityMismatch";
    case ErrorCode::InvalidQuery: return "InvalidQuery";
    case ErrorCode::NonRootObservation: return "NonRootObservation";
    case ErrorCode::MissingName: return "MissingName";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::InconsistentClauses: return "InconsistentClauses";
    case ErrorCode::UnknownQueryForm: return "UnknownQueryForm";
    case ErrorCode::ConflictingKnowledge: return "ConflictingKnowledge";
    case ErrorCode::Stuck: return "Stuck";
    case ErrorCode::InfeasibleKind: return "InfeasibleKind";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EndpointUnreachable: return "EndpointUnreachable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message, std::optional<std::size_t> offset)
{
    std::string out(to_string(code));
    if (offset) out += " at " + std::to_string(*offset);
    if (!message.empty()) out += ": " + message;
    return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> offset)
    : std::runtime_error(decorate(code, message, offset)), code_(code), message_(message), offset_(offset)
{
}

}  // namespace counterbench
