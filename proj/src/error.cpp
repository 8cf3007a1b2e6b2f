#include "malle/error.hpp"

namespace malle {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedCycle: return "MalformedCycle";
    case ErrorCode::PointOutOfRange: return "PointOutOfRange";
    case ErrorCode::RepeatedPoint: return "RepeatedPoint";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::ElementNotInGroup: return "ElementNotInGroup";
    case ErrorCode::TrivialGroup: return "TrivialGroup";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotSolvable: return "NotSolvable";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotOddPrime: return "NotOddPrime";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::InvalidAction: return "InvalidAction";
    case ErrorCode::InvalidRational: return "InvalidRational";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message, std::optional<int> line) {
  std::string out(to_string(code));
  if (line) out += " at line " + std::to_string(*line);
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::optional<int> line)
    : std::runtime_error(format_message(code, message, line)),
      code_(code),
      detail_(message),
      line_(line) {}

Error Error::at_line(int line) const { return Error(code_, detail_, line); }

}  // namespace malle
