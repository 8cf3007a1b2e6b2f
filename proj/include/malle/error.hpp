#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace malle {

enum class ErrorCode {
  MalformedCycle,
  PointOutOfRange,
  RepeatedPoint,
  DegreeMismatch,
  GroupTooLarge,
  NotASubgroup,
  ElementNotInGroup,
  TrivialGroup,
  PreconditionViolated,
  NotNormal,
  NotSolvable,
  NotNilpotent,
  NotOddPrime,
  DegreeTooSmall,
  SearchSpaceTooLarge,
  InvalidAction,
  InvalidRational,
  InvalidModel,
  ParseError,
  DuplicateLabel,
  UnknownLabel,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `line()` is set for errors that come
/// from parsing a database or config file.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<int> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<int> line() const noexcept { return line_; }
  /// The message without the code and line prefix.
  const std::string& detail() const noexcept { return detail_; }

  /// Copy of this error tagged with a source line.
  Error at_line(int line) const;

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<int> line_;
};

}  // namespace malle
