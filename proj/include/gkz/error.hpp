#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gkz {

enum class ErrorKind {
  DimensionMismatch,
  NotSaturated,
  NotFullLattice,
  NotPointed,
  ZeroColumn,
  NotAFace,
  UnsupportedInput,
  IndexOutOfRange,
  InfiniteFamily,
  UnsupportedDialect,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  case ErrorKind::NotSaturated: return "NotSaturated";
  case ErrorKind::NotFullLattice: return "NotFullLattice";
  case ErrorKind::NotPointed: return "NotPointed";
  case ErrorKind::ZeroColumn: return "ZeroColumn";
  case ErrorKind::NotAFace: return "NotAFace";
  case ErrorKind::UnsupportedInput: return "UnsupportedInput";
  case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
  case ErrorKind::InfiniteFamily: return "InfiniteFamily";
  case ErrorKind::UnsupportedDialect: return "UnsupportedDialect";
  case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind), detail_(what) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  [[nodiscard]] const std::string &detail() const noexcept { return detail_; }

private:
  ErrorKind kind_;
  std::string detail_;
};

} // namespace gkz
