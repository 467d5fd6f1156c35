#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scimap {

enum class Errc {
  InvalidArgument,
  DuplicateLabel,
  MalformedRow,
  EmptyExport,
  UnknownLabel,
  NotSquare,
  NegativeCell,
  AllUnmatched,
  DimensionMismatch,
  RegistryMismatch,
  ParseError,
  Io,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DuplicateLabel: return "DuplicateLabel";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::EmptyExport: return "EmptyExport";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::NotSquare: return "NotSquare";
    case Errc::NegativeCell: return "NegativeCell";
    case Errc::AllUnmatched: return "AllUnmatched";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::RegistryMismatch: return "RegistryMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
/// Parsers also fill in the 1-based line number when one is meaningful.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
        code_(code),
        line_(line) {}

  Errc code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Errc code_;
  std::size_t line_;
};

}  // namespace scimap
