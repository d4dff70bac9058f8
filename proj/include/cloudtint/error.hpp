// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cloudtint {

enum class ErrorCode {
  EmptySelection,
  UnknownFormat,
  HeaderMismatch,
  ParseError,
  UnsupportedPointRecord,
  CodecUnavailable,
  IoError,
  SyntaxError,
  SchemaError,
  RangeError,
  DuplicateLabel,
  NoEnabledBoxes,
  NoBoxes,
  MissingColor,
  InvalidArgument,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::UnknownFormat: return "UnknownFormat";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedPointRecord: return "UnsupportedPointRecord";
    case ErrorCode::CodecUnavailable: return "CodecUnavailable";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::NoEnabledBoxes: return "NoEnabledBoxes";
    case ErrorCode::NoBoxes: return "NoBoxes";
    case ErrorCode::MissingColor: return "MissingColor";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Where in an input a failure was detected. Line numbers are 1-based and
/// only meaningful for text inputs.
struct SourceLocation {
  std::optional<std::uint64_t> line;
  std::optional<std::uint64_t> byte_offset;
  std::optional<std::size_t> item;  // object index, step index, ...
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, SourceLocation where = {})
      : std::runtime_error(format(code, message, where)),
        code_(code),
        detail_(message),
        where_(where) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const SourceLocation& where() const noexcept { return where_; }
  std::optional<std::uint64_t> line() const noexcept { return where_.line; }

 private:
  static std::string format(ErrorCode code, const std::string& message,
                            const SourceLocation& where) {
    std::string out{to_string(code)};
    if (where.line) out += " at line " + std::to_string(*where.line);
    if (where.byte_offset) out += " (byte " + std::to_string(*where.byte_offset) + ")";
    if (where.item) out += " [index " + std::to_string(*where.item) + "]";
    out += ": ";
    out += message;
    return out;
  }

  ErrorCode code_;
  std::string detail_;
  SourceLocation where_;
};

/// True for errors caused by malformed or unsuitable input data, as opposed
/// to usage mistakes or I/O failures.
inline bool is_data_error(ErrorCode code) {
  return code != ErrorCode::IoError && code != ErrorCode::InvalidArgument;
}

}  // namespace cloudtint
