#pragma once

#include <stdexcept>
#include <string>

namespace targetum {

// Input data could not be decoded (maps to exit code 2 in the CLI).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A file could not be opened, read or written (exit code 2 as well).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// A required table entry is missing (internal inconsistency).
struct LookupError : std::runtime_error {
  explicit LookupError(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller broke an API precondition (maps to exit code 64 in the CLI).
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal invariant failed; the state is not trustworthy (exit code 70).
struct IntegrityError : std::runtime_error {
  explicit IntegrityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace targetum
