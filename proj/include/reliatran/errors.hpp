#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace reliatran {

// Raised when an input file cannot be read or one of its records is
// malformed or violates a manifest invariant. Maps to exit code 1.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& message)
      : std::runtime_error(format(file, line, message)),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const { return file_; }

  // 1-based line number; 0 when the error concerns the file as a whole.
  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& file, std::size_t line,
                            const std::string& message) {
    if (line == 0) return file + ": " + message;
    return file + ":" + std::to_string(line) + ": " + message;
  }

  std::string file_;
  std::size_t line_;
};

// Raised on invalid configuration or run-level preconditions (bad ratio,
// strategy naming an unknown model, no scorable utterances). Exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 1;
inline constexpr int kExitValidationError = 2;

}  // namespace reliatran
