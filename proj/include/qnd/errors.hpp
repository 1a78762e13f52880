#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qnd {

enum class ErrorKind {
  Parse,
  Validation,
  Domain,
  Dimension,
  Model,
  Pole,
  Resonance,
  Tuning,
  UnsupportedRegime,
};

std::string_view to_string(ErrorKind kind);

/// Base for every error raised by the library. The kind selects the CLI
/// exit status: 2 for parse/validation problems, 3 for everything physical.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

int exit_status(ErrorKind kind);

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace qnd
