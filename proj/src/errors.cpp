#include "qnd/errors.hpp"

namespace qnd {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Model: return "model";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Resonance: return "resonance";
    case ErrorKind::Tuning: return "tuning";
    case ErrorKind::UnsupportedRegime: return "unsupported-regime";
  }
  return "unknown";
}

int exit_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Validation:
      return 2;
    default:
      return 3;
  }
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace qnd
