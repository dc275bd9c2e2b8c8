#include "errors.hpp"

namespace opdf {

void fail_parse(const std::string& message) { throw Error(ErrorKind::Parse, message); }
void fail_validation(const std::string& message) { throw Error(ErrorKind::Validation, message); }
void fail_consistency(const std::string& message) { throw Error(ErrorKind::Consistency, message); }

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Consistency: return "consistency";
    case ErrorKind::Internal: return "internal";
  }
  return "internal";
}

}  // namespace opdf
