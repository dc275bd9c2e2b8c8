#pragma once

#include <stdexcept>
#include <string>

namespace opdf {

// Error classes map one-to-one onto the CLI/C-API status contract:
// Parse -> 2, Validation -> 3, Consistency -> 4, Internal -> 1.
enum class ErrorKind { Internal = 1, Parse = 2, Validation = 3, Consistency = 4 };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] void fail_parse(const std::string& message);
[[noreturn]] void fail_validation(const std::string& message);
[[noreturn]] void fail_consistency(const std::string& message);

const char* error_kind_name(ErrorKind kind);

}  // namespace opdf
