#pragma once

#include <stdexcept>
#include <string>

namespace patex {

enum class ErrorKind {
  Parse,
  Catalog,
  SizeGuard,
  Precondition,
  Domain,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type thrown by the library; the C API maps `kind` onto
/// its status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace patex
