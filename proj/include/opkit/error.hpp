#pragma once

#include <stdexcept>
#include <string>

namespace opkit {

// Base class for every error raised by the library. The `kind()` string is
// stable and appears in CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define OPKIT_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

OPKIT_DEFINE_ERROR(BackendMismatch);
OPKIT_DEFINE_ERROR(InvalidAction);
OPKIT_DEFINE_ERROR(NotApplicable);
OPKIT_DEFINE_ERROR(NotImplemented);
OPKIT_DEFINE_ERROR(BoundExceeded);
OPKIT_DEFINE_ERROR(SignatureError);
OPKIT_DEFINE_ERROR(ValidationError);
OPKIT_DEFINE_ERROR(ParseError);

#undef OPKIT_DEFINE_ERROR

}  // namespace opkit
