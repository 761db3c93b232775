#pragma once

#include <stdexcept>
#include <string>

namespace splice {

// Error categories map onto the CLI exit codes: parse/invalid -> 2,
// unsupported -> 3.
enum class ErrorKind { parse, invalid, unsupported, internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_parse(const std::string& msg) {
  throw Error(ErrorKind::parse, msg);
}
[[noreturn]] inline void throw_invalid(const std::string& msg) {
  throw Error(ErrorKind::invalid, msg);
}
[[noreturn]] inline void throw_unsupported(const std::string& msg) {
  throw Error(ErrorKind::unsupported, msg);
}
[[noreturn]] inline void throw_internal(const std::string& msg) {
  throw Error(ErrorKind::internal, msg);
}

}  // namespace splice
