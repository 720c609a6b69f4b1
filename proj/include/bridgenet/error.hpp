#pragma once

#include <stdexcept>
#include <string>

namespace bridgenet {

enum class ErrorCode {
  invalid_argument,   // parameter-domain violations
  config,             // bad or unknown configuration keys
  shape,              // mismatched vector/matrix dimensions
  not_found,          // unknown node, edge, or column lookups
  resource,           // guarded exhaustive computations
  parse,              // malformed text input
  schema,             // structurally wrong input (missing columns etc.)
  uncovered_label,    // label outside every regression region
  io,                 // file system failures
  numeric,            // non-finite values where finite ones are required
};

// Library fault type. Carries a coarse code so the C boundary and the CLI can
// map failures onto stable status values without matching message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace bridgenet
