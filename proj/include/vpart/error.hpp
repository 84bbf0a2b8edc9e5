#pragma once

#include <stdexcept>
#include <string>

namespace vpart {

// Domain error with a machine-readable code and an optional witness payload.
// The CLI maps these to the {code, message, witness?} JSON error object.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, std::string witness = "")
      : std::runtime_error(message), code_(std::move(code)), witness_(std::move(witness)) {}

  const std::string& code() const { return code_; }
  const std::string& witness() const { return witness_; }

 private:
  std::string code_;
  std::string witness_;
};

}  // namespace vpart
