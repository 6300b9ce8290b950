#pragma once

#include <stdexcept>
#include <string>

namespace lri {

// Engine errors carry a stable machine-readable name so the CLI can map them
// to diagnostics without string matching on free-form messages.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error("DomainError", what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

struct DominationError : Error {
  explicit DominationError(const std::string& what)
      : Error("DominationError", what) {}
};

struct ProfileMismatch : Error {
  explicit ProfileMismatch(const std::string& what)
      : Error("ProfileMismatch", what) {}
};

struct IndefiniteIntegral : Error {
  explicit IndefiniteIntegral(const std::string& what)
      : Error("IndefiniteIntegral", what) {}
};

struct CannotCertify : Error {
  explicit CannotCertify(const std::string& what)
      : Error("CannotCertify", what) {}
};

class StabilizationError : public Error {
 public:
  StabilizationError(const std::string& what, unsigned long required)
      : Error("StabilizationError", what), required_(required) {}
  unsigned long required_cap() const { return required_; }

 private:
  unsigned long required_;
};

}  // namespace lri
