#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stable_market {

/// A money amount lies outside the pair's feasible price interval.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A seller, buyer or pair that does not belong to the instance.
class KeyError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The instance failed validation; `violations()` lists every defect.
class InvalidInstanceError : public std::runtime_error {
 public:
  explicit InvalidInstanceError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// A solver invariant that the theory guarantees was found broken.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An oracle or enumerator refused an input beyond its size guard.
class GuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed serialized input. The message starts with a JSON pointer.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string pointer, const std::string& message)
      : std::runtime_error(pointer + ": " + message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// Invalid generator configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace stable_market
