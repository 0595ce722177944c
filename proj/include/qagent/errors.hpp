#pragma once

#include <stdexcept>
#include <string>

namespace qagent {

/// Argument outside an operation's domain (negative linewidth, t < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid configuration: bad key, bad value, or inadmissible integration setup.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical integration left its admissible region (invariant drift, truncation).
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qagent
