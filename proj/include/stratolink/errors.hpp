#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace stratolink {

/// Invalid or inconsistent scenario configuration. The message names the
/// offending key so config typos are caught at the source.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Argument outside the mathematical domain of an operation (zero-length
/// link, non-positive frequency, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stratolink
