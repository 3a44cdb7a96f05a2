#pragma once

#include <stdexcept>
#include <string>

namespace avocado::io {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitIo = 3, kExitInternal = 4 };

/// Invalid configuration; carries the dotted path of the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key_path, const std::string& message)
      : std::runtime_error(key_path.empty() ? message : key_path + ": " + message),
        key_path_(std::move(key_path)) {}

  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace avocado::io
