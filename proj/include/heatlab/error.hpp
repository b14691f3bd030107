#pragma once

#include <stdexcept>
#include <string>

namespace heatlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad profile spec, non-positive sample, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A file named on input could not be opened or parsed.
class FileError : public Error {
 public:
  FileError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace heatlab
