#pragma once

#include <stdexcept>
#include <string>

namespace surfguard {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on a value (size, range, ordering) was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

// File or stream could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Raster data in a format we do not decode/encode.
class FormatError : public Error {
 public:
  FormatError(std::string format, const std::string& what)
      : Error(what), format_(std::move(format)) {}

  const std::string& format() const noexcept { return format_; }

 private:
  std::string format_;
};

// Network failure talking to a remote recognition service.
class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace surfguard
