#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdc {

// Base for every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed an out-of-range or inconsistent argument.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A file on disk does not follow the expected layout.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// The message does not fit in the cover.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t required, std::size_t available)
      : Error(what + ": required " + std::to_string(required) + " coefficients, available " +
              std::to_string(available)),
        required_(required),
        available_(available) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t available() const noexcept { return available_; }

 private:
  std::size_t required_;
  std::size_t available_;
};

// Extraction found a header that cannot have been produced by the embedder.
class CorruptStegoError : public Error {
 public:
  using Error::Error;
};

// Input lacks information an operation needs (e.g. rounding errors for MME/MDE).
class UnsupportedInputError : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sdc
