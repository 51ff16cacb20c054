#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace holosym {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands disagree on shape: variable counts, frame dimension, tensor valence.
class StructuralError : public Error {
public:
  using Error::Error;
};

/// Malformed polynomial text; carries the byte offset of the offending token.
class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Requested computation is beyond the supported desk-scale dimensions.
class SizeCapError : public Error {
public:
  using Error::Error;
};

class DescriptorError : public Error {
public:
  using Error::Error;
};

} // namespace holosym
