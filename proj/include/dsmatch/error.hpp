#pragma once

#include <stdexcept>
#include <string>

namespace dsmatch {

// Base of every domain error raised by the library. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FrameError : public Error {
 public:
  using Error::Error;
};

class FrameMismatchError : public Error {
 public:
  FrameMismatchError() : Error("incompatible frames: operands are defined over different frames") {}
  explicit FrameMismatchError(const std::string& what) : Error(what) {}
};

class MassError : public Error {
 public:
  using Error::Error;
};

class TotalConflictError : public Error {
 public:
  TotalConflictError()
      : Error("total conflict: the two mass functions share no compatible focal elements (Z = 1)") {}
};

class EnumerationBoundError : public Error {
 public:
  EnumerationBoundError(std::size_t frame_size, std::size_t bound)
      : Error("frame of size " + std::to_string(frame_size) +
              " exceeds the enumeration bound of " + std::to_string(bound) + " elements") {}
};

class DatasetError : public Error {
 public:
  using Error::Error;
};

class UnknownDimensionError : public Error {
 public:
  explicit UnknownDimensionError(const std::string& name) : Error("unknown dimension '" + name + "'") {}
};

class NoEvidenceError : public Error {
 public:
  explicit NoEvidenceError(const std::string& what) : Error("no evidence: " + what) {}
};

class ArithmeticOverflowError : public Error {
 public:
  ArithmeticOverflowError() : Error("rational arithmetic overflow") {}
};

}  // namespace dsmatch
