#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ewb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression source; offset is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public ParseError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : ParseError("unknown identifier '" + name + "'", offset), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Evaluation left the domain of a function (log/sqrt of non-positive,
/// division by zero, light-cone of the fundamental solution, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularFrame : public Error {
 public:
  using Error::Error;
};

class SingularMetric : public Error {
 public:
  using Error::Error;
};

class SamplingExhausted : public Error {
 public:
  using Error::Error;
};

class DegenerateLegendre : public Error {
 public:
  using Error::Error;
};

class GaugeViolation : public Error {
 public:
  using Error::Error;
};

class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration (unknown case or check, bad flag combination).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ChartMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace ewb
