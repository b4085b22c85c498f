#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liesym {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownSymbolError : public Error {
 public:
  UnknownSymbolError(const std::string& name, std::size_t offset)
      : Error("unknown symbol '" + name + "' at offset " + std::to_string(offset)),
        name_(name),
        offset_(offset) {}
  const std::string& name() const noexcept { return name_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

class CyclicBindingError : public Error {
 public:
  using Error::Error;
};

class UnboundSymbolError : public Error {
 public:
  explicit UnboundSymbolError(const std::string& name)
      : Error("unbound symbol '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Real-valued evaluation left the domain (negative base under a fractional
/// power, zero raised to a negative power, log of a non-positive value).
class DomainError : public Error {
 public:
  using Error::Error;
};

class OrderOverflowError : public Error {
 public:
  using Error::Error;
};

class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

class NonlinearityError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

}  // namespace liesym
