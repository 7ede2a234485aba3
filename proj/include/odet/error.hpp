#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace odet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input (automaton, word, argument) violates a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A configured size, state-count, or time bound was exceeded.
class LimitExceeded : public Error {
 public:
  LimitExceeded(const std::string& what, std::size_t explored)
      : Error(what), explored_(explored) {}
  [[nodiscard]] std::size_t explored() const { return explored_; }

 private:
  std::size_t explored_;
};

/// A construction produced a structure that breaks its own invariants.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace odet
