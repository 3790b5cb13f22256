#pragma once

#include <stdexcept>
#include <string>

namespace neglab {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Incompatible matrix shapes or subsystem dimensions.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// A state or operator fails one of its invariants (hermiticity, trace, positivity).
class InvariantError : public Error {
public:
  using Error::Error;
};

/// An argument lies outside the domain of the requested quantity.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Malformed serialized input.
class ParseError : public Error {
public:
  using Error::Error;
};

/// An iterative solver exhausted its budget without reaching a decision.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

namespace detail {

template <class E>
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw E(msg);
}

}  // namespace detail
}  // namespace neglab
