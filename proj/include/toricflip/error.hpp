#pragma once

#include <stdexcept>
#include <string>

namespace toricflip {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Structurally malformed input: wrong dimensions, empty vectors, bad JSON fields.
class InvalidInput : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_input"; }
};

/// Mathematically well-formed input that violates a precondition
/// (non-coprime weights, point outside a cone, ...).
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain_error"; }
};

/// A normal-form side condition failed (e.g. f(Z, 0) = 0 for xy = f(z^r, t)).
class SideConditionError : public DomainError {
 public:
  using DomainError::DomainError;
  const char* kind() const noexcept override { return "side_condition"; }
};

/// The germ is outside every supported normal-form family.
class UnsupportedGerm : public DomainError {
 public:
  using DomainError::DomainError;
  const char* kind() const noexcept override { return "unsupported_germ"; }
};

/// A condition that the construction guarantees was found violated.
class InternalError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "internal_error"; }
};

}  // namespace toricflip
