#pragma once

#include <stdexcept>
#include <string>

namespace x0plane {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A form description violates a membership condition (weight, Ligozat
/// congruences, character, holomorphy, unsupported Eisenstein weight).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// The forms handed to the relation finder are linearly dependent.
class DependentFormsError : public Error {
public:
  DependentFormsError() : Error("forms not independent") {}
};

/// The degree sweep exhausted its bound without finding a relation.
class NoRelationError : public Error {
public:
  NoRelationError() : Error("no relation up to bound") {}
};

/// A series was too short for the requested number of coefficients.
class PrecisionError : public Error {
public:
  PrecisionError() : Error("insufficient precision") {}
};

/// An internal identity that must hold for valid input failed.
class SoundnessError : public Error {
public:
  using Error::Error;
};

/// Malformed configuration or command-line input.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace x0plane
