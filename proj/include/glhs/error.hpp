#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glhs {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A point lies outside the input box.
class DomainViolation : public Error {
public:
  using Error::Error;
};

/// An index set would exceed the configured size cap.
class ResourceLimit : public Error {
public:
  using Error::Error;
};

/// Least-squares system without full column rank.
class IllPosedFit : public Error {
public:
  IllPosedFit(const std::string& what, std::size_t numerical_rank)
    : Error(what), rank_(numerical_rank) {}
  std::size_t numerical_rank() const noexcept { return rank_; }

private:
  std::size_t rank_;
};

/// Grid too poor to orthonormalize the basis; recoverable by enlarging the grid.
class NeedsMoreSamples : public Error {
public:
  NeedsMoreSamples(const std::string& what, std::size_t numerical_rank)
    : Error(what), rank_(numerical_rank) {}
  std::size_t numerical_rank() const noexcept { return rank_; }

private:
  std::size_t rank_;
};

class DegeneratePoint : public Error {
public:
  using Error::Error;
};

class EmptyZone : public Error {
public:
  using Error::Error;
};

/// Rejection resampling stopped finding buffer points.
class VanishingBuffer : public Error {
public:
  using Error::Error;
};

class InfeasibleDraw : public Error {
public:
  using Error::Error;
};

class InsufficientBudget : public Error {
public:
  using Error::Error;
};

/// Budgeted sampling found no buffer sample within its draw cap.
class Starvation : public Error {
public:
  using Error::Error;
};

class CrossValidationFailure : public Error {
public:
  using Error::Error;
};

class LookupError : public Error {
public:
  using Error::Error;
};

}  // namespace glhs
