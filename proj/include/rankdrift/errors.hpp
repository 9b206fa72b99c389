// Copyright (C) 2026 the rankdrift authors
// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace rankdrift {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs violate a structural precondition (sizes, shapes, lengths).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Inputs are structurally fine but outside an operation's numeric domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two rankings share no pair of entrants present in both.
class NoComparablePairsError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Every consecutive pair of a series had zero comparable pairs.
class AllPairsIncomparableError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Dataset-level inconsistency (unknown entrant, missing file, bad mapping).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. Carries the 1-based line of the offending content
/// where one exists; 0 for whole-file problems.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, long line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace rankdrift
