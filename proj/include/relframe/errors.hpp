// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace relframe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Operands are indexed by different basis conventions.
class BasisError : public Error {
 public:
  using Error::Error;
};

/// An input violates an operation's precondition (unnormalized state,
/// empty reference mode, even lattice dimension, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Truncation bounds too small to hold the requested state.
class CutoffError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual configuration (prior specs, grid files, CLI flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A result fell outside its mathematically allowed range by more than
/// floating-point noise.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace relframe
