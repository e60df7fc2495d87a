#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symw {

// Base of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape or length disagreement between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input matrix violates a symmetry tolerance.
class AsymmetryError : public Error {
 public:
  AsymmetryError(const std::string& msg, double deviation, int row, int col)
      : Error(msg), deviation(deviation), row(row), col(col) {}
  double deviation;
  int row;
  int col;
};

// Malformed file contents; offset points at the offending byte.
class FormatError : public Error {
 public:
  FormatError(const std::string& msg, std::size_t offset)
      : Error(msg), offset(offset) {}
  std::size_t offset;
};

// Invalid experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Dataset could not be read.
class IngestionError : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& msg, int epoch) : Error(msg), epoch(epoch) {}
  int epoch;
};

// An internal contract was broken (e.g. missing gradient at step time).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Requested symmetry cannot be applied to this layer.
class UnsupportedLayerError : public Error {
 public:
  using Error::Error;
};

}  // namespace symw
