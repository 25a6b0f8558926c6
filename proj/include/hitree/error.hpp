// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hitree {

// Root of every error the library throws. Callers that only care whether an
// operation failed can catch this; the subclasses exist so that the CLI and
// the benchmark runner can map failures to exit codes and record kinds.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A table whose rows cannot be reconciled into a rectangular grid.
class StructureError : public ParseError {
 public:
  StructureError(std::size_t row, const std::string& what)
      : ParseError("row " + std::to_string(row) + ": " + what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class UnsupportedFeatureError : public Error {
 public:
  using Error::Error;
};

class EmptyGridError : public Error {
 public:
  using Error::Error;
};

class InapplicablePerturbationError : public Error {
 public:
  using Error::Error;
};

class MalformedHierarchyError : public Error {
 public:
  using Error::Error;
};

class EmptySelectionError : public Error {
 public:
  using Error::Error;
};

class UnparseableEvalError : public Error {
 public:
  using Error::Error;
};

class RenderError : public Error {
 public:
  RenderError(const std::string& slot, const std::string& what)
      : Error(what), slot_(slot) {}

  const std::string& slot() const noexcept { return slot_; }

 private:
  std::string slot_;
};

class TransportError : public Error {
 public:
  TransportError(const std::string& what, int status = 0)
      : Error(what), status_(status) {}

  // HTTP status if the server answered, 0 for connection-level failures.
  int status() const noexcept { return status_; }

 private:
  int status_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class LoadError : public Error {
 public:
  LoadError(std::size_t item_index, const std::string& what)
      : Error("item " + std::to_string(item_index) + ": " + what),
        item_index_(item_index) {}

  std::size_t item_index() const noexcept { return item_index_; }

 private:
  std::size_t item_index_;
};

class ReportError : public Error {
 public:
  using Error::Error;
};

}  // namespace hitree
