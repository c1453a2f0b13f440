#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cds {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(std::size_t line_no, const std::string& reason)
      : Error("parse error at line " + std::to_string(line_no) + ": " + reason),
        line(line_no) {}
  std::size_t line;
};

struct DuplicateIdError : Error {
  explicit DuplicateIdError(const std::string& id)
      : Error("duplicate instance id: " + id) {}
};

struct EmptyDatasetError : Error {
  EmptyDatasetError() : Error("dataset is empty") {}
};

struct ConflictError : Error {
  using Error::Error;
};

struct RangeError : Error {
  using Error::Error;
};

struct NegativeCountError : Error {
  using Error::Error;
};

struct ResourceMissingError : Error {
  explicit ResourceMissingError(const std::string& what_missing)
      : Error("required resource missing: " + what_missing) {}
};

struct MissingGroupError : Error {
  using Error::Error;
};

struct SchemaMismatchError : Error {
  using Error::Error;
};

struct SingleClassError : Error {
  SingleClassError() : Error("training data contains a single class") {}
};

struct EmptyTrainingError : Error {
  EmptyTrainingError() : Error("training data is empty") {}
};

struct NonConvergenceError : Error {
  NonConvergenceError(double grad_norm, int iters)
      : Error("optimizer did not converge after " + std::to_string(iters) +
              " iterations; final gradient max-norm " + std::to_string(grad_norm)),
        gradient_norm(grad_norm) {}
  double gradient_norm;
};

struct LengthMismatchError : Error {
  using Error::Error;
};

struct TooFewInstancesError : Error {
  using Error::Error;
};

}  // namespace cds
