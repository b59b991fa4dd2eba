#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tastecomp {

// Root of every error raised by the library. User-facing errors (bad input
// files, infeasible scenarios) derive from UserError so front ends can map
// them to exit code 2 / HTTP 422.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UserError : public Error {
 public:
  explicit UserError(const std::string& message, std::string field = {})
      : Error(message), field_(std::move(field)) {}

  // Name of the offending input field, when one can be singled out.
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class ParseError : public UserError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message)
      : UserError(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public UserError {
 public:
  using UserError::UserError;
};

class UnknownIngredient : public ValidationError {
 public:
  explicit UnknownIngredient(const std::string& id, const std::string& context = {})
      : ValidationError("unknown ingredient '" + id + "'" +
                            (context.empty() ? std::string{} : " in " + context),
                        "ingredient_id"),
        id_(id) {}

  const std::string& ingredient_id() const noexcept { return id_; }

 private:
  std::string id_;
};

class InfeasibleBounds : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class MissingFixture : public UserError {
 public:
  using UserError::UserError;
};

class InsufficientData : public UserError {
 public:
  using UserError::UserError;
};

class NoGroundTruth : public InsufficientData {
 public:
  using InsufficientData::InsufficientData;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonFinite : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ForwardModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace tastecomp
