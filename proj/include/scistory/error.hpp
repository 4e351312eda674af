#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scistory {

enum class ErrorCode {
  parameter,
  schema,
  empty_document,
  training_data,
  oversize_sentence,
  cross_boundary,
  range,
  consistency,
  undefined_modularity,
  metadata,
  not_found,
  migration,
  parse,
  io,
  validation,
  configuration,
  empty_collection,
  too_large,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Wraps an Error raised inside a pipeline stage so the caller can tell
// which stage failed ("parse", "classify", "recognize", ...).
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& inner)
      : Error(inner.code(), stage + ": " + inner.what()), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace scistory
