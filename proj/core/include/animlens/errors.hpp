#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace animlens {

enum class ErrorCode {
  kParse,
  kIncompatibleSkeletons,
  kEmptySession,
  kStructural,
  kFrameOutOfRange,
  kObjectDegenerate,
  kNotFound,
  kValidation,
};

std::string_view to_string(ErrorCode code);

// Base of every error the engine throws. `detail` carries structured context
// (line numbers, JSON paths, joint names) for the API layer.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::json detail = nlohmann::json::object());

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  nlohmann::json detail_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message,
                      nlohmann::json detail = nlohmann::json::object())
      : Error(ErrorCode::kParse, message, std::move(detail)) {}
};

class IncompatibleSkeletons : public Error {
 public:
  IncompatibleSkeletons(const std::string& message, nlohmann::json detail)
      : Error(ErrorCode::kIncompatibleSkeletons, message, std::move(detail)) {}
};

class EmptySession : public Error {
 public:
  EmptySession() : Error(ErrorCode::kEmptySession, "no animations supplied") {}
};

class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& message,
                           nlohmann::json detail = nlohmann::json::object())
      : Error(ErrorCode::kStructural, message, std::move(detail)) {}
};

class FrameOutOfRange : public Error {
 public:
  explicit FrameOutOfRange(const std::string& message,
                           nlohmann::json detail = nlohmann::json::object())
      : Error(ErrorCode::kFrameOutOfRange, message, std::move(detail)) {}
};

class ObjectDegenerate : public Error {
 public:
  explicit ObjectDegenerate(const std::string& object_id)
      : Error(ErrorCode::kObjectDegenerate,
              "scene object '" + object_id + "' has a singular transform",
              {{"object_id", object_id}}) {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& message,
                    nlohmann::json detail = nlohmann::json::object())
      : Error(ErrorCode::kNotFound, message, std::move(detail)) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message,
                           nlohmann::json detail = nlohmann::json::object())
      : Error(ErrorCode::kValidation, message, std::move(detail)) {}
};

}  // namespace animlens
